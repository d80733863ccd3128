/*
   Copyright 2026 The kmf authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef KMF_FUNCTORS_HPP
#define KMF_FUNCTORS_HPP

#include "hom_complex.hpp"

namespace kmf {

// ---------------------------------------------------------------------------
// pushforward along a_i: forget the other homotopy; inclusion on morphisms.

template <CoefficientField F>
OneHomotopyModule<F> pushforward_a(int i, const TwoHomotopyModule<F>& m) {
    if (i != 1 && i != 2) throw InvalidObject("pushforward_a index must be 1 or 2");
    return OneHomotopyModule<F>{m.tower, m.shape, m.d, {m.h[static_cast<size_t>(i - 1)]}};
}

template <CoefficientField F>
DgMorphism<F, 1> pushforward_a(int i, const DgMorphism<F, 2>& phi) {
    return DgMorphism<F, 1>{pushforward_a(i, phi.source), pushforward_a(i, phi.target), phi.degree, phi.comps};
}

// ---------------------------------------------------------------------------
// pullback along a_i: E |-> E (+) E[1] with differential [[d, pi_K],[0, -d]];
// h_i acts by diag(h, -h), the other generator by [[0,0],[id,0]].

template <CoefficientField F>
TwoHomotopyModule<F> pullback_a(int i, const OneHomotopyModule<F>& m) {
    if (i != 1 && i != 2) throw InvalidObject("pullback_a index must be 1 or 2");
    const F& f = m.tower.field;
    if (m.shape.is_zero()) return TwoHomotopyModule<F>::zero(m.tower);
    int lo = m.shape.min_degree - 1, hi = m.shape.top_degree();
    std::vector<size_t> ranks;
    for (int deg = lo; deg <= hi; ++deg) ranks.push_back(m.rank(deg) + m.rank(deg + 1));
    TwoHomotopyModule<F> out{m.tower, GradedFree(lo, ranks), {}, {}};
    std::vector<PolyMatrix<F>> ha, hb;  // ha: the diag(h,-h) action of h_i; hb: the other generator
    for (int deg = lo; deg < hi; ++deg) {
        auto top = hstack(m.d_at(deg), PolyMatrix<F>::scalar(f, m.rank(deg + 1), m.tower.pi()));
        auto bot = hstack(PolyMatrix<F>::zero(f, m.rank(deg + 2), m.rank(deg)), -m.d_at(deg + 1));
        out.d.push_back(vstack(top, bot));
    }
    for (int deg = lo + 1; deg <= hi; ++deg) {
        ha.push_back(block_diag(m.h_at(deg), -m.h_at(deg + 1)));
        auto zl = PolyMatrix<F>::zero(f, m.rank(deg - 1), m.rank(deg));
        auto zr = PolyMatrix<F>::zero(f, m.rank(deg - 1), m.rank(deg + 1));
        auto il = PolyMatrix<F>::identity(f, m.rank(deg));
        auto zb = PolyMatrix<F>::zero(f, m.rank(deg), m.rank(deg + 1));
        hb.push_back(from_blocks(f, {{zl, zr}, {il, zb}}));
    }
    out.h[static_cast<size_t>(i - 1)] = std::move(ha);
    out.h[static_cast<size_t>(2 - i)] = std::move(hb);
    return out;
}

/// On morphisms: phi |-> diag(phi, phi[1]).
template <CoefficientField F>
DgMorphism<F, 2> pullback_a(int i, const DgMorphism<F, 1>& phi) {
    if (phi.degree != 0) throw InvalidObject("pullback of a nonzero-degree morphism");
    auto src = pullback_a(i, phi.source);
    auto tgt = pullback_a(i, phi.target);
    std::vector<PolyMatrix<F>> comps;
    for (int m = src.shape.min_degree; !src.shape.is_zero() && m <= src.shape.top_degree(); ++m)
        comps.push_back(block_diag(phi.comp_at(m), phi.comp_at(m + 1)));
    return DgMorphism<F, 2>{std::move(src), std::move(tgt), 0, std::move(comps)};
}

// ---------------------------------------------------------------------------
// diagonal pushforward: (E, d, h) |-> (E, d, {h, h}).

template <CoefficientField F>
TwoHomotopyModule<F> diagonal_pushforward(const OneHomotopyModule<F>& m) {
    return TwoHomotopyModule<F>{m.tower, m.shape, m.d, {m.h[0], m.h[0]}};
}

template <CoefficientField F>
DgMorphism<F, 2> diagonal_pushforward(const DgMorphism<F, 1>& phi) {
    return DgMorphism<F, 2>{diagonal_pushforward(phi.source), diagonal_pushforward(phi.target), phi.degree, phi.comps};
}

// ---------------------------------------------------------------------------
// the counit of (a_2^*, a_2*) and the two-periodicity triangle

namespace detail {
template <CoefficientField F>
void require_few_degrees(const KoszulModule<F, 2>& m, const char* what) {
    if (m.shape.num_degrees() > 3)
        throw NeedsReduction(std::string(what) + " needs a module concentrated in at most 3 degrees; got " +
                             std::to_string(m.shape.num_degrees()));
}
}  // namespace detail

/// The counit a_2^* a_2* M -> M, with per-degree components [id | h_1].
/// Requires M concentrated in at most three degrees; the chain-map property
/// uses the vanishing of E below the bottom degree.
template <CoefficientField F>
DgMorphism<F, 2> counit(const TwoHomotopyModule<F>& m) {
    detail::require_few_degrees(m, "counit");
    auto a = pullback_a(2, pushforward_a(2, m));
    std::vector<PolyMatrix<F>> comps;
    for (int deg = a.shape.min_degree; !a.shape.is_zero() && deg <= a.shape.top_degree(); ++deg)
        comps.push_back(hstack(PolyMatrix<F>::identity(m.tower.field, m.rank(deg)), m.h_at(0, deg + 1)));
    return DgMorphism<F, 2>{std::move(a), m, 0, std::move(comps)};
}

/// The two-periodicity data: the counit triangle a_2^*a_2*M -> M -> M[2]
/// realized by cone(counit) together with the explicit comparison map
/// M[2] -> cone(counit) with components (0, h_1, -id), verified to be an
/// h-equivariant chain map inducing isomorphisms on cohomology.
template <CoefficientField F>
struct PeriodicityWitness {
    DgMorphism<F, 2> counit;
    TwoHomotopyModule<F> triangle_cone;
    DgMorphism<F, 2> comparison;
};

template <CoefficientField F>
PeriodicityWitness<F> periodicity_witness(const TwoHomotopyModule<F>& m) {
    detail::require_few_degrees(m, "periodicity_witness");
    auto chi = counit(m);
    if (!validate_morphism(chi).ok() || !is_chain_map(chi))
        throw ConventionViolation("counit is not a strict chain map");
    auto tri = cone(chi);

    // M[2] -> cone = M (+) A[1]: in degree p the cone is M^p (+) M^{p+1} (+) M^{p+2}
    // and the comparison sends M^{p+2} in via (0, h_1^{p+2}, -id).
    auto m2 = shift(m, 2);
    const F& f = m.tower.field;
    std::vector<PolyMatrix<F>> comps;
    for (int p = m2.shape.min_degree; !m2.shape.is_zero() && p <= m2.shape.top_degree(); ++p) {
        auto zero_top = PolyMatrix<F>::zero(f, m.rank(p), m.rank(p + 2));
        auto mid = m.h_at(0, p + 2);
        auto bot = -PolyMatrix<F>::identity(f, m.rank(p + 2));
        comps.push_back(vstack(vstack(zero_top, mid), bot));
    }
    DgMorphism<F, 2> cmp{std::move(m2), tri.cone, 0, std::move(comps)};
    if (!validate_morphism(cmp).ok() || !is_chain_map(cmp))
        throw ConventionViolation("periodicity comparison map is not a strict chain map");
    if (!is_quasi_iso(cmp))
        throw ConventionViolation("periodicity comparison map is not a quasi-isomorphism");
    return PeriodicityWitness<F>{std::move(chi), tri.cone, std::move(cmp)};
}

// ---------------------------------------------------------------------------
// three-term splitting (the generation lemma)

/// M concentrated in [n, n+2] is a strict extension of two-term pieces:
///   0 -> A -> M -> B -> 0
/// with A = (E^{n-1+1} -> ker d^{n+1}), i.e. the canonical truncation, and B
/// the image complex (im d^{n+1} -> E^{n+2}).  Both carry the induced
/// homotopies, computed by solving the restriction equations in the chosen
/// free bases.  B is the free quotient the generation lemma calls
/// coker(d^n) -> E^{n+2}; when coker(d^n) has torsion (equal to the middle
/// cohomology) the torsion-free image model below is the free complex the
/// argument actually uses.
template <CoefficientField F>
struct ThreeTermSplit {
    TwoHomotopyModule<F> sub, quotient;
    DgMorphism<F, 2> inclusion;   // sub -> M
    DgMorphism<F, 2> projection;  // M -> quotient
    FgModulePresentation<F> coker_presentation;  // of d^{n}: torsion part = middle cohomology
};

template <CoefficientField F>
ThreeTermSplit<F> split_three_term(const TwoHomotopyModule<F>& m) {
    if (m.shape.num_degrees() != 3)
        throw NeedsReduction("split_three_term needs exactly 3 nonzero degrees, got " +
                             std::to_string(m.shape.num_degrees()));
    if (!is_valid(m)) throw InvalidObject("split_three_term needs a valid module");
    const F& f = m.tower.field;
    const int n = m.shape.min_degree;

    // sub: E^n -> ker(d^{n+1}), in the free basis K of the kernel
    auto K = kernel_basis(m.d_at(n + 1));
    auto dA = solve_linear(K, m.d_at(n));
    if (!dA) throw StructuralViolation("image of the bottom differential does not lie in the middle kernel");
    std::vector<PolyMatrix<F>> hA1{m.h_at(0, n + 1) * K}, hA2{m.h_at(1, n + 1) * K};
    auto sub = make_two(m.tower, GradedFree(n, {m.rank(n), K.cols()}), {*dA}, hA1, hA2);

    // quotient: im(d^{n+1}) -> E^{n+2}; a free basis Q of the image comes from
    // the nonzero part of U^{-1} D in the SNF of d^{n+1}
    auto snf = smith_normal_form(m.d_at(n + 1));
    auto uinv = unimodular_inverse(snf.U);
    PolyMatrix<F> Q(f, m.rank(n + 2), snf.rank);
    for (size_t c = 0; c < snf.rank; ++c)
        for (size_t r = 0; r < Q.rows(); ++r) Q.at(r, c) = uinv.at(r, c) * snf.D.at(c, c);
    auto hB1 = solve_linear(Q, m.d_at(n + 1) * m.h_at(0, n + 2));
    auto hB2 = solve_linear(Q, m.d_at(n + 1) * m.h_at(1, n + 2));
    auto proj_mid = solve_linear(Q, m.d_at(n + 1));
    if (!hB1 || !hB2 || !proj_mid)
        throw StructuralViolation("induced structure on the quotient does not descend to the image basis");
    auto quotient = make_two(m.tower, GradedFree(n + 1, {snf.rank, m.rank(n + 2)}), {Q}, {*hB1}, {*hB2});

    DgMorphism<F, 2> incl{sub, m, 0,
                          {PolyMatrix<F>::identity(f, m.rank(n)), K,
                           PolyMatrix<F>::zero(f, m.rank(n + 2), 0)}};
    DgMorphism<F, 2> proj{m, quotient, 0,
                          {PolyMatrix<F>::zero(f, 0, m.rank(n)), *proj_mid,
                           PolyMatrix<F>::identity(f, m.rank(n + 2))}};

    if (!validate(sub).ok() || !validate(quotient).ok())
        throw StructuralViolation("induced homotopies on a split piece do not satisfy the Koszul relations");
    if (!is_chain_map(incl) || !is_chain_map(proj))
        throw StructuralViolation("split triangle maps are not strict chain maps");
    for (int deg = n; deg <= n + 2; ++deg) {
        if (!(proj.comp_at(deg) * incl.comp_at(deg)).is_zero())
            throw StructuralViolation("split composite is nonzero in degree " + std::to_string(deg));
        if (sub.rank(deg) + quotient.rank(deg) != m.rank(deg))
            throw StructuralViolation("split ranks do not add up in degree " + std::to_string(deg));
    }

    return ThreeTermSplit<F>{std::move(sub), std::move(quotient), std::move(incl), std::move(proj),
                             cokernel_presentation(m.d_at(n))};
}

// ---------------------------------------------------------------------------
// Galois twists and scalar extension along the tower

namespace detail {
template <CoefficientField F>
Poly<F> twist_poly(const Poly<F>& p, const typename F::Elem& c) {
    const F& f = p.field();
    std::vector<typename F::Elem> v(p.coeffs());
    typename F::Elem ck = f.one();
    for (size_t k = 0; k < v.size(); ++k) {
        v[k] = f.mul(v[k], ck);
        ck = f.mul(ck, c);
    }
    return Poly<F>(f, std::move(v));
}
}  // namespace detail

/// Substitutes s |-> c*s in every entry; pi_K = u*s^e is fixed because c^e = 1,
/// so validity is preserved on the nose.
template <CoefficientField F, int NH>
KoszulModule<F, NH> galois_twist(const KoszulModule<F, NH>& m, const typename F::Elem& c) {
    const F& f = m.tower.field;
    typename F::Elem ce = f.one();
    for (long i = 0; i < m.tower.e; ++i) ce = f.mul(ce, c);
    if (!(ce == f.one())) throw NotARoot("twist scalar is not an e-th root of unity");
    auto sub = [&](const Poly<F>& p) { return detail::twist_poly(p, c); };
    KoszulModule<F, NH> out = m;
    for (auto& mat : out.d) mat = mat.map_entries(sub);
    for (auto& hs : out.h)
        for (auto& mat : hs) mat = mat.map_entries(sub);
    return out;
}

template <CoefficientField F, int NH>
DgMorphism<F, NH> galois_twist(const DgMorphism<F, NH>& phi, const typename F::Elem& c) {
    auto sub = [&](const Poly<F>& p) { return detail::twist_poly(p, c); };
    std::vector<PolyMatrix<F>> comps;
    for (const auto& mat : phi.comps) comps.push_back(mat.map_entries(sub));
    return DgMorphism<F, NH>{galois_twist(phi.source, c), galois_twist(phi.target, c), phi.degree, std::move(comps)};
}

/// Scalar extension along (k, e, u) -> (k, e*e2, u*u2^e): substitutes
/// s_L |-> u2 * s_M^{e2} in every entry.  Ranks are unchanged and every
/// defining identity maps to the corresponding identity over the new tower.
template <CoefficientField F, int NH>
KoszulModule<F, NH> extend_scalars(const KoszulModule<F, NH>& m, long e2, const typename F::Elem& u2) {
    const F& f = m.tower.field;
    if (e2 < 1) throw InvalidObject("extension degree must be >= 1");
    if (f.is_zero(u2)) throw InvalidObject("extension image unit must be nonzero");
    typename F::Elem u2e = f.one();
    for (long i = 0; i < m.tower.e; ++i) u2e = f.mul(u2e, u2);
    RingTower<F> bigger(f, m.tower.e * e2, f.mul(m.tower.u, u2e));
    auto image = Poly<F>::monomial(f, u2, static_cast<int>(e2));
    auto sub = [&](const Poly<F>& p) { return compose(p, image); };
    KoszulModule<F, NH> out = m;
    out.tower = bigger;
    for (auto& mat : out.d) mat = mat.map_entries(sub);
    for (auto& hs : out.h)
        for (auto& mat : hs) mat = mat.map_entries(sub);
    return out;
}

}  // namespace kmf

#endif
