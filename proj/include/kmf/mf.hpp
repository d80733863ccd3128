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

#ifndef KMF_MF_HPP
#define KMF_MF_HPP

#include "functors.hpp"

namespace kmf {

/// An object (E^0, E^1, d, h) of MF(O_L, pi_K): free modules of finite rank
/// with d o h = pi_K * id and h o d = pi_K * id.  Over a domain these force
/// rank0 = rank1 (both composites have full rank), which validate reports as
/// a StructuralViolation when broken.
template <CoefficientField F>
struct MatrixFactorization {
    using Mat = PolyMatrix<F>;

    RingTower<F> tower;
    Mat d;  // E^0 -> E^1, so rank1 x rank0
    Mat h;  // E^1 -> E^0, so rank0 x rank1

    size_t rank0() const { return d.cols(); }
    size_t rank1() const { return d.rows(); }

    static MatrixFactorization zero(const RingTower<F>& tower) {
        return {tower, Mat(tower.field, 0, 0), Mat(tower.field, 0, 0)};
    }

    friend bool operator==(const MatrixFactorization& a, const MatrixFactorization& b) {
        return a.tower == b.tower && a.d == b.d && a.h == b.h;
    }
    friend bool operator!=(const MatrixFactorization& a, const MatrixFactorization& b) { return !(a == b); }
};

template <CoefficientField F>
MatrixFactorization<F> make_mf(const RingTower<F>& tower, PolyMatrix<F> d, PolyMatrix<F> h) {
    if (d.rows() != h.cols() || d.cols() != h.rows())
        throw DimMismatch("matrix factorization maps " + d.dim_string() + " and " + h.dim_string());
    return {tower, std::move(d), std::move(h)};
}

template <CoefficientField F>
ValidationReport<F> validate(const MatrixFactorization<F>& e) {
    ValidationReport<F> rep;
    if (e.rank0() != e.rank1()) {
        rep.violations.push_back({"rank0 = rank1 (forced over a domain)", 0,
                                  PolyMatrix<F>::identity(e.tower.field, 1)});
        return rep;
    }
    auto r1 = e.d * e.h - e.tower.pi_id(e.rank1());
    if (!r1.is_zero()) rep.violations.push_back({"d o h = pi_K * id", 1, std::move(r1)});
    auto r0 = e.h * e.d - e.tower.pi_id(e.rank0());
    if (!r0.is_zero()) rep.violations.push_back({"h o d = pi_K * id", 0, std::move(r0)});
    return rep;
}

template <CoefficientField F>
bool is_valid(const MatrixFactorization<F>& e) {
    return validate(e).ok();
}

/// A pair of maps commuting with d, d', h, h'.
template <CoefficientField F>
struct MfMorphism {
    MatrixFactorization<F> source, target;
    PolyMatrix<F> phi0, phi1;

    friend bool operator==(const MfMorphism& a, const MfMorphism& b) {
        return a.source == b.source && a.target == b.target && a.phi0 == b.phi0 && a.phi1 == b.phi1;
    }
};

template <CoefficientField F>
bool is_valid(const MfMorphism<F>& phi) {
    return (phi.phi1 * phi.source.d - phi.target.d * phi.phi0).is_zero() &&
           (phi.phi0 * phi.source.h - phi.target.h * phi.phi1).is_zero();
}

template <CoefficientField F>
MfMorphism<F> identity_morphism(const MatrixFactorization<F>& e) {
    const F& f = e.tower.field;
    return {e, e, PolyMatrix<F>::identity(f, e.rank0()), PolyMatrix<F>::identity(f, e.rank1())};
}

template <CoefficientField F>
MfMorphism<F> compose(const MfMorphism<F>& g, const MfMorphism<F>& f) {
    if (!(g.source == f.target)) throw DimMismatch("mf compose: middle objects differ");
    return {f.source, g.target, g.phi0 * f.phi0, g.phi1 * f.phi1};
}

/// The shift: (E^0, E^1, d, h) |-> (E^1, E^0, -h, -d).  Strictly 2-periodic.
template <CoefficientField F>
MatrixFactorization<F> mf_shift(const MatrixFactorization<F>& e) {
    return {e.tower, -e.h, -e.d};
}

template <CoefficientField F>
MatrixFactorization<F> direct_sum(const MatrixFactorization<F>& a, const MatrixFactorization<F>& b) {
    require_same_tower(a.tower, b.tower, "mf direct_sum");
    return {a.tower, block_diag(a.d, b.d), block_diag(a.h, b.h)};
}

/// The cone of phi : E -> E', with underlying modules E^1 (+) E'^0 and
/// E'^1 (+) E^0 and the displayed block maps; returns the triangle maps
/// E' -> cone and cone -> E[1] as well.
template <CoefficientField F>
struct MfConeTriangle {
    MatrixFactorization<F> cone;
    MfMorphism<F> inclusion;   // E' -> cone
    MfMorphism<F> projection;  // cone -> E[1]
};

template <CoefficientField F>
MfConeTriangle<F> mf_cone(const MfMorphism<F>& phi) {
    if (!is_valid(phi)) throw NotMfMorphism("mf_cone requires maps commuting with d and h");
    const auto& E = phi.source;
    const auto& Ep = phi.target;
    const F& f = E.tower.field;
    // cone^0 = E^1 (+) E'^0, cone^1 = E'^1 (+) E^0
    auto dC = from_blocks(f, {{phi.phi1, Ep.d}, {-E.h, PolyMatrix<F>::zero(f, E.rank0(), Ep.rank0())}});
    auto hC = from_blocks(f, {{PolyMatrix<F>::zero(f, E.rank1(), Ep.rank1()), -E.d}, {Ep.h, phi.phi0}});
    MatrixFactorization<F> c{E.tower, std::move(dC), std::move(hC)};

    MfMorphism<F> incl{Ep, c,
                       vstack(PolyMatrix<F>::zero(f, E.rank1(), Ep.rank0()), PolyMatrix<F>::identity(f, Ep.rank0())),
                       vstack(PolyMatrix<F>::identity(f, Ep.rank1()), PolyMatrix<F>::zero(f, E.rank0(), Ep.rank1()))};
    MfMorphism<F> proj{c, mf_shift(E),
                       hstack(PolyMatrix<F>::identity(f, E.rank1()), PolyMatrix<F>::zero(f, E.rank1(), Ep.rank0())),
                       hstack(PolyMatrix<F>::zero(f, E.rank0(), Ep.rank1()), PolyMatrix<F>::identity(f, E.rank0()))};
    return {std::move(c), std::move(incl), std::move(proj)};
}

// ---------------------------------------------------------------------------
// folding and unfolding

/// (E, d, h) |-> ((+) E^{2i}, (+) E^{2i+1}, d+h, d+h).  Blocks are ordered by
/// ascending degree within each parity.  The factorization identities follow
/// from d^2 = 0, h^2 = 0 and [d,h] = pi_K * id.
template <CoefficientField F>
MatrixFactorization<F> fold(const OneHomotopyModule<F>& m) {
    const F& f = m.tower.field;
    if (m.shape.is_zero()) return MatrixFactorization<F>::zero(m.tower);
    std::vector<int> evens, odds;
    for (int deg = m.shape.min_degree; deg <= m.shape.top_degree(); ++deg)
        ((deg % 2 + 2) % 2 == 0 ? evens : odds).push_back(deg);
    auto assemble = [&](const std::vector<int>& to, const std::vector<int>& from) {
        if (to.empty() || from.empty()) {
            size_t r = 0, c = 0;
            for (int td : to) r += m.rank(td);
            for (int sd : from) c += m.rank(sd);
            return PolyMatrix<F>::zero(f, r, c);
        }
        std::vector<std::vector<PolyMatrix<F>>> blocks;
        for (int td : to) {
            std::vector<PolyMatrix<F>> row;
            for (int sd : from) {
                if (td == sd + 1)
                    row.push_back(m.d_at(sd));
                else if (td == sd - 1)
                    row.push_back(m.h_at(sd));
                else
                    row.push_back(PolyMatrix<F>::zero(f, m.rank(td), m.rank(sd)));
            }
            blocks.push_back(std::move(row));
        }
        return from_blocks(f, blocks);
    };
    return {m.tower, assemble(odds, evens), assemble(evens, odds)};
}

/// The strict model G of the singularity-category equivalence:
/// (E^0, E^1, d, h) |-> the two-term module (E^0 -> E^1, {h, h}) in degrees [0,1].
template <CoefficientField F>
TwoHomotopyModule<F> unfold(const MatrixFactorization<F>& e) {
    if (e.rank0() == 0 && e.rank1() == 0) return TwoHomotopyModule<F>::zero(e.tower);
    return make_two(e.tower, GradedFree(0, {e.rank0(), e.rank1()}), {e.d}, {e.h}, {e.h});
}

// ---------------------------------------------------------------------------
// the 2-periodic hom complex of a pair of factorizations
//
// Only degrees -1, 0, 1 are materialized; by 2-periodicity that is enough
// for homotopy classes and null-homotopy decisions.
//   Hom^0  = (phi0: E0 -> F0, phi1: E1 -> F1)
//   Hom^-1 = (s1: E0 -> F1, s0: E1 -> F0)
//   D_{-1}(s1, s0) = (h' s1 + s0 d, d' s0 + s1 h)
//   D_0(phi0, phi1) = (d' phi0 - phi1 d, h' phi1 - phi0 h)

namespace detail {

template <CoefficientField F>
struct MfHomPair {
    // ambient coordinates: vec(first) stacked over vec(second)
    size_t r1, c1, r2, c2;
    size_t dim() const { return r1 * c1 + r2 * c2; }
};

/// D_{-1} as an ambient matrix: Hom^{-1} -> Hom^0.
template <CoefficientField F>
PolyMatrix<F> mf_contraction_matrix(const MatrixFactorization<F>& e, const MatrixFactorization<F>& t) {
    const F& f = e.tower.field;
    auto i_e0 = PolyMatrix<F>::identity(f, e.rank0());
    auto i_e1 = PolyMatrix<F>::identity(f, e.rank1());
    // rows: vec(E0->F0) then vec(E1->F1); cols: vec(s1: E0->F1) then vec(s0: E1->F0)
    auto a11 = kron(i_e0, t.h);                 // h' s1
    auto a12 = kron(e.d.transpose(), PolyMatrix<F>::identity(f, t.rank0()));  // s0 d
    auto a21 = kron(e.h.transpose(), PolyMatrix<F>::identity(f, t.rank1()));  // s1 h
    auto a22 = kron(i_e1, t.d);                 // d' s0
    return from_blocks(f, {{a11, a12}, {a21, a22}});
}

/// D_0 as an ambient matrix: Hom^0 -> Hom^1.
template <CoefficientField F>
PolyMatrix<F> mf_cocycle_matrix(const MatrixFactorization<F>& e, const MatrixFactorization<F>& t) {
    const F& f = e.tower.field;
    // rows: vec(E0->F1) then vec(E1->F0); cols: vec(phi0) then vec(phi1)
    auto a11 = kron(PolyMatrix<F>::identity(f, e.rank0()), t.d);                               // d' phi0
    auto a12 = kron(e.d.transpose(), PolyMatrix<F>::identity(f, t.rank1())).scaled(
        Poly<F>::constant(f, f.neg(f.one())));                                                 // -phi1 d
    auto a21 = kron(e.h.transpose(), PolyMatrix<F>::identity(f, t.rank0())).scaled(
        Poly<F>::constant(f, f.neg(f.one())));                                                 // -phi0 h
    auto a22 = kron(PolyMatrix<F>::identity(f, e.rank1()), t.h);                               // h' phi1
    return from_blocks(f, {{a11, a12}, {a21, a22}});
}

}  // namespace detail

/// A contraction of E: maps (s0: E^1 -> E^0, s1: E^0 -> E^1) with
/// h s1 + s0 d = id and d s0 + s1 h = id, i.e. a null-homotopy of the
/// identity in the MF hom complex.
template <CoefficientField F>
struct ContractionWitness {
    PolyMatrix<F> s0, s1;
};

/// Decides the zero object of the homotopy category of matrix factorizations
/// by solving the contraction system exactly over k[s].
template <CoefficientField F>
std::optional<ContractionWitness<F>> is_contractible(const MatrixFactorization<F>& e,
                                                     const CancelToken* cancel = nullptr) {
    const F& f = e.tower.field;
    auto a = detail::mf_contraction_matrix(e, e);
    auto rhs = vstack(vec(PolyMatrix<F>::identity(f, e.rank0())), vec(PolyMatrix<F>::identity(f, e.rank1())));
    auto sol = solve_linear(a, rhs, cancel);
    if (!sol) return std::nullopt;
    size_t n1 = e.rank1() * e.rank0();  // vec(s1) block
    return ContractionWitness<F>{unvec(*sol, e.rank0(), e.rank1(), n1), unvec(*sol, e.rank1(), e.rank0(), 0)};
}

/// Null-homotopy of an arbitrary morphism in the MF hom complex.
template <CoefficientField F>
std::optional<ContractionWitness<F>> mf_null_homotopy(const MfMorphism<F>& phi, const CancelToken* cancel = nullptr) {
    auto a = detail::mf_contraction_matrix(phi.source, phi.target);
    auto rhs = vstack(vec(phi.phi0), vec(phi.phi1));
    auto sol = solve_linear(a, rhs, cancel);
    if (!sol) return std::nullopt;
    size_t n1 = phi.target.rank1() * phi.source.rank0();
    return ContractionWitness<F>{unvec(*sol, phi.target.rank0(), phi.source.rank1(), n1),
                                 unvec(*sol, phi.target.rank1(), phi.source.rank0(), 0)};
}

/// Hom in the homotopy category h(MF): H^0 of the 2-periodic hom complex, in
/// invariant factors.
template <CoefficientField F>
FgModulePresentation<F> mf_hom_classes(const MatrixFactorization<F>& e, const MatrixFactorization<F>& t,
                                       const CancelToken* cancel = nullptr) {
    require_same_tower(e.tower, t.tower, "mf_hom_classes");
    auto cocycles = kernel_basis(detail::mf_cocycle_matrix(e, t), cancel);
    auto boundaries = detail::mf_contraction_matrix(e, t);
    return subquotient_presentation(cocycles, boundaries, cancel);
}

template <CoefficientField F>
MatrixFactorization<F> galois_twist(const MatrixFactorization<F>& e, const typename F::Elem& c) {
    const F& f = e.tower.field;
    typename F::Elem ce = f.one();
    for (long i = 0; i < e.tower.e; ++i) ce = f.mul(ce, c);
    if (!(ce == f.one())) throw NotARoot("twist scalar is not an e-th root of unity");
    auto sub = [&](const Poly<F>& p) { return detail::twist_poly(p, c); };
    return {e.tower, e.d.map_entries(sub), e.h.map_entries(sub)};
}

}  // namespace kmf

#endif
