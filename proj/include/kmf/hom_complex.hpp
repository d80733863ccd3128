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

#ifndef KMF_HOM_COMPLEX_HPP
#define KMF_HOM_COMPLEX_HPP

#include <optional>
#include <vector>

#include "morphisms.hpp"

namespace kmf {

/// One graded piece Hom^n(E, F), presented by an explicit free k[s]-basis of
/// the equivariance kernel inside the ambient coordinate module
/// (+)_j Hom(E^j, F^{j+n}).  The basis matrix has the ambient dimension many
/// rows and one column per basis element; the block table records how ambient
/// coordinates decompose into the per-degree components (column-major within
/// each block).
template <CoefficientField F>
struct HomTerm {
    struct Block {
        int j;          // source degree; the block is Hom(E^j, F^{j+n})
        size_t rows;    // rank of F^{j+n}
        size_t cols;    // rank of E^j
        size_t offset;  // start of this block in ambient coordinates
    };
    int n = 0;
    std::vector<Block> blocks;
    size_t ambient_dim = 0;
    PolyMatrix<F> basis;

    HomTerm(const F& field, int deg) : n(deg), basis(field, 0, 0) {}
    size_t dim() const { return basis.cols(); }
};

/// The hom complex of a pair of same-kind modules over one tower, on a
/// window of degrees: free bases of every term and the differential
///   phi |-> d_F o phi + (-1)^{n+1} phi o d_E
/// expressed in those bases.  The differential squares to zero; this is
/// verified at construction time.
template <CoefficientField F, int NH>
struct HomComplex {
    KoszulModule<F, NH> source, target;
    int min_n = 0;
    std::vector<HomTerm<F>> terms;      // terms[i] is Hom^{min_n + i}
    std::vector<PolyMatrix<F>> diffs;   // diffs[i]: terms[i] -> terms[i+1], basis coordinates

    HomTerm<F> term(int n) const {
        int i = n - min_n;
        if (i < 0 || i >= static_cast<int>(terms.size())) return HomTerm<F>(source.tower.field, n);
        return terms[static_cast<size_t>(i)];
    }
    PolyMatrix<F> diff(int n) const {
        int i = n - min_n;
        if (i < 0 || i >= static_cast<int>(diffs.size()))
            return PolyMatrix<F>(source.tower.field, term(n + 1).dim(), term(n).dim());
        return diffs[static_cast<size_t>(i)];
    }
};

namespace detail {

template <CoefficientField F, int NH>
HomTerm<F> hom_term_layout(const KoszulModule<F, NH>& E, const KoszulModule<F, NH>& T, int n) {
    HomTerm<F> term(E.tower.field, n);
    for (int j = E.shape.min_degree; !E.shape.is_zero() && j <= E.shape.top_degree(); ++j) {
        size_t rows = T.rank(j + n), cols = E.rank(j);
        if (rows == 0 || cols == 0) continue;
        term.blocks.push_back({j, rows, cols, term.ambient_dim});
        term.ambient_dim += rows * cols;
    }
    return term;
}

/// Stacked equivariance constraints for degree n, acting on ambient coords.
template <CoefficientField F, int NH>
PolyMatrix<F> equivariance_constraints(const KoszulModule<F, NH>& E, const KoszulModule<F, NH>& T,
                                       const HomTerm<F>& term) {
    const F& f = E.tower.field;
    const int n = term.n;
    const auto sign = Poly<F>::constant(f, (n % 2 == 0) ? f.one() : f.neg(f.one()));
    auto block_of = [&](int j) -> const typename HomTerm<F>::Block* {
        for (const auto& b : term.blocks)
            if (b.j == j) return &b;
        return nullptr;
    };
    std::vector<std::vector<PolyMatrix<F>>> rows;
    for (int i = 0; i < NH; ++i)
        for (int j = E.shape.min_degree - 1; !E.shape.is_zero() && j <= E.shape.top_degree(); ++j) {
            size_t tr = T.rank(j + n), sc = E.rank(j + 1);
            if (tr == 0 || sc == 0) continue;  // the equation lands in Hom(E^{j+1}, F^{j+n})
            const auto* bj = block_of(j);
            const auto* bj1 = block_of(j + 1);
            if (!bj && !bj1) continue;
            PolyMatrix<F> row(f, tr * sc, term.ambient_dim);
            if (bj) {
                // vec(phi^j o h_E) = (h_E^T (x) I) vec(phi^j)
                auto m = kron(E.h_at(i, j + 1).transpose(), PolyMatrix<F>::identity(f, tr));
                for (size_t r = 0; r < m.rows(); ++r)
                    for (size_t c = 0; c < m.cols(); ++c) row.at(r, bj->offset + c) = m.at(r, c);
            }
            if (bj1) {
                // -(-1)^n vec(h_F o phi^{j+1}) = -(-1)^n (I (x) h_F) vec(phi^{j+1})
                auto m = kron(PolyMatrix<F>::identity(f, sc), T.h_at(i, j + n + 1)).scaled(-sign);
                for (size_t r = 0; r < m.rows(); ++r)
                    for (size_t c = 0; c < m.cols(); ++c)
                        row.at(r, bj1->offset + c) = row.at(r, bj1->offset + c) + m.at(r, c);
            }
            rows.push_back({std::move(row)});
        }
    if (rows.empty()) return PolyMatrix<F>(f, 0, term.ambient_dim);
    return from_blocks(f, rows);
}

}  // namespace detail

/// Ambient coordinates of a morphism, stacked per the term layout.
template <CoefficientField F, int NH>
PolyMatrix<F> ambient_vector(const HomTerm<F>& term, const DgMorphism<F, NH>& phi) {
    PolyMatrix<F> out(phi.source.tower.field, term.ambient_dim, 1);
    for (const auto& b : term.blocks) {
        auto v = vec(phi.comp_at(b.j));
        for (size_t i = 0; i < v.rows(); ++i) out.at(b.offset + i, 0) = v.at(i, 0);
    }
    return out;
}

/// Rebuilds a morphism from ambient coordinates.
template <CoefficientField F, int NH>
DgMorphism<F, NH> from_ambient(const KoszulModule<F, NH>& E, const KoszulModule<F, NH>& T, const HomTerm<F>& term,
                               const PolyMatrix<F>& v) {
    auto phi = zero_morphism(E, T, term.n);
    for (const auto& b : term.blocks)
        phi.comps[static_cast<size_t>(b.j - E.shape.min_degree)] = unvec(v, b.rows, b.cols, b.offset);
    return phi;
}

/// Builds the hom complex on the window [n_lo, n_hi] (defaults to every
/// degree where the term can be nonzero).  Throws TowerMismatch for modules
/// over different towers and ConventionViolation if the differential ever
/// leaves the equivariance kernel or fails d o d = 0 — either would signal a
/// sign-convention bug, never swallowed.
template <CoefficientField F, int NH>
HomComplex<F, NH> hom_complex(const KoszulModule<F, NH>& E, const KoszulModule<F, NH>& T,
                              std::optional<int> n_lo = std::nullopt, std::optional<int> n_hi = std::nullopt) {
    require_same_tower(E.tower, T.tower, "hom_complex");
    HomComplex<F, NH> hc{E, T, 0, {}, {}};
    if (E.shape.is_zero() || T.shape.is_zero()) return hc;
    int lo = n_lo.value_or(T.shape.min_degree - E.shape.top_degree());
    int hi = n_hi.value_or(T.shape.top_degree() - E.shape.min_degree);
    hc.min_n = lo;
    for (int n = lo; n <= hi; ++n) {
        auto term = detail::hom_term_layout(E, T, n);
        auto constraints = detail::equivariance_constraints(E, T, term);
        term.basis = kernel_basis(constraints);
        hc.terms.push_back(std::move(term));
    }
    const F& f = E.tower.field;
    for (int n = lo; n < hi; ++n) {
        const auto& from = hc.terms[static_cast<size_t>(n - lo)];
        const auto& to = hc.terms[static_cast<size_t>(n + 1 - lo)];
        PolyMatrix<F> images(f, to.ambient_dim, from.dim());
        for (size_t c = 0; c < from.dim(); ++c) {
            auto phi = from_ambient(E, T, from, from.basis.col(c));
            auto img = ambient_vector(to, hom_differential(phi));
            for (size_t r = 0; r < to.ambient_dim; ++r) images.at(r, c) = img.at(r, 0);
        }
        auto coords = solve_linear(to.basis, images);
        if (!coords)
            throw ConventionViolation("hom differential left the equivariance kernel at degree " + std::to_string(n));
        hc.diffs.push_back(std::move(*coords));
    }
    for (size_t i = 0; i + 1 < hc.diffs.size(); ++i)
        if (!(hc.diffs[i + 1] * hc.diffs[i]).is_zero())
            throw ConventionViolation("hom differential does not square to zero");
    return hc;
}

/// Per-degree cohomology of the hom complex, in invariant factors.  Only
/// meaningful on a window built wide enough for the degrees requested.
template <CoefficientField F, int NH>
FgModulePresentation<F> hom_cohomology_at(const HomComplex<F, NH>& hc, int n) {
    auto cocycles = kernel_basis(hc.diff(n));
    return subquotient_presentation(cocycles, hc.diff(n - 1));
}

/// Homotopy classes of chain maps E -> F: H^0 of the hom complex.
template <CoefficientField F, int NH>
FgModulePresentation<F> homotopy_classes(const KoszulModule<F, NH>& E, const KoszulModule<F, NH>& T) {
    auto hc = hom_complex(E, T, -1, 1);
    return hom_cohomology_at(hc, 0);
}

/// Decides d_F o xi + xi o d_E = phi for xi in Hom^{degree-1}; the returned
/// witness, when present, exhibits phi as null-homotopic inside the strict
/// category (the witness is h-equivariant by construction).
template <CoefficientField F, int NH>
std::optional<DgMorphism<F, NH>> is_null_homotopic(const DgMorphism<F, NH>& phi) {
    const auto& E = phi.source;
    const auto& T = phi.target;
    if (E.shape.is_zero() || T.shape.is_zero()) return zero_morphism(E, T, phi.degree - 1);
    auto hc = hom_complex(E, T, phi.degree - 1, phi.degree);
    auto coords = solve_linear(hc.term(phi.degree).basis, ambient_vector(hc.term(phi.degree), phi));
    if (!coords) throw InvalidObject("morphism is not an element of the hom complex");
    auto x = solve_linear(hc.diff(phi.degree - 1), *coords);
    if (!x) return std::nullopt;
    return from_ambient(E, T, hc.term(phi.degree - 1), hc.term(phi.degree - 1).basis * *x);
}

/// Equality in the homotopy category: two parallel morphisms agree there
/// exactly when their difference bounds.
template <CoefficientField F, int NH>
bool is_homotopic(const DgMorphism<F, NH>& a, const DgMorphism<F, NH>& b) {
    return is_null_homotopic(subtract(a, b)).has_value();
}

/// A basis of the k[s]-module of chain maps E -> F (degree-0 cocycles).
template <CoefficientField F, int NH>
std::vector<DgMorphism<F, NH>> chain_map_basis(const KoszulModule<F, NH>& E, const KoszulModule<F, NH>& T) {
    std::vector<DgMorphism<F, NH>> out;
    if (E.shape.is_zero() || T.shape.is_zero()) return out;
    auto hc = hom_complex(E, T, 0, 1);
    auto cocycles = kernel_basis(hc.diff(0));
    for (size_t c = 0; c < cocycles.cols(); ++c) {
        auto amb = hc.term(0).basis * cocycles.col(c);
        out.push_back(from_ambient(E, T, hc.term(0), amb));
    }
    return out;
}

/// True iff the cone of phi is acyclic, i.e. phi induces isomorphisms on all
/// cohomology groups.
template <CoefficientField F, int NH>
bool is_quasi_iso(const DgMorphism<F, NH>& phi) {
    auto tri = cone(phi);
    return cohomology(tri.cone).is_zero();
}

}  // namespace kmf

#endif
