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

#ifndef KMF_MORPHISMS_HPP
#define KMF_MORPHISMS_HPP

#include "modules.hpp"

namespace kmf {

/// A degree-n element of the hom complex: components phi^j : E^j -> F^{j+n}
/// subject to strict h-equivariance
///   phi^j o h_{i,E}^{j+1} = (-1)^n h_{i,F}^{j+n+1} o phi^{j+1}.
/// The Koszul sign (-1)^n is forced: without it the displayed hom
/// differential does not preserve equivariance (see hom_complex tests).
/// There is no d-condition; a chain map is the degree-0 case with
/// d o phi = phi o d.
///
/// Components are stored for source degrees [min, min + len): comps[i] maps
/// E^{min+i} -> F^{min+i+degree}; comp_at materializes empty matrices
/// elsewhere.  Source and target are held by value (objects are immutable).
template <CoefficientField F, int NH>
struct DgMorphism {
    using Mat = PolyMatrix<F>;
    using Module = KoszulModule<F, NH>;

    Module source, target;
    int degree = 0;
    std::vector<Mat> comps;

    Mat comp_at(int m) const {
        int i = m - source.shape.min_degree;
        if (i >= 0 && i < static_cast<int>(comps.size())) return comps[static_cast<size_t>(i)];
        return Mat::zero(source.tower.field, target.rank(m + degree), source.rank(m));
    }

    friend bool operator==(const DgMorphism& a, const DgMorphism& b) {
        if (!(a.source == b.source && a.target == b.target && a.degree == b.degree)) return false;
        int lo = std::min(a.source.shape.min_degree, b.source.shape.min_degree);
        int hi = std::max(a.source.shape.is_zero() ? lo - 1 : a.source.shape.top_degree(),
                          b.source.shape.is_zero() ? lo - 1 : b.source.shape.top_degree());
        for (int m = lo; m <= hi; ++m)
            if (a.comp_at(m) != b.comp_at(m)) return false;
        return true;
    }
};

template <CoefficientField F, int NH>
DgMorphism<F, NH> make_morphism(const KoszulModule<F, NH>& source, const KoszulModule<F, NH>& target, int degree,
                                std::vector<PolyMatrix<F>> comps) {
    require_same_tower(source.tower, target.tower, "morphism endpoints");
    if (comps.size() != source.shape.num_degrees())
        throw DimMismatch("expected one component per source degree");
    for (size_t i = 0; i < comps.size(); ++i) {
        int m = source.shape.min_degree + static_cast<int>(i);
        if (comps[i].rows() != target.rank(m + degree) || comps[i].cols() != source.rank(m))
            throw DimMismatch("morphism component in degree " + std::to_string(m) + " has shape " + comps[i].dim_string());
    }
    return DgMorphism<F, NH>{source, target, degree, std::move(comps)};
}

template <CoefficientField F, int NH>
DgMorphism<F, NH> zero_morphism(const KoszulModule<F, NH>& source, const KoszulModule<F, NH>& target, int degree = 0) {
    std::vector<PolyMatrix<F>> comps;
    for (int m = source.shape.min_degree; !source.shape.is_zero() && m <= source.shape.top_degree(); ++m)
        comps.push_back(PolyMatrix<F>::zero(source.tower.field, target.rank(m + degree), source.rank(m)));
    return DgMorphism<F, NH>{source, target, degree, std::move(comps)};
}

template <CoefficientField F, int NH>
DgMorphism<F, NH> identity_morphism(const KoszulModule<F, NH>& m) {
    std::vector<PolyMatrix<F>> comps;
    for (int deg = m.shape.min_degree; !m.shape.is_zero() && deg <= m.shape.top_degree(); ++deg)
        comps.push_back(PolyMatrix<F>::identity(m.tower.field, m.rank(deg)));
    return DgMorphism<F, NH>{m, m, 0, std::move(comps)};
}

/// Checks the signed h-equivariance conditions; empty report iff phi really
/// is an element of Hom^degree.
template <CoefficientField F, int NH>
ValidationReport<F> validate_morphism(const DgMorphism<F, NH>& phi) {
    ValidationReport<F> rep;
    const auto& E = phi.source;
    const auto& T = phi.target;
    const int n = phi.degree;
    const bool flip = (n % 2) != 0;
    for (int j = E.shape.min_degree - 1; !E.shape.is_zero() && j <= E.shape.top_degree(); ++j)
        for (int i = 0; i < NH; ++i) {
            auto lhs = phi.comp_at(j) * E.h_at(i, j + 1);
            auto rhs = T.h_at(i, j + n + 1) * phi.comp_at(j + 1);
            auto res = flip ? lhs + rhs : lhs - rhs;
            if (!res.is_zero())
                rep.violations.push_back({"h" + std::to_string(i + 1) + "-equivariance", j, std::move(res)});
        }
    return rep;
}

/// The hom-complex differential d(phi)^j = d_F o phi^j + (-1)^{n+1} phi^{j+1} o d_E.
template <CoefficientField F, int NH>
DgMorphism<F, NH> hom_differential(const DgMorphism<F, NH>& phi) {
    const auto& E = phi.source;
    const auto& T = phi.target;
    const int n = phi.degree;
    std::vector<PolyMatrix<F>> comps;
    for (int j = E.shape.min_degree; !E.shape.is_zero() && j <= E.shape.top_degree(); ++j) {
        auto a = T.d_at(j + n) * phi.comp_at(j);
        auto b = phi.comp_at(j + 1) * E.d_at(j);
        comps.push_back((n + 1) % 2 == 0 ? a + b : a - b);
    }
    return DgMorphism<F, NH>{E, T, n + 1, std::move(comps)};
}

template <CoefficientField F, int NH>
bool is_chain_map(const DgMorphism<F, NH>& phi) {
    if (phi.degree != 0) return false;
    if (!validate_morphism(phi).ok()) return false;
    for (int j = phi.source.shape.min_degree; !phi.source.shape.is_zero() && j <= phi.source.shape.top_degree(); ++j)
        if (!(phi.target.d_at(j) * phi.comp_at(j) - phi.comp_at(j + 1) * phi.source.d_at(j)).is_zero()) return false;
    return true;
}

template <CoefficientField F, int NH>
DgMorphism<F, NH> compose(const DgMorphism<F, NH>& g, const DgMorphism<F, NH>& f) {
    if (!(g.source == f.target)) throw DimMismatch("compose: middle objects differ");
    std::vector<PolyMatrix<F>> comps;
    for (int m = f.source.shape.min_degree; !f.source.shape.is_zero() && m <= f.source.shape.top_degree(); ++m)
        comps.push_back(g.comp_at(m + f.degree) * f.comp_at(m));
    return DgMorphism<F, NH>{f.source, g.target, f.degree + g.degree, std::move(comps)};
}

template <CoefficientField F, int NH>
DgMorphism<F, NH> add(const DgMorphism<F, NH>& a, const DgMorphism<F, NH>& b) {
    if (!(a.source == b.source && a.target == b.target && a.degree == b.degree))
        throw DimMismatch("morphism sum of incompatible morphisms");
    std::vector<PolyMatrix<F>> comps;
    for (int m = a.source.shape.min_degree; !a.source.shape.is_zero() && m <= a.source.shape.top_degree(); ++m)
        comps.push_back(a.comp_at(m) + b.comp_at(m));
    return DgMorphism<F, NH>{a.source, a.target, a.degree, std::move(comps)};
}

template <CoefficientField F, int NH>
DgMorphism<F, NH> subtract(const DgMorphism<F, NH>& a, const DgMorphism<F, NH>& b) {
    if (!(a.source == b.source && a.target == b.target && a.degree == b.degree))
        throw DimMismatch("morphism difference of incompatible morphisms");
    std::vector<PolyMatrix<F>> comps;
    for (int m = a.source.shape.min_degree; !a.source.shape.is_zero() && m <= a.source.shape.top_degree(); ++m)
        comps.push_back(a.comp_at(m) - b.comp_at(m));
    return DgMorphism<F, NH>{a.source, a.target, a.degree, std::move(comps)};
}

template <CoefficientField F, int NH>
DgMorphism<F, NH> scale(const DgMorphism<F, NH>& a, const Poly<F>& f) {
    std::vector<PolyMatrix<F>> comps;
    for (int m = a.source.shape.min_degree; !a.source.shape.is_zero() && m <= a.source.shape.top_degree(); ++m)
        comps.push_back(a.comp_at(m).scaled(f));
    return DgMorphism<F, NH>{a.source, a.target, a.degree, std::move(comps)};
}

/// phi[k] : E[k] -> F[k], components reindexed, no sign.
template <CoefficientField F, int NH>
DgMorphism<F, NH> shift(const DgMorphism<F, NH>& phi, int k) {
    auto src = shift(phi.source, k);
    auto tgt = shift(phi.target, k);
    std::vector<PolyMatrix<F>> comps;
    for (int m = src.shape.min_degree; !src.shape.is_zero() && m <= src.shape.top_degree(); ++m)
        comps.push_back(phi.comp_at(m + k));
    return DgMorphism<F, NH>{std::move(src), std::move(tgt), phi.degree, std::move(comps)};
}

// ---------------------------------------------------------------------------
// cones

/// cone(phi : E -> F) = F (+) E[1] with differential [[d_F, phi],[0, -d_E]]
/// and block-diagonal homotopies diag(h_F, -h_E), together with the canonical
/// triangle maps F -> cone and cone -> E[1].  The off-diagonal coupling sits
/// in d only; validity of the cone is equivalent to phi being an
/// h-equivariant chain map.
template <CoefficientField F, int NH>
struct ConeTriangle {
    KoszulModule<F, NH> cone;
    DgMorphism<F, NH> inclusion;   // F -> cone
    DgMorphism<F, NH> projection;  // cone -> E[1]
};

template <CoefficientField F, int NH>
ConeTriangle<F, NH> cone(const DgMorphism<F, NH>& phi) {
    if (phi.degree != 0 || !is_chain_map(phi))
        throw NotChainMap("cone requires a degree-0 h-equivariant chain map");
    const auto& E = phi.source;
    const auto& Fm = phi.target;
    const F& f = E.tower.field;

    auto e1 = shift(E, 1);
    int lo = std::min(Fm.shape.is_zero() ? e1.shape.min_degree : Fm.shape.min_degree,
                      e1.shape.is_zero() ? Fm.shape.min_degree : e1.shape.min_degree);
    int hi = std::max(Fm.shape.is_zero() ? e1.shape.min_degree - 1 : Fm.shape.top_degree(),
                      e1.shape.is_zero() ? Fm.shape.min_degree - 1 : e1.shape.top_degree());
    std::vector<size_t> ranks;
    for (int m = lo; m <= hi; ++m) ranks.push_back(Fm.rank(m) + E.rank(m + 1));
    GradedFree shape(lo, ranks);

    KoszulModule<F, NH> c{E.tower, shape, {}, {}};
    for (int m = lo; m < hi; ++m) {
        auto top = hstack(Fm.d_at(m), phi.comp_at(m + 1));
        auto bot = hstack(PolyMatrix<F>::zero(f, E.rank(m + 2), Fm.rank(m)), -E.d_at(m + 1));
        c.d.push_back(vstack(top, bot));
    }
    for (int i = 0; i < NH; ++i)
        for (int m = lo + 1; m <= hi; ++m)
            c.h[static_cast<size_t>(i)].push_back(block_diag(Fm.h_at(i, m), -E.h_at(i, m + 1)));

    // F -> cone: [id; 0] per degree
    std::vector<PolyMatrix<F>> incl;
    for (int m = Fm.shape.min_degree; !Fm.shape.is_zero() && m <= Fm.shape.top_degree(); ++m)
        incl.push_back(vstack(PolyMatrix<F>::identity(f, Fm.rank(m)), PolyMatrix<F>::zero(f, E.rank(m + 1), Fm.rank(m))));
    // cone -> E[1]: [0, id] per degree
    std::vector<PolyMatrix<F>> proj;
    for (int m = lo; !shape.is_zero() && m <= shape.top_degree(); ++m)
        proj.push_back(hstack(PolyMatrix<F>::zero(f, E.rank(m + 1), Fm.rank(m)), PolyMatrix<F>::identity(f, E.rank(m + 1))));

    return ConeTriangle<F, NH>{c, DgMorphism<F, NH>{Fm, c, 0, std::move(incl)},
                               DgMorphism<F, NH>{c, e1, 0, std::move(proj)}};
}

}  // namespace kmf

#endif
