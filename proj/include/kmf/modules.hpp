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

#ifndef KMF_MODULES_HPP
#define KMF_MODULES_HPP

#include <array>
#include <string>
#include <vector>

#include "snf.hpp"
#include "tower.hpp"

namespace kmf {

/// Shape of a strictly bounded complex of free modules: the rank in degree
/// min_degree + i is ranks[i].  Canonical form trims zero ranks at both ends;
/// the zero object is the empty sequence.
struct GradedFree {
    int min_degree = 0;
    std::vector<size_t> ranks;

    GradedFree() = default;
    GradedFree(int min_deg, std::vector<size_t> r) : min_degree(min_deg), ranks(std::move(r)) { normalize(); }

    void normalize() {
        while (!ranks.empty() && ranks.back() == 0) ranks.pop_back();
        while (!ranks.empty() && ranks.front() == 0) {
            ranks.erase(ranks.begin());
            ++min_degree;
        }
        if (ranks.empty()) min_degree = 0;
    }

    bool is_zero() const { return ranks.empty(); }
    size_t num_degrees() const { return ranks.size(); }
    int top_degree() const { return min_degree + static_cast<int>(ranks.size()) - 1; }
    size_t rank(int m) const {
        if (m < min_degree || m > top_degree()) return 0;
        return ranks[static_cast<size_t>(m - min_degree)];
    }
    size_t total_rank() const {
        size_t n = 0;
        for (auto r : ranks) n += r;
        return n;
    }

    friend bool operator==(const GradedFree& a, const GradedFree& b) {
        return a.min_degree == b.min_degree && a.ranks == b.ranks;
    }
    friend bool operator!=(const GradedFree& a, const GradedFree& b) { return !(a == b); }
};

/// A dg module over the Koszul algebra with NH degree -1 generators: a
/// strictly perfect complex (shape, d) together with NH odd endomorphisms
/// h_i of degree -1 subject to
///   d o d = 0,   h_i o h_i = 0,   h_i h_j + h_j h_i = 0 (i != j),
///   d o h_i + h_i o d = pi_K * id   in every degree.
/// NH = 1 models Coh^s(O_L, pi_K), NH = 2 models Coh^s(O_L, (pi_K, pi_K)).
///
/// Differentials are stored as d[i]: degree (min+i) -> (min+i+1) and
/// homotopies as h[k][i]: degree (min+i+1) -> (min+i); use d_at / h_at for
/// out-of-range degrees, which return the appropriate empty matrices.
template <CoefficientField F, int NH>
struct KoszulModule {
    static_assert(NH == 1 || NH == 2);
    using Mat = PolyMatrix<F>;

    RingTower<F> tower;
    GradedFree shape;
    std::vector<Mat> d;
    std::array<std::vector<Mat>, NH> h;

    static KoszulModule zero(const RingTower<F>& tower) {
        KoszulModule m{tower, GradedFree{}, {}, {}};
        return m;
    }

    size_t rank(int m) const { return shape.rank(m); }

    Mat d_at(int m) const {
        int i = m - shape.min_degree;
        if (i >= 0 && i + 1 < static_cast<int>(shape.ranks.size())) return d[static_cast<size_t>(i)];
        return Mat::zero(tower.field, shape.rank(m + 1), shape.rank(m));
    }
    Mat h_at(int k, int m) const {
        int i = m - shape.min_degree - 1;
        if (i >= 0 && i + 1 < static_cast<int>(shape.ranks.size())) return h[static_cast<size_t>(k)][static_cast<size_t>(i)];
        return Mat::zero(tower.field, shape.rank(m - 1), shape.rank(m));
    }
    /// the single homotopy of a one-homotopy module
    Mat h_at(int m) const
        requires(NH == 1)
    {
        return h_at(0, m);
    }

    friend bool operator==(const KoszulModule& a, const KoszulModule& b) {
        return a.tower == b.tower && a.shape == b.shape && a.d == b.d && a.h == b.h;
    }
    friend bool operator!=(const KoszulModule& a, const KoszulModule& b) { return !(a == b); }
};

template <CoefficientField F>
using OneHomotopyModule = KoszulModule<F, 1>;
template <CoefficientField F>
using TwoHomotopyModule = KoszulModule<F, 2>;

/// Builds a module after checking that all matrix dimensions fit the shape.
template <CoefficientField F, int NH>
KoszulModule<F, NH> make_module(const RingTower<F>& tower, GradedFree shape, std::vector<PolyMatrix<F>> d,
                                std::array<std::vector<PolyMatrix<F>>, NH> h) {
    shape.normalize();
    size_t nmaps = shape.ranks.empty() ? 0 : shape.ranks.size() - 1;
    if (d.size() != nmaps) throw DimMismatch("expected " + std::to_string(nmaps) + " differentials");
    for (int k = 0; k < NH; ++k)
        if (h[static_cast<size_t>(k)].size() != nmaps)
            throw DimMismatch("expected " + std::to_string(nmaps) + " homotopy components");
    for (size_t i = 0; i < nmaps; ++i) {
        if (d[i].rows() != shape.ranks[i + 1] || d[i].cols() != shape.ranks[i])
            throw DimMismatch("differential " + std::to_string(i) + " has shape " + d[i].dim_string());
        for (int k = 0; k < NH; ++k) {
            const auto& hk = h[static_cast<size_t>(k)][i];
            if (hk.rows() != shape.ranks[i] || hk.cols() != shape.ranks[i + 1])
                throw DimMismatch("homotopy " + std::to_string(i) + " has shape " + hk.dim_string());
        }
    }
    return KoszulModule<F, NH>{tower, std::move(shape), std::move(d), std::move(h)};
}

template <CoefficientField F>
OneHomotopyModule<F> make_one(const RingTower<F>& tower, GradedFree shape, std::vector<PolyMatrix<F>> d,
                              std::vector<PolyMatrix<F>> h) {
    return make_module<F, 1>(tower, std::move(shape), std::move(d), {std::move(h)});
}

template <CoefficientField F>
TwoHomotopyModule<F> make_two(const RingTower<F>& tower, GradedFree shape, std::vector<PolyMatrix<F>> d,
                              std::vector<PolyMatrix<F>> h1, std::vector<PolyMatrix<F>> h2) {
    return make_module<F, 2>(tower, std::move(shape), std::move(d), {std::move(h1), std::move(h2)});
}

// ---------------------------------------------------------------------------
// validation

/// One failed identity: which rule, at which degree, and the residual matrix
/// that should have been zero.
template <CoefficientField F>
struct Violation {
    std::string rule;
    int degree;
    PolyMatrix<F> residual;

    std::string to_string() const {
        return rule + " fails in degree " + std::to_string(degree) + ": residual " + residual.to_string();
    }
};

template <CoefficientField F>
struct ValidationReport {
    std::vector<Violation<F>> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const {
        if (ok()) return "valid";
        std::string out;
        for (const auto& v : violations) out += v.to_string() + "\n";
        return out;
    }
};

/// Checks every defining identity degree by degree and reports all failures.
/// Diagnostics, not exceptions: an empty report means the object is valid.
template <CoefficientField F, int NH>
ValidationReport<F> validate(const KoszulModule<F, NH>& m) {
    ValidationReport<F> rep;
    auto expect_zero = [&](PolyMatrix<F> r, const std::string& rule, int degree) {
        if (!r.is_zero()) rep.violations.push_back({rule, degree, std::move(r)});
    };
    const int lo = m.shape.min_degree, hi = m.shape.is_zero() ? m.shape.min_degree - 1 : m.shape.top_degree();
    for (int deg = lo; deg <= hi; ++deg) {
        expect_zero(m.d_at(deg + 1) * m.d_at(deg), "d o d = 0", deg);
        for (int i = 0; i < NH; ++i) {
            std::string hi_name = NH == 1 ? std::string("h") : "h" + std::to_string(i + 1);
            expect_zero(m.h_at(i, deg) * m.h_at(i, deg + 1), hi_name + " o " + hi_name + " = 0", deg + 1);
            expect_zero(m.d_at(deg - 1) * m.h_at(i, deg) + m.h_at(i, deg + 1) * m.d_at(deg) - m.tower.pi_id(m.rank(deg)),
                        "[d," + hi_name + "] = pi_K * id", deg);
        }
        if (NH == 2)
            expect_zero(m.h_at(0, deg) * m.h_at(1, deg + 1) + m.h_at(1, deg) * m.h_at(0, deg + 1),
                        "[h1,h2] = 0", deg + 1);
    }
    return rep;
}

template <CoefficientField F, int NH>
bool is_valid(const KoszulModule<F, NH>& m) {
    return validate(m).ok();
}

// ---------------------------------------------------------------------------
// shift, direct sum, cohomology

/// E[k] places E^n in degree n-k; d and h pick up the sign (-1)^k.
template <CoefficientField F, int NH>
KoszulModule<F, NH> shift(const KoszulModule<F, NH>& m, int k) {
    KoszulModule<F, NH> out = m;
    out.shape.min_degree -= k;
    out.shape.normalize();
    if (k % 2 != 0) {
        for (auto& mat : out.d) mat = -mat;
        for (auto& hs : out.h)
            for (auto& mat : hs) mat = -mat;
    }
    return out;
}

template <CoefficientField F, int NH>
KoszulModule<F, NH> direct_sum(const KoszulModule<F, NH>& a, const KoszulModule<F, NH>& b) {
    require_same_tower(a.tower, b.tower, "direct_sum");
    if (a.shape.is_zero()) return b;
    if (b.shape.is_zero()) return a;
    int lo = std::min(a.shape.min_degree, b.shape.min_degree);
    int hi = std::max(a.shape.top_degree(), b.shape.top_degree());
    GradedFree shape(lo, [&] {
        std::vector<size_t> r;
        for (int m = lo; m <= hi; ++m) r.push_back(a.rank(m) + b.rank(m));
        return r;
    }());
    KoszulModule<F, NH> out{a.tower, shape, {}, {}};
    for (int m = lo; m < hi; ++m) out.d.push_back(block_diag(a.d_at(m), b.d_at(m)));
    for (int i = 0; i < NH; ++i)
        for (int m = lo + 1; m <= hi; ++m)
            out.h[static_cast<size_t>(i)].push_back(block_diag(a.h_at(i, m), b.h_at(i, m)));
    return out;
}

/// Per-degree invariant-factor presentations; only finitely many nonzero.
template <CoefficientField F>
struct CohomologyTable {
    int min_degree = 0;
    std::vector<FgModulePresentation<F>> groups;

    FgModulePresentation<F> at(int m) const {
        int i = m - min_degree;
        if (i < 0 || i >= static_cast<int>(groups.size())) return {};
        return groups[static_cast<size_t>(i)];
    }
    bool is_zero() const {
        for (const auto& g : groups)
            if (!g.is_zero()) return false;
        return true;
    }
    void normalize() {
        while (!groups.empty() && groups.back().is_zero()) groups.pop_back();
        while (!groups.empty() && groups.front().is_zero()) {
            groups.erase(groups.begin());
            ++min_degree;
        }
        if (groups.empty()) min_degree = 0;
    }
    friend bool operator==(const CohomologyTable& a, const CohomologyTable& b) {
        return a.min_degree == b.min_degree && a.groups == b.groups;
    }
    std::string to_string() const {
        if (groups.empty()) return "0";
        std::string out;
        for (size_t i = 0; i < groups.size(); ++i)
            out += "H^" + std::to_string(min_degree + static_cast<int>(i)) + " = " + groups[i].to_string() + "\n";
        return out;
    }
};

/// H^n = ker(d^n) / im(d^{n-1}) in invariant-factor form; the h-structure is
/// ignored.  Computed degreewise from SNF data.
template <CoefficientField F, int NH>
CohomologyTable<F> cohomology(const KoszulModule<F, NH>& m, const CancelToken* cancel = nullptr) {
    CohomologyTable<F> out;
    out.min_degree = m.shape.min_degree;
    for (int deg = m.shape.min_degree; !m.shape.is_zero() && deg <= m.shape.top_degree(); ++deg) {
        auto ker = kernel_basis(m.d_at(deg), cancel);
        out.groups.push_back(subquotient_presentation(ker, m.d_at(deg - 1), cancel));
    }
    out.normalize();
    return out;
}

}  // namespace kmf

#endif
