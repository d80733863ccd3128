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

#ifndef KMF_GEN_HPP
#define KMF_GEN_HPP

#include <random>

#include "hom_complex.hpp"
#include "mf.hpp"

namespace kmf::gen {

/// Seeded generator.  All sampling goes through explicit modular reductions
/// of the raw 64-bit stream, so a fixed seed reproduces the same objects.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(uint64_t seed) : eng(seed) {}

    uint64_t next() { return eng(); }
    /// uniform in [0, n)
    size_t index(size_t n) { return n == 0 ? 0 : static_cast<size_t>(next() % n); }
    /// uniform in [lo, hi]
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
    bool flip() { return next() & 1; }
    Rng fork() { return Rng(next()); }
};

inline Rationals::Elem rand_elem(const Rationals& f, Rng& rng) {
    auto num = rng.range(-4, 4);
    auto den = rng.range(1, 3);
    return f.div(f.from_int(num), f.from_int(den));
}
inline PrimeField::Elem rand_elem(const PrimeField& f, Rng& rng) { return f.from_int(rng.range(0, f.p - 1)); }

template <CoefficientField F>
typename F::Elem rand_nonzero_elem(const F& f, Rng& rng) {
    for (;;) {
        auto e = rand_elem(f, rng);
        if (!f.is_zero(e)) return e;
    }
}

template <CoefficientField F>
Poly<F> rand_poly(const F& f, Rng& rng, int max_deg, bool allow_zero = true) {
    for (;;) {
        std::vector<typename F::Elem> c;
        int d = static_cast<int>(rng.range(0, max_deg));
        for (int i = 0; i <= d; ++i) c.push_back(rand_elem(f, rng));
        Poly<F> p(f, std::move(c));
        if (allow_zero || !p.is_zero()) return p;
    }
}

template <CoefficientField F>
PolyMatrix<F> rand_matrix(const F& f, Rng& rng, size_t rows, size_t cols, int max_deg) {
    PolyMatrix<F> out(f, rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) out.at(r, c) = rand_poly(f, rng, max_deg);
    return out;
}

/// A random unimodular matrix together with its inverse, accumulated from
/// elementary operations (shears, swaps, unit scalings).
template <CoefficientField F>
std::pair<PolyMatrix<F>, PolyMatrix<F>> rand_unimodular(const F& f, Rng& rng, size_t n, int ops = -1,
                                                        int max_deg = 2) {
    auto P = PolyMatrix<F>::identity(f, n);
    auto Pinv = PolyMatrix<F>::identity(f, n);
    if (n == 0) return {P, Pinv};
    if (ops < 0) ops = static_cast<int>(2 * n);
    for (int k = 0; k < ops; ++k) {
        switch (rng.index(3)) {
            case 0: {  // row_i += q * row_j on P; col_j -= q * col_i on Pinv
                size_t i = rng.index(n), j = rng.index(n);
                if (i == j) break;
                auto q = rand_poly(f, rng, max_deg);
                P.add_row_multiple(i, j, q);
                Pinv.add_col_multiple(j, i, -q);
                break;
            }
            case 1: {
                size_t i = rng.index(n), j = rng.index(n);
                P.swap_rows(i, j);
                Pinv.swap_cols(i, j);
                break;
            }
            default: {
                size_t i = rng.index(n);
                auto u = rand_nonzero_elem(f, rng);
                P.scale_row(i, u);
                for (size_t r = 0; r < n; ++r) Pinv.at(r, i) = Pinv.at(r, i).scaled(f.inv(u));
                break;
            }
        }
    }
    return {P, Pinv};
}

/// Random matrix factorization of pi_K = u*s^e of the given rank: conjugated
/// from a diagonal factorization diag(u_i s^{a_i}) * diag((u/u_i) s^{e-a_i}).
/// Exponents a_i are sampled from [0, e], so contractible and noncontractible
/// summands both occur.
template <CoefficientField F>
MatrixFactorization<F> rand_mf(const RingTower<F>& tower, Rng& rng, size_t rank, int bases_deg = 2) {
    const F& f = tower.field;
    auto [P, Pinv] = rand_unimodular(f, rng, rank, -1, bases_deg);
    auto [Q, Qinv] = rand_unimodular(f, rng, rank, -1, bases_deg);
    PolyMatrix<F> D0(f, rank, rank), D1(f, rank, rank);
    for (size_t i = 0; i < rank; ++i) {
        long a = rng.range(0, tower.e);
        auto ui = rand_nonzero_elem(f, rng);
        D0.at(i, i) = Poly<F>::monomial(f, ui, static_cast<int>(a));
        D1.at(i, i) = Poly<F>::monomial(f, f.div(tower.u, ui), static_cast<int>(tower.e - a));
    }
    return {tower, P * D0 * Q, Qinv * D1 * Pinv};
}

/// Change of basis by unimodular matrices T^m per degree; preserves every
/// defining identity.
template <CoefficientField F, int NH>
KoszulModule<F, NH> conjugate(const KoszulModule<F, NH>& m, Rng& rng, int bases_deg = 1) {
    if (m.shape.is_zero()) return m;
    const F& f = m.tower.field;
    int lo = m.shape.min_degree, hi = m.shape.top_degree();
    std::vector<PolyMatrix<F>> T, Tinv;
    for (int deg = lo; deg <= hi; ++deg) {
        auto [t, tinv] = rand_unimodular(f, rng, m.rank(deg), static_cast<int>(m.rank(deg)) + 1, bases_deg);
        T.push_back(t);
        Tinv.push_back(tinv);
    }
    auto t_at = [&](int deg) {
        if (deg < lo || deg > hi) return PolyMatrix<F>::identity(f, m.rank(deg));
        return T[static_cast<size_t>(deg - lo)];
    };
    auto tinv_at = [&](int deg) {
        if (deg < lo || deg > hi) return PolyMatrix<F>::identity(f, m.rank(deg));
        return Tinv[static_cast<size_t>(deg - lo)];
    };
    KoszulModule<F, NH> out = m;
    for (int deg = lo; deg < hi; ++deg)
        out.d[static_cast<size_t>(deg - lo)] = t_at(deg + 1) * m.d_at(deg) * tinv_at(deg);
    for (int i = 0; i < NH; ++i)
        for (int deg = lo + 1; deg <= hi; ++deg)
            out.h[static_cast<size_t>(i)][static_cast<size_t>(deg - 1 - lo)] =
                t_at(deg - 1) * m.h_at(i, deg) * tinv_at(deg);
    return out;
}

/// Random valid one-homotopy module spanning at most [min_degree,
/// min_degree + num_degrees): a direct sum of two-term folded blocks placed
/// at random degrees, mixed by a random change of basis.
template <CoefficientField F>
OneHomotopyModule<F> rand_one_module(const RingTower<F>& tower, Rng& rng, int num_degrees, size_t max_rank,
                                     int min_degree = 0, int bases_deg = 1) {
    auto out = OneHomotopyModule<F>::zero(tower);
    int blocks = std::max(1, num_degrees - 1);
    bool placed = false;
    for (int b = 0; b < blocks; ++b) {
        size_t r = rng.index(max_rank + 1);
        if (r == 0) continue;
        auto e = rand_mf(tower, rng, r, bases_deg);
        int at = min_degree + static_cast<int>(rng.index(static_cast<size_t>(std::max(1, num_degrees - 1))));
        auto block = make_one(tower, GradedFree(at, {e.rank0(), e.rank1()}), {e.d}, {e.h});
        out = direct_sum(out, block);
        placed = true;
    }
    if (!placed) {
        auto e = rand_mf(tower, rng, 1 + rng.index(max_rank), bases_deg);
        out = make_one(tower, GradedFree(min_degree, {e.rank0(), e.rank1()}), {e.d}, {e.h});
    }
    return conjugate(out, rng, bases_deg);
}

/// Random k[s]-combination of a basis of chain maps E -> F.
template <CoefficientField F, int NH>
DgMorphism<F, NH> rand_chain_map(const KoszulModule<F, NH>& e, const KoszulModule<F, NH>& t, Rng& rng,
                                 int coeff_deg = 1) {
    auto basis = chain_map_basis(e, t);
    auto out = zero_morphism(e, t, 0);
    for (const auto& b : basis) out = add(out, scale(b, rand_poly(e.tower.field, rng, coeff_deg)));
    return out;
}

/// Random valid two-homotopy module with at most 3 degrees.  Mixes four
/// structural sources: diagonal pushforwards (h1 = h2), pullbacks along a_i
/// (h1 != h2), direct sums of shifted diagonal blocks, and cones of chain
/// maps from a two-term block into a pullback (mixed h-structure).
template <CoefficientField F>
TwoHomotopyModule<F> rand_two_module(const RingTower<F>& tower, Rng& rng, size_t max_rank, int min_degree = 0,
                                     int bases_deg = 1) {
    const auto strategy = rng.index(4);
    TwoHomotopyModule<F> out = TwoHomotopyModule<F>::zero(tower);
    if (strategy == 0) {
        out = diagonal_pushforward(rand_one_module(tower, rng, 3, max_rank, min_degree, bases_deg));
    } else if (strategy == 1) {
        auto n = rand_one_module(tower, rng, 2, max_rank, min_degree, bases_deg);
        out = pullback_a(rng.flip() ? 1 : 2, n);
    } else if (strategy == 2) {
        auto a = rand_mf(tower, rng, 1 + rng.index(max_rank), bases_deg);
        auto b = rand_mf(tower, rng, 1 + rng.index(max_rank), bases_deg);
        auto left = make_two(tower, GradedFree(min_degree, {a.rank0(), a.rank1()}), {a.d}, {a.h}, {a.h});
        auto right = make_two(tower, GradedFree(min_degree + 1, {b.rank0(), b.rank1()}), {b.d}, {b.h}, {b.h});
        out = direct_sum(left, right);
    } else {
        // cone of a chain map from a two-term block in [m+1, m+2] into a
        // pullback spanning [m, m+2]: stays within three degrees
        size_t small = std::max<size_t>(1, max_rank / 2);
        auto a = rand_mf(tower, rng, 1 + rng.index(small), bases_deg);
        auto src = make_two(tower, GradedFree(min_degree + 1, {a.rank0(), a.rank1()}), {a.d}, {a.h}, {a.h});
        auto tgt = pullback_a(rng.flip() ? 1 : 2, rand_one_module(tower, rng, 2, small, min_degree + 1, bases_deg));
        auto phi = rand_chain_map(src, tgt, rng);
        out = cone(phi).cone;
    }
    return conjugate(out, rng, bases_deg);
}

/// Random valid two-term two-homotopy module: a random factorization gives
/// (d, h1); h2 is an arbitrary solution of d h2 = h2 d = pi_K * id picked at
/// random from the full solution set of the linear system.  (That the
/// solution is unique, forcing h2 = h1, is a theorem the tests check, not an
/// assumption the generator makes.)
template <CoefficientField F>
TwoHomotopyModule<F> rand_two_term_two_module(const RingTower<F>& tower, Rng& rng, size_t max_rank,
                                              int min_degree = 0, int bases_deg = 2) {
    const F& f = tower.field;
    size_t r = 1 + rng.index(max_rank);
    auto e = rand_mf(tower, rng, r, bases_deg);
    // d h2 = pi id and h2 d = pi id, linear in h2
    auto constraints = vstack(kron(PolyMatrix<F>::identity(f, r), e.d),      // vec(d h2)... rows for h2 d?
                              kron(e.d.transpose(), PolyMatrix<F>::identity(f, r)));
    auto rhs = vstack(vec(tower.pi_id(r)), vec(tower.pi_id(r)));
    auto particular = solve_linear(constraints, rhs);
    if (!particular) throw StructuralViolation("factorization admits no second homotopy at all");
    auto null = kernel_basis(constraints);
    auto coords = *particular;
    for (size_t c = 0; c < null.cols(); ++c) {
        auto w = rand_poly(f, rng, 2);
        for (size_t i = 0; i < coords.rows(); ++i) coords.at(i, 0) = coords.at(i, 0) + null.at(i, c) * w;
    }
    auto h2 = unvec(coords, r, r, 0);
    return make_two(tower, GradedFree(min_degree, {r, r}), {e.d}, {e.h}, {h2});
}

}  // namespace kmf::gen

#endif
