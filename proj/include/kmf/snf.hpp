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

#ifndef KMF_SNF_HPP
#define KMF_SNF_HPP

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace kmf {

/// Cooperative cancellation handle.  Long normal-form runs poll it and bail
/// out with OperationCancelled when the flag is raised from another thread.
struct CancelToken {
    std::atomic<bool> cancelled{false};

    void cancel() { cancelled.store(true, std::memory_order_relaxed); }
    bool is_cancelled() const { return cancelled.load(std::memory_order_relaxed); }
};

/// Smith normal form U*A*V = D over k[s]: U, V unimodular (unit determinant),
/// D diagonal with monic entries forming a divisibility chain d_i | d_{i+1}.
/// D is unique under the monicity convention; U and V are not and are not
/// part of any contract.
template <CoefficientField F>
struct SnfResult {
    PolyMatrix<F> U, D, V;
    size_t rank;
};

/// Finitely generated k[s]-module in invariant-factor normal form:
/// k[s]^free_rank (+) k[s]/(f_1) (+) ... with monic nonconstant f_i, f_i | f_{i+1}.
template <CoefficientField F>
struct FgModulePresentation {
    size_t free_rank = 0;
    std::vector<Poly<F>> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool is_torsion() const { return free_rank == 0; }
    /// Length over k (only defined for torsion modules): sum of factor degrees.
    size_t length() const {
        if (free_rank != 0) throw StructuralViolation("length of a module with free part");
        size_t n = 0;
        for (const auto& f : torsion) n += static_cast<size_t>(f.deg());
        return n;
    }
    friend bool operator==(const FgModulePresentation& a, const FgModulePresentation& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        if (free_rank) out += "k[s]^" + std::to_string(free_rank);
        for (const auto& f : torsion) out += std::string(out.empty() ? "" : " + ") + "k[s]/(" + f.to_string() + ")";
        return out;
    }
};

namespace detail {

// Scale a row (resp. column) by the unit that makes its coefficients
// primitive integers, mirroring the operation into U (resp. V).  Unit
// scalings keep the transforms unimodular while taming coefficient growth
// over Q; over F_p this is a no-op.
template <CoefficientField F>
void normalize_row(PolyMatrix<F>& d, PolyMatrix<F>& u, size_t i) {
    std::vector<typename F::Elem> cs;
    for (size_t c = 0; c < d.cols(); ++c)
        for (const auto& e : d.at(i, c).coeffs()) cs.push_back(e);
    auto lam = d.field().content_unit(cs.begin(), cs.end());
    if (!(lam == d.field().one())) {
        d.scale_row(i, lam);
        u.scale_row(i, lam);
    }
}

template <CoefficientField F>
void normalize_col(PolyMatrix<F>& d, PolyMatrix<F>& v, size_t j) {
    std::vector<typename F::Elem> cs;
    for (size_t r = 0; r < d.rows(); ++r)
        for (const auto& e : d.at(r, j).coeffs()) cs.push_back(e);
    auto lam = d.field().content_unit(cs.begin(), cs.end());
    if (!(lam == d.field().one())) {
        d.scale_col(j, lam);
        v.scale_col(j, lam);
    }
}

// Pivot choice: minimal degree, ties broken by smallest row then column
// index.  Bounds coefficient growth over Q.
template <CoefficientField F>
std::optional<std::pair<size_t, size_t>> find_pivot(const PolyMatrix<F>& d, size_t t) {
    std::optional<std::pair<size_t, size_t>> best;
    int best_deg = 0;
    for (size_t i = t; i < d.rows(); ++i)
        for (size_t j = t; j < d.cols(); ++j) {
            const auto& p = d.at(i, j);
            if (p.is_zero()) continue;
            if (!best || p.deg() < best_deg) {
                best = {{i, j}};
                best_deg = p.deg();
            }
        }
    return best;
}

}  // namespace detail

template <CoefficientField F>
SnfResult<F> smith_normal_form(const PolyMatrix<F>& a, const CancelToken* cancel = nullptr) {
    const F& f = a.field();
    size_t m = a.rows(), n = a.cols();
    SnfResult<F> res{PolyMatrix<F>::identity(f, m), a, PolyMatrix<F>::identity(f, n), 0};
    PolyMatrix<F>&U = res.U, &D = res.D, &V = res.V;
    for (size_t i = 0; i < m; ++i) detail::normalize_row(D, U, i);

    size_t t = 0;
    while (t < m && t < n) {
        if (cancel && cancel->is_cancelled()) throw OperationCancelled();
        auto piv = detail::find_pivot(D, t);
        if (!piv) break;
        D.swap_rows(t, piv->first);
        U.swap_rows(t, piv->first);
        D.swap_cols(t, piv->second);
        V.swap_cols(t, piv->second);

        bool settled = false;
        while (!settled) {
            if (cancel && cancel->is_cancelled()) throw OperationCancelled();
            settled = true;
            // a monic pivot keeps every division quotient denominator-free
            if (!D.at(t, t).is_monic()) {
                auto u = f.inv(D.at(t, t).lead());
                D.scale_row(t, u);
                U.scale_row(t, u);
            }
            // clear the pivot column
            for (size_t i = t + 1; i < m; ++i) {
                if (D.at(i, t).is_zero()) continue;
                auto [q, r] = divmod(D.at(i, t), D.at(t, t));
                D.add_row_multiple(i, t, -q);
                U.add_row_multiple(i, t, -q);
                detail::normalize_row(D, U, i);
                if (!r.is_zero()) {
                    // remainder has strictly smaller degree: promote it
                    D.swap_rows(t, i);
                    U.swap_rows(t, i);
                    settled = false;
                    break;
                }
            }
            if (!settled) continue;
            // clear the pivot row
            for (size_t j = t + 1; j < n; ++j) {
                if (D.at(t, j).is_zero()) continue;
                auto [q, r] = divmod(D.at(t, j), D.at(t, t));
                D.add_col_multiple(j, t, -q);
                V.add_col_multiple(j, t, -q);
                detail::normalize_col(D, V, j);
                if (!r.is_zero()) {
                    D.swap_cols(t, j);
                    V.swap_cols(t, j);
                    settled = false;
                    break;  // column ops may have disturbed the pivot column
                }
            }
            if (!settled) continue;
            // enforce divisibility of the trailing block by the pivot
            for (size_t i = t + 1; i < m && settled; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (!divides(D.at(t, t), D.at(i, j))) {
                        D.add_row_multiple(t, i, Poly<F>::one(f));
                        U.add_row_multiple(t, i, Poly<F>::one(f));
                        settled = false;
                        break;
                    }
        }
        ++t;
    }
    res.rank = t;
    return res;
}

/// Columns form a free basis of ker(A); count = cols(A) - rank(A).
/// Each column is reduced by its polynomial and scalar content (the kernel
/// is saturated, so content-free vectors still form a basis); this keeps
/// downstream computations on kernel coordinates small.
template <CoefficientField F>
PolyMatrix<F> kernel_basis(const PolyMatrix<F>& a, const CancelToken* cancel = nullptr) {
    const F& f = a.field();
    auto snf = smith_normal_form(a, cancel);
    size_t n = a.cols();
    PolyMatrix<F> out(f, n, n - snf.rank);
    for (size_t j = snf.rank; j < n; ++j)
        for (size_t i = 0; i < n; ++i) out.at(i, j - snf.rank) = snf.V.at(i, j);
    for (size_t j = 0; j < out.cols(); ++j) {
        Poly<F> g(f);
        for (size_t i = 0; i < n && g.deg() != 0; ++i) g = gcd(g, out.at(i, j));
        if (g.deg() > 0)
            for (size_t i = 0; i < n; ++i) out.at(i, j) = *exact_div(out.at(i, j), g);
        std::vector<typename F::Elem> cs;
        for (size_t i = 0; i < n; ++i)
            for (const auto& e : out.at(i, j).coeffs()) cs.push_back(e);
        auto lam = f.content_unit(cs.begin(), cs.end());
        if (!(lam == f.one())) out.scale_col(j, lam);
    }
    return out;
}

/// Solves A*X = B exactly over k[s]; nullopt when no solution exists.
/// Solvability is decided by the SNF certificate: with U*A*V = D the system
/// reads D*Y = U*B, which is solvable iff each row is divisible (or zero).
template <CoefficientField F>
std::optional<PolyMatrix<F>> solve_linear(const PolyMatrix<F>& a, const PolyMatrix<F>& b,
                                          const CancelToken* cancel = nullptr) {
    if (a.rows() != b.rows())
        throw DimMismatch("solve_linear " + a.dim_string() + " vs rhs " + b.dim_string());
    auto snf = smith_normal_form(a, cancel);
    PolyMatrix<F> c = snf.U * b;
    PolyMatrix<F> y(a.field(), a.cols(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) {
            if (i < snf.rank) {
                auto q = exact_div(c.at(i, j), snf.D.at(i, i));
                if (!q) return std::nullopt;
                y.at(i, j) = *q;
            } else if (!c.at(i, j).is_zero()) {
                return std::nullopt;
            }
        }
    return snf.V * y;
}

/// Rank of A (via SNF).
template <CoefficientField F>
size_t rank(const PolyMatrix<F>& a, const CancelToken* cancel = nullptr) {
    return smith_normal_form(a, cancel).rank;
}

/// Invariant-factor presentation of coker(A) = k[s]^rows / im(A).
/// Constant (unit) factors are dropped.
template <CoefficientField F>
FgModulePresentation<F> cokernel_presentation(const PolyMatrix<F>& a, const CancelToken* cancel = nullptr) {
    auto snf = smith_normal_form(a, cancel);
    FgModulePresentation<F> out;
    out.free_rank = a.rows() - snf.rank;
    for (size_t i = 0; i < snf.rank; ++i)
        if (snf.D.at(i, i).deg() > 0) out.torsion.push_back(snf.D.at(i, i));
    return out;
}

/// Presents the subquotient span(K)/span(S) where the columns of S lie in the
/// span of the columns of K and K has full column rank (a free basis).
template <CoefficientField F>
FgModulePresentation<F> subquotient_presentation(const PolyMatrix<F>& k_basis, const PolyMatrix<F>& s,
                                                 const CancelToken* cancel = nullptr) {
    auto coords = solve_linear(k_basis, s, cancel);
    if (!coords)
        throw StructuralViolation("subquotient: relations do not lie in the span of the basis");
    return cokernel_presentation(*coords, cancel);
}

/// Inverse of a unimodular matrix.  Throws when A is not unimodular.
template <CoefficientField F>
PolyMatrix<F> unimodular_inverse(const PolyMatrix<F>& a) {
    if (a.rows() != a.cols()) throw DimMismatch("inverse of non-square " + a.dim_string());
    auto snf = smith_normal_form(a);
    if (!snf.D.is_identity()) throw InvalidObject("matrix is not unimodular: " + a.dim_string());
    return snf.V * snf.U;  // A = U^-1 V^-1, so A^-1 = V U
}

}  // namespace kmf

#endif
