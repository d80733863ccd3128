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

#ifndef KMF_MATRIX_HPP
#define KMF_MATRIX_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace kmf {

/// Dense matrix over k[s], row-major.  Zero-dimensional matrices are legal
/// and behave as zero objects under composition.
template <CoefficientField F>
class PolyMatrix {
   public:
    using P = Poly<F>;

    PolyMatrix(const F& field, size_t rows, size_t cols)
        : field_(field), rows_(rows), cols_(cols), e_(rows * cols, P(field)) {}

    static PolyMatrix zero(const F& field, size_t rows, size_t cols) { return PolyMatrix(field, rows, cols); }
    static PolyMatrix identity(const F& field, size_t n) {
        PolyMatrix m(field, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = P::one(field);
        return m;
    }
    /// f * identity
    static PolyMatrix scalar(const F& field, size_t n, const P& f) {
        PolyMatrix m(field, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = f;
        return m;
    }

    const F& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    P& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const P& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& p : e_)
            if (!p.is_zero()) return false;
        return true;
    }
    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!(i == j ? at(i, j).is_one() : at(i, j).is_zero())) return false;
        return true;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        require_same_field(a.field_, b.field_, "matrix mul");
        if (a.cols_ != b.rows_)
            throw DimMismatch("matrix product " + a.dim_string() + " * " + b.dim_string());
        PolyMatrix out(a.field_, a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const P& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    out.at(i, j) = out.at(i, j) + aik * b.at(k, j);
                }
            }
        return out;
    }
    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
        require_same_field(a.field_, b.field_, "matrix add");
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimMismatch("matrix sum " + a.dim_string() + " + " + b.dim_string());
        PolyMatrix out(a.field_, a.rows_, a.cols_);
        for (size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = a.e_[i] + b.e_[i];
        return out;
    }
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return a + (-b); }
    PolyMatrix operator-() const {
        PolyMatrix out(field_, rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = -e_[i];
        return out;
    }
    PolyMatrix scaled(const P& f) const {
        PolyMatrix out(field_, rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] * f;
        return out;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    PolyMatrix transpose() const {
        PolyMatrix out(field_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    PolyMatrix submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const {
        PolyMatrix out(field_, nr, nc);
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j) out.at(i, j) = at(r0 + i, c0 + j);
        return out;
    }
    PolyMatrix col(size_t j) const { return submatrix(0, j, rows_, 1); }

    /// Entrywise image under a ring map k[s] -> k[s] (e.g. substitution).
    PolyMatrix map_entries(const std::function<P(const P&)>& fn) const {
        PolyMatrix out(field_, rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = fn(e_[i]);
        return out;
    }

    void swap_rows(size_t i, size_t j) {
        if (i == j) return;
        for (size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }
    void swap_cols(size_t i, size_t j) {
        if (i == j) return;
        for (size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
    }
    /// row_i += f * row_j
    void add_row_multiple(size_t i, size_t j, const P& f) {
        for (size_t c = 0; c < cols_; ++c) at(i, c) = at(i, c) + f * at(j, c);
    }
    /// col_i += f * col_j
    void add_col_multiple(size_t i, size_t j, const P& f) {
        for (size_t r = 0; r < rows_; ++r) at(r, i) = at(r, i) + f * at(r, j);
    }
    void scale_row(size_t i, const typename F::Elem& u) {
        for (size_t c = 0; c < cols_; ++c) at(i, c) = at(i, c).scaled(u);
    }
    void scale_col(size_t j, const typename F::Elem& u) {
        for (size_t r = 0; r < rows_; ++r) at(r, j) = at(r, j).scaled(u);
    }

    std::string dim_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::string to_string(const std::string& var = "s") const {
        std::string out = "[";
        for (size_t i = 0; i < rows_; ++i) {
            out += i ? "; " : "";
            for (size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + at(i, j).to_string(var);
        }
        return out + "]";
    }

   private:
    F field_;
    size_t rows_, cols_;
    std::vector<P> e_;
};

/// [A | B]
template <CoefficientField F>
PolyMatrix<F> hstack(const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
    if (a.rows() != b.rows()) throw DimMismatch("hstack " + a.dim_string() + " | " + b.dim_string());
    PolyMatrix<F> out(a.field(), a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
    }
    return out;
}

/// [A; B]
template <CoefficientField F>
PolyMatrix<F> vstack(const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
    if (a.cols() != b.cols()) throw DimMismatch("vstack " + a.dim_string() + " ; " + b.dim_string());
    PolyMatrix<F> out(a.field(), a.rows() + b.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, j) = b.at(i, j);
    return out;
}

/// Assembles a matrix from a rectangular grid of blocks.  Row heights and
/// column widths are inferred from the blocks, which must be consistent.
template <CoefficientField F>
PolyMatrix<F> from_blocks(const F& field, const std::vector<std::vector<PolyMatrix<F>>>& blocks) {
    if (blocks.empty()) return PolyMatrix<F>(field, 0, 0);
    size_t brows = blocks.size(), bcols = blocks[0].size();
    std::vector<size_t> heights(brows, 0), widths(bcols, 0);
    for (size_t i = 0; i < brows; ++i) {
        if (blocks[i].size() != bcols) throw DimMismatch("ragged block grid");
        for (size_t j = 0; j < bcols; ++j) {
            heights[i] = std::max(heights[i], blocks[i][j].rows());
            widths[j] = std::max(widths[j], blocks[i][j].cols());
        }
    }
    for (size_t i = 0; i < brows; ++i)
        for (size_t j = 0; j < bcols; ++j)
            if (blocks[i][j].rows() != heights[i] || blocks[i][j].cols() != widths[j])
                throw DimMismatch("inconsistent block dimensions at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    size_t total_r = 0, total_c = 0;
    for (auto h : heights) total_r += h;
    for (auto w : widths) total_c += w;
    PolyMatrix<F> out(field, total_r, total_c);
    size_t r0 = 0;
    for (size_t i = 0; i < brows; ++i) {
        size_t c0 = 0;
        for (size_t j = 0; j < bcols; ++j) {
            for (size_t r = 0; r < heights[i]; ++r)
                for (size_t c = 0; c < widths[j]; ++c) out.at(r0 + r, c0 + c) = blocks[i][j].at(r, c);
            c0 += widths[j];
        }
        r0 += heights[i];
    }
    return out;
}

/// diag(A, B)
template <CoefficientField F>
PolyMatrix<F> block_diag(const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
    const F& f = a.field();
    return from_blocks(f, {{a, PolyMatrix<F>::zero(f, a.rows(), b.cols())},
                           {PolyMatrix<F>::zero(f, b.rows(), a.cols()), b}});
}

/// Kronecker product; (A (x) B)(ia*rB+ib, ja*cB+jb) = A(ia,ja)*B(ib,jb).
/// With column-major vec this satisfies vec(A X B) = (B^T (x) A) vec(X).
template <CoefficientField F>
PolyMatrix<F> kron(const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
    PolyMatrix<F> out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ia = 0; ia < a.rows(); ++ia)
        for (size_t ja = 0; ja < a.cols(); ++ja) {
            if (a.at(ia, ja).is_zero()) continue;
            for (size_t ib = 0; ib < b.rows(); ++ib)
                for (size_t jb = 0; jb < b.cols(); ++jb)
                    out.at(ia * b.rows() + ib, ja * b.cols() + jb) = a.at(ia, ja) * b.at(ib, jb);
        }
    return out;
}

/// Column-major vectorization, rows*cols x 1.
template <CoefficientField F>
PolyMatrix<F> vec(const PolyMatrix<F>& a) {
    PolyMatrix<F> out(a.field(), a.rows() * a.cols(), 1);
    for (size_t j = 0; j < a.cols(); ++j)
        for (size_t i = 0; i < a.rows(); ++i) out.at(j * a.rows() + i, 0) = a.at(i, j);
    return out;
}

template <CoefficientField F>
PolyMatrix<F> unvec(const PolyMatrix<F>& v, size_t rows, size_t cols, size_t offset = 0) {
    PolyMatrix<F> out(v.field(), rows, cols);
    for (size_t j = 0; j < cols; ++j)
        for (size_t i = 0; i < rows; ++i) out.at(i, j) = v.at(offset + j * rows + i, 0);
    return out;
}

/// Determinant by Laplace expansion.  Exponential; intended for the small
/// unimodularity checks in tests and generators (n <= 6 or so).
template <CoefficientField F>
Poly<F> det(const PolyMatrix<F>& a) {
    if (a.rows() != a.cols()) throw DimMismatch("det of non-square " + a.dim_string());
    size_t n = a.rows();
    if (n == 0) return Poly<F>::one(a.field());
    if (n == 1) return a.at(0, 0);
    Poly<F> acc(a.field());
    for (size_t j = 0; j < n; ++j) {
        if (a.at(0, j).is_zero()) continue;
        PolyMatrix<F> minor(a.field(), n - 1, n - 1);
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = a.at(r, c);
            }
        }
        Poly<F> term = a.at(0, j) * det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace kmf

#endif
