/*
   Copyright 2026 The dvrnc authors

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

#ifndef DVRNC_MATRIX_HPP
#define DVRNC_MATRIX_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace dvrnc {

/**
 * Dense matrix over one discrete valuation ring. Entries are exact; there is
 * no pivot threshold anywhere because arithmetic never rounds. Coding-vector
 * matrices follow the omega x |In(v)| orientation: coding vectors are
 * columns.
 */
class Matrix {
   public:
    Matrix(RingSpec spec, std::size_t rows, std::size_t cols, std::vector<RingElement> entries)
        : spec_(spec), rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (rows_ == 0 || cols_ == 0) throw RingMismatchError("matrix dimensions must be positive");
        if (e_.size() != rows_ * cols_)
            throw RingMismatchError("entry count does not match matrix dimensions");
        for (const RingElement& x : e_)
            if (x.spec() != spec_) throw RingMismatchError("matrix entries over mixed rings");
    }

    static Matrix zero(RingSpec spec, std::size_t rows, std::size_t cols) {
        return Matrix(spec, rows, cols,
                      std::vector<RingElement>(rows * cols, RingElement::zero(spec)));
    }

    static Matrix identity(RingSpec spec, std::size_t n) {
        Matrix m = zero(spec, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RingElement::one(spec);
        return m;
    }

    const RingSpec& spec() const { return spec_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    RingElement& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const RingElement& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.spec_ != b.spec_) throw RingMismatchError("matrix product over different rings");
        if (a.cols_ != b.rows_)
            throw RingMismatchError("inner dimensions disagree: " + std::to_string(a.cols_) +
                                    " vs " + std::to_string(b.rows_));
        Matrix out = zero(a.spec_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const RingElement& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, j) += aik * b.at(k, j);
            }
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.spec_ != b.spec_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw RingMismatchError("matrix sum shape or ring mismatch");
        Matrix out = a;
        for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] += b.e_[i];
        return out;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.spec_ != b.spec_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw RingMismatchError("matrix difference shape or ring mismatch");
        Matrix out = a;
        for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] -= b.e_[i];
        return out;
    }

    Matrix scaled(const RingElement& s) const {
        Matrix out = *this;
        for (RingElement& x : out.e_) x *= s;
        return out;
    }

    bool is_zero() const {
        for (const RingElement& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.spec_ == b.spec_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    /// Row-major nested element literals: [[..],[..]].
    std::string str() const {
        std::string out = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            out += i == 0 ? "[" : ",[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) out += ",";
                out += at(i, j).str();
            }
            out += "]";
        }
        return out + "]";
    }

   private:
    RingSpec spec_;
    std::size_t rows_, cols_;
    std::vector<RingElement> e_;
};

/// Row vectors over the ring; messages and received words are rows.
using ElemVector = std::vector<RingElement>;

inline ElemVector row_times_matrix(const ElemVector& v, const Matrix& m) {
    if (v.size() != m.rows()) throw RingMismatchError("row-vector length does not match matrix");
    ElemVector out(m.cols(), RingElement::zero(m.spec()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m.at(i, j);
    }
    return out;
}

/**
 * Rank over the fraction field, by forward elimination with min-valuation
 * pivoting; the quotient by such a pivot is exact inside the ring, so no
 * fraction-field values ever materialize.
 */
inline std::size_t rank(const Matrix& m) {
    Matrix s = m;
    std::size_t r = 0;
    for (std::size_t col = 0; col < s.cols() && r < s.rows(); ++col) {
        std::size_t best = s.rows();
        Valuation best_v = Valuation::infinity();
        for (std::size_t i = r; i < s.rows(); ++i) {
            const Valuation v = s.at(i, col).valuation();
            if (v < best_v) {
                best_v = v;
                best = i;
            }
        }
        if (best == s.rows()) continue;  // column already clear
        for (std::size_t j = col; j < s.cols(); ++j) std::swap(s.at(r, j), s.at(best, j));
        for (std::size_t i = r + 1; i < s.rows(); ++i) {
            if (s.at(i, col).is_zero()) continue;
            const RingElement f = s.at(i, col).div_exact(s.at(r, col));
            for (std::size_t j = col; j < s.cols(); ++j) s.at(i, j) -= f * s.at(r, j);
        }
        ++r;
    }
    return r;
}

/**
 * Invariant-factor decomposition input = U * diag(z^{i_1},...,z^{i_r}) * V
 * with U, V invertible over the ring and i_1 <= ... <= i_r.
 */
struct SmithForm {
    Matrix u;                          ///< rows x rows, unimodular
    Matrix v;                          ///< cols x cols, unimodular
    std::vector<long long> exponents;  ///< sorted ascending; length = rank

    /// The middle factor, reconstructed at the stored shape.
    Matrix diagonal(std::size_t rows, std::size_t cols) const {
        Matrix d = Matrix::zero(u.spec(), rows, cols);
        for (std::size_t k = 0; k < exponents.size(); ++k)
            d.at(k, k) = RingElement::uniformizer_pow(u.spec(), exponents[k]);
        return d;
    }
};

/**
 * Smith decomposition over a DVR. Pivot rule: among the entries of minimum
 * valuation in the working submatrix take the leftmost column, then the
 * topmost row; swap it into place and clear its row and column by exact
 * division. In a DVR the pivot divides every remaining entry, so a single
 * sweep per pivot suffices and the exponents come out sorted. Unit factors
 * of the pivots are absorbed into U at the end.
 */
inline SmithForm smith_decompose(const Matrix& m) {
    const RingSpec spec = m.spec();
    Matrix s = m;
    Matrix u = Matrix::identity(spec, m.rows());
    Matrix v = Matrix::identity(spec, m.cols());
    const std::size_t limit = std::min(m.rows(), m.cols());

    std::size_t k = 0;
    for (; k < limit; ++k) {
        // locate pivot
        std::size_t pi = s.rows(), pj = s.cols();
        Valuation pv = Valuation::infinity();
        for (std::size_t j = k; j < s.cols(); ++j)
            for (std::size_t i = k; i < s.rows(); ++i) {
                const Valuation w = s.at(i, j).valuation();
                if (w < pv) {
                    pv = w;
                    pi = i;
                    pj = j;
                }
            }
        if (!pv.is_finite()) break;  // remaining block is zero

        if (pi != k) {  // row swap: S <- P S, U <- U P
            for (std::size_t j = 0; j < s.cols(); ++j) std::swap(s.at(k, j), s.at(pi, j));
            for (std::size_t i = 0; i < u.rows(); ++i) std::swap(u.at(i, k), u.at(i, pi));
        }
        if (pj != k) {  // column swap: S <- S P, V <- P V
            for (std::size_t i = 0; i < s.rows(); ++i) std::swap(s.at(i, k), s.at(i, pj));
            for (std::size_t j = 0; j < v.cols(); ++j) std::swap(v.at(k, j), v.at(pj, j));
        }

        // clear the pivot column: row_i -= f * row_k, compensated in U
        for (std::size_t i = k + 1; i < s.rows(); ++i) {
            if (s.at(i, k).is_zero()) continue;
            const RingElement f = s.at(i, k).div_exact(s.at(k, k));
            for (std::size_t j = k; j < s.cols(); ++j) s.at(i, j) -= f * s.at(k, j);
            for (std::size_t r = 0; r < u.rows(); ++r) u.at(r, k) += f * u.at(r, i);
        }
        // clear the pivot row: col_j -= f * col_k, compensated in V
        for (std::size_t j = k + 1; j < s.cols(); ++j) {
            if (s.at(k, j).is_zero()) continue;
            const RingElement f = s.at(k, j).div_exact(s.at(k, k));
            for (std::size_t i = k; i < s.rows(); ++i) s.at(i, j) -= f * s.at(i, k);
            for (std::size_t c = 0; c < v.cols(); ++c) v.at(k, c) += f * v.at(j, c);
        }
    }

    std::vector<long long> exponents;
    exponents.reserve(k);
    for (std::size_t d = 0; d < k; ++d) {
        const long long e = s.at(d, d).valuation().value();
        exponents.push_back(e);
        // normalize the invariant factor to a pure power of z
        const RingElement unit = s.at(d, d).div_exact(RingElement::uniformizer_pow(spec, e));
        for (std::size_t i = 0; i < u.rows(); ++i) u.at(i, d) *= unit;
    }
    return SmithForm{std::move(u), std::move(v), std::move(exponents)};
}

/**
 * Valuation of Delta_j, the gcd (up to units) of all j x j minors. In a DVR
 * that gcd is z^e with e the minimum valuation over the minors, which equals
 * the partial sum of the first j Smith exponents.
 */
inline Valuation minor_gcd_valuation(const Matrix& m, std::size_t j) {
    const SmithForm sf = smith_decompose(m);
    if (j < 1 || j > sf.exponents.size())
        throw Error("minor order " + std::to_string(j) + " exceeds the rank " +
                    std::to_string(sf.exponents.size()));
    long long sum = 0;
    for (std::size_t k = 0; k < j; ++k) sum += sf.exponents[k];
    return Valuation(sum);
}

/**
 * Exact inverse of a matrix whose determinant is a unit. Gauss-Jordan with
 * unit pivots stays inside the ring; failure to find a unit pivot in some
 * column proves the determinant has positive valuation (or is zero).
 */
inline Matrix invert_unimodular(const Matrix& m) {
    if (m.rows() != m.cols()) throw RingMismatchError("only square matrices can be inverted");
    const std::size_t n = m.rows();
    Matrix s = m;
    Matrix inv = Matrix::identity(m.spec(), n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t i = k; i < n; ++i) {
            if (s.at(i, k).is_unit()) {
                pivot = i;
                break;
            }
        }
        if (pivot == n)
            throw NotAUnitError("matrix is not invertible over the ring (determinant is not a unit)");
        if (pivot != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(s.at(k, j), s.at(pivot, j));
                std::swap(inv.at(k, j), inv.at(pivot, j));
            }
        const RingElement scale = s.at(k, k).unit_inverse();
        for (std::size_t j = 0; j < n; ++j) {
            s.at(k, j) *= scale;
            inv.at(k, j) *= scale;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || s.at(i, k).is_zero()) continue;
            const RingElement f = s.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                s.at(i, j) -= f * s.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

}  // namespace dvrnc

#endif  // DVRNC_MATRIX_HPP
