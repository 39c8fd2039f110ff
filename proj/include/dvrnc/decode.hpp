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

#ifndef DVRNC_DECODE_HPP
#define DVRNC_DECODE_HPP

#include <cstddef>
#include <deque>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "series.hpp"

namespace dvrnc {

/// A coefficient vector over R (one time slice of a message or a received word).
using RepVector = std::vector<CosetRep>;

/**
 * The first terms F_0, ..., F_{T-1} of the expansion of a received coding
 * matrix: each slice is a rows x cols matrix over R, stored row-major.
 */
struct TruncatedCodingMatrix {
    RingSpec spec;
    std::size_t rows = 0;  ///< omega
    std::size_t cols = 0;  ///< |In(v)|
    std::vector<std::vector<CosetRep>> slices;

    std::size_t terms() const { return slices.size(); }

    const CosetRep& slice_at(std::size_t j, std::size_t r, std::size_t c) const {
        return slices[j][r * cols + c];
    }

    /// sum_{j<=upto} z^j F_j as an exact matrix.
    Matrix assembled(std::size_t upto) const {
        if (upto >= terms())
            throw InsufficientTruncationError("truncation holds " + std::to_string(terms()) +
                                              " terms, need " + std::to_string(upto + 1));
        Matrix m = Matrix::zero(spec, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                RepSeries s{spec, {}};
                for (std::size_t j = 0; j <= upto; ++j) s.coeffs.push_back(slice_at(j, r, c));
                m.at(r, c) = assemble(s);
            }
        return m;
    }

    friend bool operator==(const TruncatedCodingMatrix&, const TruncatedCodingMatrix&) = default;
};

/// Expand every entry of a matrix to `terms` coefficients.
inline TruncatedCodingMatrix truncate_matrix(const Matrix& full, std::size_t terms) {
    TruncatedCodingMatrix t{full.spec(), full.rows(), full.cols(), {}};
    t.slices.assign(terms, std::vector<CosetRep>(full.rows() * full.cols(), 0));
    for (std::size_t r = 0; r < full.rows(); ++r)
        for (std::size_t c = 0; c < full.cols(); ++c) {
            const RepSeries s = expand(full.at(r, c), terms);
            for (std::size_t j = 0; j < terms; ++j) t.slices[j][r * full.cols() + c] = s.coeffs[j];
        }
    return t;
}

/// Sorted invariant-factor exponents i_1 <= ... <= i_r of the received matrix.
inline std::vector<long long> invariant_exponents(const Matrix& fv) {
    return smith_decompose(fv).exponents;
}

/**
 * The minimum decoding delay of a full-rank received matrix: the valuation
 * of Delta_omega / Delta_{omega-1}, i.e. the largest invariant-factor
 * exponent.
 */
inline long long min_delay(const Matrix& fv, std::size_t omega) {
    const std::vector<long long> exps = invariant_exponents(fv);
    if (exps.size() < omega)
        throw NotDecodableError("received matrix has rank " + std::to_string(exps.size()) +
                                " < omega = " + std::to_string(omega));
    // Delta_0 := 1, so for omega = 1 the delay is i_1 itself.
    return exps[omega - 1];
}

namespace detail {

/// V^{-1} * diag(z^{delta - i_j} | zero rows) * U^{-1} from a Smith form.
inline Matrix decoding_matrix_from_smith(const SmithForm& sf, std::size_t omega, std::size_t n,
                                         long long delta) {
    const RingSpec spec = sf.u.spec();
    Matrix middle = Matrix::zero(spec, n, omega);
    for (std::size_t j = 0; j < omega; ++j)
        middle.at(j, j) = RingElement::uniformizer_pow(spec, delta - sf.exponents[j]);
    return invert_unimodular(sf.v) * middle * invert_unimodular(sf.u);
}

}  // namespace detail

/**
 * The time-invariant decoding matrix A with Fv * A = z^delta * I, built from
 * the Smith form of the full received matrix. Fails with DelayTooSmall below
 * the minimum delay and NotDecodable when the rank is deficient.
 */
inline Matrix time_invariant_matrix(const Matrix& fv, long long delta) {
    const std::size_t omega = fv.rows();
    const SmithForm sf = smith_decompose(fv);
    if (sf.exponents.size() < omega)
        throw NotDecodableError("received matrix has rank " + std::to_string(sf.exponents.size()) +
                                " < omega = " + std::to_string(omega));
    const long long largest = sf.exponents.back();
    if (delta < largest)
        throw DelayTooSmallError("delay " + std::to_string(delta) + " is below the minimum " +
                                 std::to_string(largest));
    return detail::decoding_matrix_from_smith(sf, omega, fv.cols(), delta);
}

/**
 * Decodability with a prescribed delay, decided from the truncation alone:
 * sum_{j<=delta} z^j F_j must have full rank omega and delta must reach the
 * valuation of Delta_{delta,omega} / Delta_{delta,omega-1}.
 */
inline bool decodable_with_delay(const TruncatedCodingMatrix& trunc, long long delta) {
    if (delta < 0) return false;
    if (static_cast<std::size_t>(delta) >= trunc.terms())
        throw InsufficientTruncationError("truncation holds " + std::to_string(trunc.terms()) +
                                          " terms, need " + std::to_string(delta + 1));
    const Matrix g = trunc.assembled(static_cast<std::size_t>(delta));
    const std::vector<long long> exps = invariant_exponents(g);
    if (exps.size() < trunc.rows) return false;
    return delta >= exps.back();
}

/**
 * The time-variant decoding matrix A_0 = sum_{j<=delta} z^j A_j, where the
 * A_j are the first delta+1 expansion terms of the Smith-derived decoding
 * matrix of the truncated received matrix. It satisfies
 * (sum_{j<=delta} z^j F_j) * A_0 = z^delta * I  (mod z^{delta+1}).
 */
inline Matrix time_variant_matrix(const TruncatedCodingMatrix& trunc, long long delta) {
    if (delta < 0) throw DelayTooSmallError("delay must be nonnegative");
    if (static_cast<std::size_t>(delta) >= trunc.terms())
        throw InsufficientTruncationError("truncation holds " + std::to_string(trunc.terms()) +
                                          " terms, need " + std::to_string(delta + 1));
    const Matrix g = trunc.assembled(static_cast<std::size_t>(delta));
    const SmithForm sf = smith_decompose(g);
    if (sf.exponents.size() < trunc.rows)
        throw NotDecodableError("truncated matrix has rank " +
                                std::to_string(sf.exponents.size()) + " < omega = " +
                                std::to_string(trunc.rows));
    if (delta < sf.exponents.back())
        throw DelayTooSmallError("delay " + std::to_string(delta) +
                                 " is below the truncated minimum " +
                                 std::to_string(sf.exponents.back()));
    const Matrix a = detail::decoding_matrix_from_smith(sf, trunc.rows, trunc.cols, delta);
    // keep only the first delta+1 expansion terms of every entry
    Matrix a0 = Matrix::zero(trunc.spec, a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            a0.at(r, c) = assemble(expand(a.at(r, c), static_cast<std::size_t>(delta) + 1));
    return a0;
}

namespace detail {

inline ElemVector reps_to_elements(const RingSpec& spec, const RepVector& v) {
    ElemVector out;
    out.reserve(v.size());
    for (CosetRep r : v) out.push_back(RingElement::from_representative(spec, r));
    return out;
}

/// message slice (over R) times coefficient slice (over R): a row over the ring.
inline ElemVector message_times_slice(const RingSpec& spec, const RepVector& m,
                                      const std::vector<CosetRep>& slice, std::size_t rows,
                                      std::size_t cols) {
    ElemVector out(cols, RingElement::zero(spec));
    for (std::size_t i = 0; i < rows; ++i) {
        if (m[i] == 0) continue;
        const RingElement mi = RingElement::from_representative(spec, m[i]);
        for (std::size_t j = 0; j < cols; ++j) {
            const CosetRep f = slice[i * cols + j];
            if (f != 0) out[j] += mi * RingElement::from_representative(spec, f);
        }
    }
    return out;
}

/// sigma applied componentwise after exact division by z^delta.
inline RepVector extract_message(const RingSpec& spec, const ElemVector& y, long long delta) {
    const RingElement zk = RingElement::uniformizer_pow(spec, delta);
    RepVector m;
    m.reserve(y.size());
    for (const RingElement& c : y) {
        if (c.valuation() < Valuation(delta))
            throw InconsistentStreamError(
                "received data does not match any source message (component valuation " +
                c.valuation().str() + " < delay " + std::to_string(delta) + ")");
        m.push_back(c.div_exact(zk).residue());
    }
    return m;
}

inline ElemVector window_sum(const RingSpec& spec, const std::deque<RepVector>& window) {
    const std::size_t n = window.empty() ? 0 : window.front().size();
    ElemVector acc(n, RingElement::zero(spec));
    const RingElement z = RingElement::uniformizer_pow(spec, 1);
    for (std::size_t j = window.size(); j-- > 0;)
        for (std::size_t c = 0; c < n; ++c)
            acc[c] = acc[c] * z + RingElement::from_representative(spec, window[j][c]);
    return acc;
}

}  // namespace detail

/**
 * m_0 = sigma((sum_{j<=delta} z^j r_j) * A_0 / z^delta), evaluated exactly.
 */
inline RepVector decode_first(const std::vector<RepVector>& r_head, const Matrix& a0,
                              long long delta) {
    if (delta < 0 || r_head.size() != static_cast<std::size_t>(delta) + 1)
        throw SequenceError("decode_first needs exactly delta+1 received vectors");
    const RingSpec& spec = a0.spec();
    std::deque<RepVector> window(r_head.begin(), r_head.end());
    const ElemVector y = row_times_matrix(detail::window_sum(spec, window), a0);
    return detail::extract_message(spec, y, delta);
}

/**
 * Streaming decoder state. Single-owner and strictly sequential: one stream,
 * one state. The window holds the residual received vectors r_t..r_{t+delta}
 * over R; the carries s_0..s_{delta+1} live in the ring and persist across
 * steps. All decoded messages and all coefficient slices seen so far are
 * kept, because the step-t history term reaches back to m_0 and F_{t+delta}.
 */
struct DecoderState {
    Matrix a0;
    long long delta;
    std::vector<ElemVector> carries;            ///< s_0 .. s_{delta+1}
    std::deque<RepVector> window;               ///< residual r_{t} .. r_{t+delta-1} between steps
    std::vector<RepVector> messages;            ///< m_0 .. m_{t-1}
    std::vector<std::vector<CosetRep>> slices;  ///< F_0 .. F_{t+delta-1}
    std::vector<RepVector> last_window;         ///< window at the last decode, for traces
    std::size_t omega;
    std::size_t n;
    std::size_t next_t;
};

/**
 * Initialize a streaming decode from the first delta+1 received vectors and
 * coefficient slices; decodes m_0 immediately.
 */
inline DecoderState make_decoder(const TruncatedCodingMatrix& head, const Matrix& a0,
                                 long long delta, const std::vector<RepVector>& r_head) {
    if (head.terms() != static_cast<std::size_t>(delta) + 1)
        throw SequenceError("decoder initialization needs slices F_0..F_delta");
    for (const RepVector& r : r_head)
        if (r.size() != head.cols) throw RingMismatchError("received vector has wrong width");
    DecoderState st{a0,
                    delta,
                    std::vector<ElemVector>(static_cast<std::size_t>(delta) + 2,
                                            ElemVector(head.cols, RingElement::zero(head.spec))),
                    {},
                    {},
                    head.slices,
                    r_head,
                    head.rows,
                    head.cols,
                    1};
    st.messages.push_back(decode_first(r_head, a0, delta));
    st.window.assign(r_head.begin() + 1, r_head.end());
    return st;
}

/**
 * One step of the incremental routine: subtract the contribution of the
 * previous message (and, at the window tail, of all older messages) with
 * carry propagation, then read off m_t. The step index must arrive in order
 * t = 1, 2, ...; the new inputs are r_{t+delta} and F_{t+delta}.
 */
inline RepVector decode_step(DecoderState& st, std::size_t t, const RepVector& r_new,
                             const std::vector<CosetRep>& f_new) {
    if (t != st.next_t)
        throw SequenceError("expected step " + std::to_string(st.next_t) + ", got " +
                            std::to_string(t));
    if (r_new.size() != st.n) throw RingMismatchError("received vector has wrong width");
    if (f_new.size() != st.omega * st.n)
        throw RingMismatchError("coefficient slice has wrong shape");
    const RingSpec& spec = st.a0.spec();
    const std::size_t delta = static_cast<std::size_t>(st.delta);
    st.slices.push_back(f_new);
    st.window.push_back(r_new);  // slots now r_t .. r_{t+delta}

    const RepVector prev = st.messages.back();
    auto contribution = [&](const RepVector& msg, std::size_t j) {
        return detail::message_times_slice(spec, msg, st.slices[j], st.omega, st.n);
    };

    // s_0 := (m_{t-1} F_0 - sigma(m_{t-1} F_0)) / z
    {
        const ElemVector mf = contribution(prev, 0);
        for (std::size_t c = 0; c < st.n; ++c) st.carries[0][c] = mf[c].peel(mf[c].residue());
    }

    // r'_{t+j} := sigma(r_{t+j} - m_{t-1} F_{j+1} - s_j)
    // s_{j+1}  := (m_{t-1} F_{j+1} + s_j + r'_{t+j} - r_{t+j}) / z
    for (std::size_t j = 0; j < delta; ++j) {
        const ElemVector mf = contribution(prev, j + 1);
        for (std::size_t c = 0; c < st.n; ++c) {
            const RingElement before = RingElement::from_representative(spec, st.window[j][c]);
            const RingElement residual = before - mf[c] - st.carries[j][c];
            const CosetRep rp = residual.residue();
            st.carries[j + 1][c] =
                (-(residual - RingElement::from_representative(spec, rp))).peel(0);
            st.window[j][c] = rp;
        }
    }

    // tail slot j = delta carries the history of all earlier messages:
    // r'_{t+d} := sigma(r_{t+d} - sum_k m_k F_{t+d-k} - s_d - s_{d+1})
    {
        ElemVector hist(st.n, RingElement::zero(spec));
        for (std::size_t k = 0; k < t; ++k) {
            const ElemVector mf = contribution(st.messages[k], t + delta - k);
            for (std::size_t c = 0; c < st.n; ++c) hist[c] += mf[c];
        }
        for (std::size_t c = 0; c < st.n; ++c) {
            const RingElement before = RingElement::from_representative(spec, st.window[delta][c]);
            const RingElement residual =
                before - hist[c] - st.carries[delta][c] - st.carries[delta + 1][c];
            const CosetRep rp = residual.residue();
            st.carries[delta + 1][c] =
                (-(residual - RingElement::from_representative(spec, rp))).peel(0);
            st.window[delta][c] = rp;
        }
    }

    // m_t = sigma((sum_j z^j r'_{t+j}) * A_0 / z^delta)
    const ElemVector y = row_times_matrix(detail::window_sum(spec, st.window), st.a0);
    RepVector m = detail::extract_message(spec, y, st.delta);
    st.messages.push_back(m);
    st.last_window.assign(st.window.begin(), st.window.end());
    st.window.pop_front();
    ++st.next_t;
    return m;
}

}  // namespace dvrnc

#endif  // DVRNC_DECODE_HPP
