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

#ifndef DVRNC_SERIES_HPP
#define DVRNC_SERIES_HPP

#include <cstddef>
#include <vector>

#include "ring.hpp"

namespace dvrnc {

/**
 * Finite-horizon expansion sum_t a_t z^t with coefficients drawn from the
 * representative set R. The horizon is the number of stored coefficients;
 * two series over the same ring and horizon are equal iff their coefficient
 * lists are identical.
 */
struct RepSeries {
    RingSpec spec;
    std::vector<CosetRep> coeffs;

    std::size_t horizon() const { return coeffs.size(); }

    friend bool operator==(const RepSeries&, const RepSeries&) = default;
};

/// First `horizon` coefficients of the unique expansion of x over R.
inline RepSeries expand(const RingElement& x, std::size_t horizon) {
    RepSeries s{x.spec(), {}};
    s.coeffs.reserve(horizon);
    RingElement rest = x;
    for (std::size_t t = 0; t < horizon; ++t) {
        const CosetRep r = rest.residue();
        s.coeffs.push_back(r);
        rest = rest.peel(r);
    }
    return s;
}

/// Exact element equal to the truncated sum of the series.
inline RingElement assemble(const RepSeries& s) {
    RingElement acc = RingElement::zero(s.spec);
    // Horner from the top coefficient avoids computing explicit z^t powers.
    const RingElement z = RingElement::uniformizer_pow(s.spec, 1);
    for (std::size_t t = s.coeffs.size(); t-- > 0;) {
        acc = acc * z + RingElement::from_representative(s.spec, s.coeffs[t]);
    }
    return acc;
}

/// A stream result together with the carry left over past the horizon, so a
/// computation can be resumed or checked.
struct SeriesWithCarry {
    RepSeries series;
    RingElement carry;
};

namespace detail {

inline void check_streams(const RepSeries& a, const RepSeries& b) {
    if (a.spec != b.spec) throw RingMismatchError("series over different rings");
    if (a.horizon() != b.horizon()) throw RingMismatchError("series horizons differ");
}

}  // namespace detail

/**
 * Coefficient stream of a+b: c_t = residue(a_t + b_t + carry_t) with
 * carry_{t+1} = (a_t + b_t + carry_t - c_t)/z and carry_0 = 0. The carries
 * live in the ring, not in R.
 */
inline SeriesWithCarry series_add(const RepSeries& a, const RepSeries& b) {
    detail::check_streams(a, b);
    const RingSpec& spec = a.spec;
    RepSeries out{spec, {}};
    out.coeffs.reserve(a.horizon());
    RingElement carry = RingElement::zero(spec);
    for (std::size_t t = 0; t < a.horizon(); ++t) {
        const RingElement total = RingElement::from_representative(spec, a.coeffs[t]) +
                                  RingElement::from_representative(spec, b.coeffs[t]) + carry;
        const CosetRep c = total.residue();
        out.coeffs.push_back(c);
        carry = total.peel(c);
    }
    return {std::move(out), std::move(carry)};
}

/**
 * Coefficient stream of a*b: the convolution d_t = residue(sum_j a_j b_{t-j}
 * + s_t) with s_{t+1} = (sum_j a_j b_{t-j} + s_t - d_t)/z and s_0 = 0.
 */
inline SeriesWithCarry series_mul(const RepSeries& a, const RepSeries& b) {
    detail::check_streams(a, b);
    const RingSpec& spec = a.spec;
    RepSeries out{spec, {}};
    out.coeffs.reserve(a.horizon());
    RingElement carry = RingElement::zero(spec);
    for (std::size_t t = 0; t < a.horizon(); ++t) {
        RingElement total = carry;
        for (std::size_t j = 0; j <= t; ++j) {
            total += RingElement::from_representative(spec, a.coeffs[j]) *
                     RingElement::from_representative(spec, b.coeffs[t - j]);
        }
        const CosetRep d = total.residue();
        out.coeffs.push_back(d);
        carry = total.peel(d);
    }
    return {std::move(out), std::move(carry)};
}

}  // namespace dvrnc

#endif  // DVRNC_SERIES_HPP
