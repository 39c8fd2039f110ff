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

#ifndef DVRNC_RING_HPP
#define DVRNC_RING_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "errors.hpp"
#include "fp_poly.hpp"

namespace dvrnc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class RingKind {
    rational_padic,        ///< rationals with denominator coprime to p; uniformizer z = p
    rational_power_series  ///< rational power series over F_p; uniformizer z = D
};

/**
 * Identifies one of the two shipped discrete valuation rings. Every element,
 * series and matrix carries its spec; operations across different specs are
 * rejected.
 */
struct RingSpec {
    RingKind kind;
    std::uint32_t p;

    static RingSpec rational_padic(std::uint32_t p) {
        require_prime(p);
        return RingSpec{RingKind::rational_padic, p};
    }

    static RingSpec rational_power_series(std::uint32_t p) {
        require_prime(p);
        return RingSpec{RingKind::rational_power_series, p};
    }

    /// Size of the representative set R = {0, ..., p-1}.
    std::uint32_t representative_count() const { return p; }

    std::string uniformizer_name() const {
        return kind == RingKind::rational_padic ? std::to_string(p) : std::string("D");
    }

    std::string kind_name() const {
        return kind == RingKind::rational_padic ? "rational-p-adic" : "rational-power-series";
    }

    friend bool operator==(const RingSpec&, const RingSpec&) = default;

   private:
    static void require_prime(std::uint32_t p) {
        if (!is_prime(p)) throw ParseError("modulus " + std::to_string(p) + " is not prime");
    }
};

/// Nonnegative integer or infinity (the valuation of zero).
class Valuation {
   public:
    Valuation(long long v) : finite_(true), v_(v) {}

    static Valuation infinity() {
        Valuation v(0);
        v.finite_ = false;
        return v;
    }

    bool is_finite() const { return finite_; }

    long long value() const {
        if (!finite_) throw Error("valuation is infinite");
        return v_;
    }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return Valuation(a.v_ + b.v_);
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }

    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a < b || a == b; }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }

    std::string str() const { return finite_ ? std::to_string(v_) : std::string("inf"); }

   private:
    bool finite_;
    long long v_;
};

/// A member of the representative set R, stored as an integer in [0, p).
using CosetRep = std::uint32_t;

/**
 * An exact element of a discrete valuation ring. For the rational p-adic
 * ring the payload is a reduced rational with denominator coprime to p; for
 * the rational power series ring it is a reduced polynomial fraction whose
 * denominator has constant term 1. Both payloads are canonical, so equality
 * is structural. Values are immutable and freely shareable across threads.
 */
class RingElement {
   public:
    static RingElement zero(const RingSpec& spec) { return from_integer(spec, 0); }
    static RingElement one(const RingSpec& spec) { return from_integer(spec, 1); }

    static RingElement from_integer(const RingSpec& spec, const BigInt& n) {
        if (spec.kind == RingKind::rational_padic) return RingElement(spec, BigRational(n));
        return RingElement(spec, fraction_from_integer(spec, n));
    }

    static RingElement from_integer(const RingSpec& spec, long long n) {
        return from_integer(spec, BigInt(n));
    }

    /// Embed a coset representative as a ring element.
    static RingElement from_representative(const RingSpec& spec, CosetRep r) {
        if (r >= spec.p) throw ParseError("representative out of range");
        return from_integer(spec, static_cast<long long>(r));
    }

    /// Rational p-adic element num/den; den must reduce to a unit.
    static RingElement from_rational(const RingSpec& spec, const BigInt& num, const BigInt& den) {
        if (spec.kind != RingKind::rational_padic)
            throw RingMismatchError("integer fraction literal in a power series ring");
        if (den == 0) throw ParseError("zero denominator");
        BigRational q(num, den);
        if (boost::multiprecision::denominator(q) % spec.p == 0)
            throw NotAUnitError("denominator not coprime to p: element lies outside the ring");
        return RingElement(spec, std::move(q));
    }

    /// Power series element num/den; den must have a nonzero constant term.
    static RingElement from_fraction(const RingSpec& spec, FpPoly num, FpPoly den) {
        if (spec.kind != RingKind::rational_power_series)
            throw RingMismatchError("polynomial fraction literal in a p-adic ring");
        if (num.p() != spec.p || den.p() != spec.p)
            throw RingMismatchError("polynomial modulus does not match the ring");
        return RingElement(spec, FpFraction(std::move(num), std::move(den)));
    }

    /// z^k for k >= 0.
    static RingElement uniformizer_pow(const RingSpec& spec, long long k) {
        if (k < 0) throw Error("negative uniformizer power");
        if (spec.kind == RingKind::rational_padic) {
            BigInt n = boost::multiprecision::pow(BigInt(spec.p), static_cast<unsigned>(k));
            return RingElement(spec, BigRational(n));
        }
        return RingElement(spec, FpFraction(FpPoly::monomial(spec.p, 1, static_cast<std::size_t>(k)),
                                            FpPoly::constant(spec.p, 1)));
    }

    const RingSpec& spec() const { return spec_; }

    bool is_zero() const {
        if (is_padic()) return rat().is_zero();
        return fun().is_zero();
    }

    bool is_one() const {
        if (is_padic()) return rat() == 1;
        return fun().is_one();
    }

    /// Largest e with z^e dividing the element; infinity for zero.
    Valuation valuation() const {
        if (is_zero()) return Valuation::infinity();
        if (is_padic()) {
            BigInt n = boost::multiprecision::numerator(rat());
            long long v = 0;
            while (n % spec_.p == 0) {
                n /= spec_.p;
                ++v;
            }
            return Valuation(v);
        }
        return Valuation(static_cast<long long>(fun().trailing_degree()));
    }

    bool is_unit() const { return valuation() == Valuation(0); }

    /// The natural map onto R: the unique r in R with x - r in zD.
    CosetRep residue() const {
        if (is_padic()) {
            const std::uint32_t p = spec_.p;
            const std::uint32_t n =
                static_cast<std::uint32_t>(boost::multiprecision::numerator(rat()) % p + p) % p;
            const std::uint32_t d =
                static_cast<std::uint32_t>(boost::multiprecision::denominator(rat()) % p);
            return static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) * mod_inverse(d, p) % p);
        }
        // denominator is normalized to constant term 1
        return fun().num().coeff(0);
    }

    /// (x - r)/z; rejects r != residue(x), which would make the division inexact.
    RingElement peel(CosetRep r) const {
        if (residue() != r) throw Error("peel: representative does not match the residue");
        const RingElement d = *this - from_representative(spec_, r);
        if (d.is_zero()) return d;
        if (is_padic()) return RingElement(spec_, BigRational(d.rat() / spec_.p));
        return RingElement(spec_, FpFraction(d.fun().num().shifted_down(1), d.fun().den()));
    }

    friend RingElement operator+(const RingElement& a, const RingElement& b) {
        a.check_ring(b);
        if (a.is_padic()) return RingElement(a.spec_, BigRational(a.rat() + b.rat()));
        return RingElement(a.spec_, a.fun() + b.fun());
    }

    friend RingElement operator-(const RingElement& a, const RingElement& b) {
        a.check_ring(b);
        if (a.is_padic()) return RingElement(a.spec_, BigRational(a.rat() - b.rat()));
        return RingElement(a.spec_, a.fun() - b.fun());
    }

    friend RingElement operator*(const RingElement& a, const RingElement& b) {
        a.check_ring(b);
        if (a.is_padic()) return RingElement(a.spec_, BigRational(a.rat() * b.rat()));
        return RingElement(a.spec_, a.fun() * b.fun());
    }

    RingElement operator-() const {
        if (is_padic()) return RingElement(spec_, BigRational(-rat()));
        return RingElement(spec_, -fun());
    }

    RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
    RingElement& operator-=(const RingElement& b) { return *this = *this - b; }
    RingElement& operator*=(const RingElement& b) { return *this = *this * b; }

    /// Inverse of a unit; stays inside the ring.
    RingElement unit_inverse() const {
        if (!is_unit()) throw NotAUnitError("element with valuation " + valuation().str() +
                                            " has no inverse in the ring");
        if (is_padic()) return RingElement(spec_, BigRational(1 / rat()));
        return RingElement(spec_, fun().unit_inverse());
    }

    /// Exact quotient a/b inside the ring; requires v(a) >= v(b).
    RingElement div_exact(const RingElement& b) const {
        check_ring(b);
        if (b.is_zero()) throw Error("division by zero");
        if (is_zero()) return *this;
        if (valuation() < b.valuation())
            throw NotAUnitError("quotient would leave the ring (valuations " + valuation().str() +
                                " < " + b.valuation().str() + ")");
        if (is_padic()) return RingElement(spec_, BigRational(rat() / b.rat()));
        const long long k = static_cast<long long>(b.fun().trailing_degree());
        // strip z^k from b to make it a unit, divide, then strip z^k from a
        FpFraction unit(b.fun().num().shifted_down(static_cast<std::size_t>(k)), b.fun().den());
        FpFraction quotient = fun() * unit.unit_inverse();
        if (k == 0) return RingElement(spec_, std::move(quotient));
        return RingElement(spec_,
                           FpFraction(quotient.num().shifted_down(static_cast<std::size_t>(k)),
                                      quotient.den()));
    }

    /// Multiply by z^k, k >= 0.
    RingElement shifted(long long k) const { return *this * uniformizer_pow(spec_, k); }

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.spec_ == b.spec_ && a.value_ == b.value_;
    }

    /// Canonical literal: decimal "a" / "a/b" for p-adic; polynomial fraction
    /// like "1+2*D^3" or "(1+D)/(1+2*D)" for power series.
    std::string str() const {
        if (is_padic()) {
            const BigInt& num = boost::multiprecision::numerator(rat());
            const BigInt& den = boost::multiprecision::denominator(rat());
            if (den == 1) return num.str();
            return num.str() + "/" + den.str();
        }
        const FpFraction& f = fun();
        if (f.den().is_one()) return f.num().str();
        return wrap(f.num().str()) + "/" + wrap(f.den().str());
    }

    static RingElement parse(const RingSpec& spec, std::string_view text);

   private:
    RingElement(RingSpec spec, BigRational q) : spec_(spec), value_(std::move(q)) {}
    RingElement(RingSpec spec, FpFraction f) : spec_(spec), value_(std::move(f)) {}

    bool is_padic() const { return spec_.kind == RingKind::rational_padic; }
    const BigRational& rat() const { return std::get<BigRational>(value_); }
    const FpFraction& fun() const { return std::get<FpFraction>(value_); }

    void check_ring(const RingElement& b) const {
        if (spec_ != b.spec_) throw RingMismatchError("operands belong to different rings");
    }

    static FpFraction fraction_from_integer(const RingSpec& spec, const BigInt& n) {
        const std::uint32_t r = static_cast<std::uint32_t>((n % spec.p + spec.p) % spec.p);
        return FpFraction::constant(spec.p, r);
    }

    static std::string wrap(const std::string& s) {
        return s.find('+') == std::string::npos ? s : "(" + s + ")";
    }

    RingSpec spec_;
    std::variant<BigRational, FpFraction> value_;
};

namespace detail {

inline void skip_space(std::string_view s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline BigInt parse_bigint(std::string_view s, std::size_t& i) {
    skip_space(s, i);
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    skip_space(s, i);
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError("expected an integer in element literal");
    BigInt n(std::string(s.substr(start, i - start)));
    return neg ? BigInt(-n) : n;
}

inline std::size_t parse_index(std::string_view s, std::size_t& i) {
    skip_space(s, i);
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError("expected an exponent in element literal");
    return static_cast<std::size_t>(std::stoull(std::string(s.substr(start, i - start))));
}

/// term := INT ['*' D-part] | D-part ; D-part := 'D' ['^' INT]
inline FpPoly parse_poly_term(std::uint32_t p, std::string_view s, std::size_t& i) {
    skip_space(s, i);
    std::int64_t coeff = 1;
    bool have_coeff = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        const BigInt c = parse_bigint(s, i);
        coeff = static_cast<std::int64_t>(c % p);
        have_coeff = true;
        skip_space(s, i);
        if (i < s.size() && s[i] == '*') {
            ++i;
            skip_space(s, i);
            if (i >= s.size() || s[i] != 'D') throw ParseError("expected D after '*'");
        }
    }
    std::size_t power = 0;
    if (i < s.size() && s[i] == 'D') {
        ++i;
        power = 1;
        skip_space(s, i);
        if (i < s.size() && s[i] == '^') {
            ++i;
            power = parse_index(s, i);
        }
    } else if (!have_coeff) {
        throw ParseError("expected a coefficient or D in polynomial literal");
    }
    return FpPoly::monomial(p, mod_p(coeff, p), power);
}

inline FpPoly parse_poly(std::uint32_t p, std::string_view s, std::size_t& i) {
    skip_space(s, i);
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    FpPoly acc = parse_poly_term(p, s, i);
    if (neg) acc = -acc;
    while (true) {
        skip_space(s, i);
        if (i >= s.size() || (s[i] != '+' && s[i] != '-')) break;
        const bool minus = s[i++] == '-';
        FpPoly term = parse_poly_term(p, s, i);
        acc = minus ? acc - term : acc + term;
    }
    return acc;
}

inline FpPoly parse_poly_atom(std::uint32_t p, std::string_view s, std::size_t& i) {
    skip_space(s, i);
    if (i < s.size() && s[i] == '(') {
        ++i;
        FpPoly poly = parse_poly(p, s, i);
        skip_space(s, i);
        if (i >= s.size() || s[i] != ')') throw ParseError("missing ')' in element literal");
        ++i;
        return poly;
    }
    return parse_poly(p, s, i);
}

}  // namespace detail

inline RingElement RingElement::parse(const RingSpec& spec, std::string_view text) {
    std::size_t i = 0;
    if (spec.kind == RingKind::rational_padic) {
        const BigInt num = detail::parse_bigint(text, i);
        detail::skip_space(text, i);
        BigInt den = 1;
        if (i < text.size() && text[i] == '/') {
            ++i;
            den = detail::parse_bigint(text, i);
        }
        detail::skip_space(text, i);
        if (i != text.size())
            throw ParseError("trailing characters in element literal: '" + std::string(text) + "'");
        return from_rational(spec, num, den);
    }
    FpPoly num = detail::parse_poly_atom(spec.p, text, i);
    detail::skip_space(text, i);
    FpPoly den = FpPoly::constant(spec.p, 1);
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = detail::parse_poly_atom(spec.p, text, i);
    }
    detail::skip_space(text, i);
    if (i != text.size())
        throw ParseError("trailing characters in element literal: '" + std::string(text) + "'");
    return from_fraction(spec, std::move(num), std::move(den));
}

/// Spec-level operation names.
inline Valuation valuation(const RingElement& x) { return x.valuation(); }
inline CosetRep residue(const RingElement& x) { return x.residue(); }
inline RingElement peel(const RingElement& x, CosetRep r) { return x.peel(r); }

}  // namespace dvrnc

#endif  // DVRNC_RING_HPP
