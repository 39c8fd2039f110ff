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

#ifndef DVRNC_FP_POLY_HPP
#define DVRNC_FP_POLY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace dvrnc {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Least nonnegative residue of a (possibly negative) value.
inline std::uint32_t mod_p(std::int64_t a, std::uint32_t p) {
    std::int64_t r = a % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a % p;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw NotAUnitError("no inverse modulo " + std::to_string(p));
    return mod_p(t, p);
}

/**
 * Dense polynomial over the prime field F_p, coefficients stored in
 * ascending degree. Zero is the empty coefficient list; all other
 * polynomials have a nonzero leading coefficient.
 */
class FpPoly {
   public:
    explicit FpPoly(std::uint32_t p) : p_(p) {}

    FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= p_;
        trim();
    }

    static FpPoly constant(std::uint32_t p, std::uint32_t value) {
        return FpPoly(p, {value % p});
    }

    static FpPoly monomial(std::uint32_t p, std::uint32_t coeff, std::size_t power) {
        std::vector<std::uint32_t> c(power + 1, 0);
        c[power] = coeff % p;
        return FpPoly(p, std::move(c));
    }

    std::uint32_t p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    std::size_t degree() const {
        if (is_zero()) throw Error("degree of zero polynomial");
        return c_.size() - 1;
    }

    std::size_t trailing_degree() const {
        if (is_zero()) throw Error("trailing degree of zero polynomial");
        std::size_t t = 0;
        while (c_[t] == 0) ++t;
        return t;
    }

    std::uint32_t coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }

    std::uint32_t leading_coeff() const { return c_.back(); }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        a.check_field(b);
        std::vector<std::uint32_t> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
        return FpPoly(a.p_, std::move(c));
    }

    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        a.check_field(b);
        std::vector<std::uint32_t> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coeff(i) + a.p_ - b.coeff(i)) % a.p_;
        return FpPoly(a.p_, std::move(c));
    }

    FpPoly operator-() const {
        std::vector<std::uint32_t> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = (p_ - c_[i]) % p_;
        return FpPoly(p_, std::move(c));
    }

    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        a.check_field(b);
        if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
        std::vector<std::uint32_t> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                const std::uint64_t t =
                    c[i + j] + static_cast<std::uint64_t>(a.c_[i]) * b.c_[j];
                c[i + j] = static_cast<std::uint32_t>(t % a.p_);
            }
        }
        return FpPoly(a.p_, std::move(c));
    }

    FpPoly scaled(std::uint32_t s) const {
        std::vector<std::uint32_t> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            c[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c_[i]) * (s % p_) % p_);
        return FpPoly(p_, std::move(c));
    }

    /// Quotient and remainder with deg(r) < deg(b).
    friend std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
        a.check_field(b);
        if (b.is_zero()) throw Error("polynomial division by zero");
        FpPoly r = a;
        FpPoly q(a.p_);
        const std::uint32_t inv_lead = mod_inverse(b.leading_coeff(), a.p_);
        while (!r.is_zero() && r.degree() >= b.degree()) {
            const std::size_t shift = r.degree() - b.degree();
            const std::uint32_t factor = static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(r.leading_coeff()) * inv_lead % a.p_);
            const FpPoly term = monomial(a.p_, factor, shift);
            q = q + term;
            r = r - term * b;
        }
        return {q, r};
    }

    /// Monic gcd; gcd(0, 0) = 0.
    friend FpPoly gcd(FpPoly a, FpPoly b) {
        while (!b.is_zero()) {
            FpPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = a.scaled(mod_inverse(a.leading_coeff(), a.p_));
        return a;
    }

    /// Multiply by D^k.
    FpPoly shifted_up(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<std::uint32_t> c(c_.size() + k, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
        return FpPoly(p_, std::move(c));
    }

    /// Exact division by D^k; requires the k lowest coefficients to vanish.
    FpPoly shifted_down(std::size_t k) const {
        if (is_zero()) return *this;
        if (trailing_degree() < k) throw Error("polynomial not divisible by D^k");
        return FpPoly(p_, std::vector<std::uint32_t>(c_.begin() + static_cast<long>(k), c_.end()));
    }

    friend bool operator==(const FpPoly& a, const FpPoly& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    /// Canonical text form, terms in ascending degree, e.g. "1+2*D^3".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            if (!out.empty()) out += '+';
            if (k == 0) {
                out += std::to_string(c_[k]);
            } else {
                if (c_[k] != 1) {
                    out += std::to_string(c_[k]);
                    out += '*';
                }
                out += 'D';
                if (k > 1) {
                    out += '^';
                    out += std::to_string(k);
                }
            }
        }
        return out;
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    void check_field(const FpPoly& other) const {
        if (p_ != other.p_) throw RingMismatchError("polynomials over different prime fields");
    }

    std::uint32_t p_;
    std::vector<std::uint32_t> c_;
};

/**
 * Reduced ratio of F_p polynomials with den(0) != 0, i.e. an element of the
 * ring of rational power series in D. Canonical form: gcd-reduced and the
 * denominator scaled so its constant term is 1; zero is 0/1.
 */
class FpFraction {
   public:
    FpFraction(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (num_.p() != den_.p()) throw RingMismatchError("fraction parts over different fields");
        if (den_.is_zero()) throw ParseError("zero denominator polynomial");
        reduce();
        if (den_.coeff(0) == 0)
            throw NotAUnitError("denominator has zero constant term: element is not a power series");
        normalize();
    }

    static FpFraction constant(std::uint32_t p, std::uint32_t value) {
        return FpFraction(FpPoly::constant(p, value), FpPoly::constant(p, 1));
    }

    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }
    std::uint32_t p() const { return num_.p(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    friend FpFraction operator+(const FpFraction& a, const FpFraction& b) {
        return FpFraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend FpFraction operator-(const FpFraction& a, const FpFraction& b) {
        return FpFraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend FpFraction operator*(const FpFraction& a, const FpFraction& b) {
        return FpFraction(a.num_ * b.num_, a.den_ * b.den_);
    }
    FpFraction operator-() const { return FpFraction(-num_, den_); }

    /// Number of leading D factors; only valid for nonzero elements.
    std::size_t trailing_degree() const { return num_.trailing_degree(); }

    /// Inverse of a unit (constant term of num nonzero).
    FpFraction unit_inverse() const {
        if (is_zero() || num_.coeff(0) == 0)
            throw NotAUnitError("power series element is not a unit");
        return FpFraction(den_, num_);
    }

    friend bool operator==(const FpFraction& a, const FpFraction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

   private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = FpPoly::constant(num_.p(), 1);
            return;
        }
        const FpPoly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
    }

    void normalize() {
        const std::uint32_t c0 = den_.coeff(0);
        if (c0 != 1) {
            const std::uint32_t inv = mod_inverse(c0, den_.p());
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    FpPoly num_;
    FpPoly den_;
};

}  // namespace dvrnc

#endif  // DVRNC_FP_POLY_HPP
