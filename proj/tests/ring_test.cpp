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

#include <catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace dvrnc;

namespace {
const RingSpec z3 = RingSpec::rational_padic(3);
const RingSpec f3d = RingSpec::rational_power_series(3);

RingElement z3_elem(long long num, long long den = 1) {
    return RingElement::from_rational(z3, BigInt(num), BigInt(den));
}
}  // namespace

TEST_CASE("ring spec construction") {
    CHECK(RingSpec::rational_padic(2).p == 2);
    CHECK_THROWS_AS(RingSpec::rational_padic(4), ParseError);
    CHECK_THROWS_AS(RingSpec::rational_power_series(1), ParseError);
    CHECK_THROWS_AS(RingSpec::rational_padic(0), ParseError);
    CHECK(z3 != f3d);
}

TEST_CASE("elements outside the ring are rejected") {
    CHECK_THROWS_AS(RingElement::from_rational(z3, BigInt(1), BigInt(3)), NotAUnitError);
    CHECK_THROWS_AS(RingElement::from_rational(z3, BigInt(1), BigInt(0)), ParseError);
    // 6/3 reduces to 2, which is inside
    CHECK(RingElement::from_rational(z3, BigInt(6), BigInt(3)) == z3_elem(2));
    // power series: denominator with zero constant term
    CHECK_THROWS_AS(RingElement::from_fraction(f3d, FpPoly::constant(3, 1),
                                               FpPoly::monomial(3, 1, 1)),
                    NotAUnitError);
    // D/(D + D^2) reduces to 1/(1+D), which is inside
    const RingElement ok = RingElement::from_fraction(
        f3d, FpPoly::monomial(3, 1, 1), FpPoly(3, {0, 1, 1}));
    CHECK(ok.str() == "1/(1+D)");
}

TEST_CASE("mixed-ring operations are rejected") {
    const RingElement a = z3_elem(1);
    const RingElement b = RingElement::one(f3d);
    CHECK_THROWS_AS(a + b, RingMismatchError);
    CHECK_THROWS_AS(a * b, RingMismatchError);
    const RingElement c = RingElement::one(RingSpec::rational_padic(5));
    CHECK_THROWS_AS(a + c, RingMismatchError);
}

TEST_CASE("valuation examples") {
    CHECK(valuation(z3_elem(3)) == Valuation(1));
    CHECK(valuation(z3_elem(2)) == Valuation(0));
    CHECK(valuation(z3_elem(0)) == Valuation::infinity());

    // -279: oracle = repeated exact division by 3 on a plain integer
    long long x = -279, count = 0;
    while (x % 3 == 0) {
        x /= 3;
        ++count;
    }
    CHECK(count == 2);
    CHECK(valuation(z3_elem(-279)) == Valuation(count));

    CHECK(valuation(RingElement::parse(f3d, "2*D^2/(1+D)")) == Valuation(2));
}

TEST_CASE("valuation is multiplicative and detects units") {
    std::mt19937_64 rng(11);
    for (const RingSpec& spec : {z3, f3d, RingSpec::rational_padic(5)}) {
        for (int i = 0; i < 200; ++i) {
            const RingElement a = testutil::random_element(rng, spec);
            const RingElement b = testutil::random_element(rng, spec);
            CHECK(valuation(a * b) == valuation(a) + valuation(b));
            if (!a.is_zero()) CHECK((valuation(a) == Valuation(0)) == a.is_unit());
        }
    }
}

TEST_CASE("residue examples") {
    // -3 = 0 mod 3: oracle is integer mod
    CHECK(residue(z3_elem(-3)) == 0);
    // 1/2 = 2 mod 3 since 2*2 = 4 = 1: oracle is the modular inverse
    CHECK(mod_inverse(2, 3) == 2);
    CHECK(residue(z3_elem(1, 2)) == 2);
    CHECK(residue(z3_elem(0)) == 0);
    CHECK(residue(RingElement::zero(f3d)) == 0);
    CHECK(residue(RingElement::parse(f3d, "2+D")) == 2);
}

TEST_CASE("residue is idempotent on representatives") {
    for (const RingSpec& spec : {z3, f3d, RingSpec::rational_padic(7)}) {
        for (CosetRep r = 0; r < spec.p; ++r)
            CHECK(residue(RingElement::from_representative(spec, r)) == r);
    }
}

TEST_CASE("peel examples") {
    CHECK(peel(z3_elem(-3), 0) == z3_elem(-1));
    CHECK(peel(z3_elem(-1), 2) == z3_elem(-1));
    CHECK(peel(z3_elem(0), 0) == z3_elem(0));
    // wrong representative signals a caller bug
    CHECK_THROWS_AS(peel(z3_elem(-3), 1), Error);
}

TEST_CASE("unit inverse and exact division stay in the ring") {
    CHECK(z3_elem(1, 2) == z3_elem(2).unit_inverse());
    CHECK_THROWS_AS(z3_elem(3).unit_inverse(), NotAUnitError);
    CHECK_THROWS_AS(z3_elem(0).unit_inverse(), NotAUnitError);
    CHECK(z3_elem(6).div_exact(z3_elem(3)) == z3_elem(2));
    CHECK_THROWS_AS(z3_elem(2).div_exact(z3_elem(3)), NotAUnitError);

    const RingElement d = RingElement::parse(f3d, "D");
    const RingElement num = RingElement::parse(f3d, "D^2+2*D^3");
    CHECK(num.div_exact(d) == RingElement::parse(f3d, "D+2*D^2"));
    CHECK_THROWS_AS(d.div_exact(num), NotAUnitError);

    std::mt19937_64 rng(12);
    for (const RingSpec& spec : {z3, f3d}) {
        for (int i = 0; i < 100; ++i) {
            const RingElement a = testutil::random_element(rng, spec);
            const RingElement b = testutil::random_element(rng, spec, 3, false);
            const RingElement prod = a * b;
            CHECK(prod.div_exact(b) == a);
        }
    }
}

TEST_CASE("literal parse and canonical serialization round-trip") {
    CHECK(RingElement::parse(z3, "2").str() == "2");
    CHECK(RingElement::parse(z3, "-3/2").str() == "-3/2");
    CHECK(RingElement::parse(z3, " 6 / 3 ").str() == "2");
    // 4/6 reduces to 2/3 whose denominator is divisible by 3
    CHECK_THROWS_AS(RingElement::parse(z3, "4/6"), NotAUnitError);
    CHECK_THROWS_AS(RingElement::parse(z3, "1/3"), NotAUnitError);
    CHECK_THROWS_AS(RingElement::parse(z3, "2x"), ParseError);
    CHECK_THROWS_AS(RingElement::parse(z3, ""), ParseError);

    CHECK(RingElement::parse(f3d, "1+2*D^3").str() == "1+2*D^3");
    CHECK(RingElement::parse(f3d, "(1+D)/(1+2*D)").str() == "(1+D)/(1+2*D)");
    CHECK(RingElement::parse(f3d, "0").str() == "0");
    CHECK(RingElement::parse(f3d, "4*D").str() == "D");
    CHECK(RingElement::parse(f3d, "1-D").str() == "1+2*D");
    CHECK_THROWS_AS(RingElement::parse(f3d, "1+"), ParseError);
    CHECK_THROWS_AS(RingElement::parse(f3d, "(1+D"), ParseError);

    std::mt19937_64 rng(13);
    for (const RingSpec& spec : {z3, f3d, RingSpec::rational_power_series(2)}) {
        for (int i = 0; i < 200; ++i) {
            const RingElement x = testutil::random_element(rng, spec);
            CHECK(RingElement::parse(spec, x.str()) == x);
        }
    }
}

TEST_CASE("big integer literals stay exact") {
    const BigInt coprime = boost::multiprecision::pow(BigInt(10), 40) + 1;  // digit sum 2
    const RingElement x = RingElement::from_rational(z3, 9 * coprime, BigInt(7));
    CHECK(RingElement::parse(z3, x.str()) == x);
    CHECK(valuation(x) == Valuation(2));
}
