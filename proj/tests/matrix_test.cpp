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

Matrix z3_matrix(std::size_t rows, std::size_t cols, std::vector<std::string> literals) {
    std::vector<RingElement> entries;
    for (const auto& s : literals) entries.push_back(RingElement::parse(z3, s));
    return Matrix(z3, rows, cols, std::move(entries));
}

// the Shuttle received matrix [[2, -z], [0, -z]] with z = 3
Matrix shuttle_received() { return z3_matrix(2, 2, {"2", "-3", "0", "-3"}); }
}  // namespace

TEST_CASE("matrix construction rejects bad shapes and mixed rings") {
    CHECK_THROWS_AS(Matrix(z3, 0, 2, {}), RingMismatchError);
    CHECK_THROWS_AS(Matrix(z3, 1, 2, {RingElement::one(z3)}), RingMismatchError);
    CHECK_THROWS_AS(Matrix(z3, 1, 2, {RingElement::one(z3), RingElement::one(f3d)}),
                    RingMismatchError);
}

TEST_CASE("matrix product examples") {
    const Matrix a = shuttle_received();
    const Matrix decode = z3_matrix(2, 2, {"3/2", "-3/2", "0", "-1"});
    const Matrix prod = a * decode;
    CHECK(prod == z3_matrix(2, 2, {"3", "0", "0", "3"}));

    std::mt19937_64 rng(31);
    const Matrix m = testutil::random_matrix(rng, z3, 3, 4);
    CHECK(m * Matrix::identity(z3, 4) == m);
    CHECK(Matrix::identity(z3, 3) * m == m);

    // truncated product congruent to z*I modulo z^2
    const Matrix g = z3_matrix(2, 2, {"2", "6", "0", "6"});
    const Matrix a0 = z3_matrix(2, 2, {"6", "3", "0", "5"});
    const Matrix ga = g * a0;
    CHECK(ga == z3_matrix(2, 2, {"12", "36", "0", "30"}));
    const Matrix zi = Matrix::identity(z3, 2).scaled(RingElement::from_integer(z3, 3));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(valuation(ga.at(i, j) - zi.at(i, j)) >= Valuation(2));

    CHECK_THROWS_AS(g * z3_matrix(1, 1, {"1"}), RingMismatchError);
    CHECK_THROWS_AS(g * Matrix::identity(f3d, 2), RingMismatchError);
}

TEST_CASE("rank examples") {
    CHECK(rank(shuttle_received()) == 2);
    CHECK(rank(z3_matrix(2, 2, {"2", "0", "0", "0"})) == 1);
    CHECK(rank(Matrix::zero(z3, 3, 2)) == 0);
    CHECK(rank(Matrix::identity(f3d, 4)) == 4);
}

TEST_CASE("rank agrees with the count of finite Smith exponents") {
    std::mt19937_64 rng(32);
    for (const RingSpec& spec : {z3, f3d}) {
        for (int i = 0; i < 100; ++i) {
            const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
            const Matrix m = testutil::random_matrix(rng, spec, rows, cols);
            CHECK(rank(m) == smith_decompose(m).exponents.size());
        }
    }
}

TEST_CASE("minor gcd valuation examples") {
    const Matrix fv = shuttle_received();
    CHECK(minor_gcd_valuation(fv, 1) == Valuation(0));
    CHECK(minor_gcd_valuation(fv, 2) == Valuation(1));

    const Matrix g = z3_matrix(2, 2, {"2", "6", "0", "6"});
    CHECK(minor_gcd_valuation(g, 1) == Valuation(0));
    CHECK(minor_gcd_valuation(g, 2) == Valuation(1));

    CHECK_THROWS_AS(minor_gcd_valuation(fv, 3), Error);
    CHECK_THROWS_AS(minor_gcd_valuation(fv, 0), Error);
    // rank-deficient: Delta_2 undefined
    CHECK_THROWS_AS(minor_gcd_valuation(z3_matrix(2, 2, {"2", "0", "0", "0"}), 2), Error);
}

TEST_CASE("smith decomposition examples") {
    const SmithForm sf = smith_decompose(shuttle_received());
    CHECK(sf.exponents == std::vector<long long>{0, 1});
    CHECK(sf.u * sf.diagonal(2, 2) * sf.v == shuttle_received());

    const SmithForm id = smith_decompose(Matrix::identity(z3, 3));
    CHECK(id.exponents == std::vector<long long>{0, 0, 0});

    const Matrix diag = z3_matrix(2, 2, {"3", "0", "0", "27"});
    CHECK(smith_decompose(diag).exponents == std::vector<long long>{1, 3});
    // oracle: minor enumeration gives Delta_1 = z, Delta_2 = z^4
    CHECK(testutil::minor_gcd_valuation_brute(diag, 1) == Valuation(1));
    CHECK(testutil::minor_gcd_valuation_brute(diag, 2) == Valuation(4));
}

TEST_CASE("smith reconstruction and minor law on random matrices") {
    std::mt19937_64 rng(33);
    for (const RingSpec& spec : {z3, f3d}) {
        for (int i = 0; i < 120; ++i) {
            const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
            const Matrix m = testutil::random_matrix(rng, spec, rows, cols);
            const SmithForm sf = smith_decompose(m);

            REQUIRE(sf.u.rows() == rows);
            REQUIRE(sf.v.rows() == cols);
            CHECK(std::is_sorted(sf.exponents.begin(), sf.exponents.end()));
            CHECK(sf.u * sf.diagonal(rows, cols) * sf.v == m);

            // unimodularity: exact inverses exist over the ring
            CHECK(invert_unimodular(sf.u) * sf.u == Matrix::identity(spec, rows));
            CHECK(invert_unimodular(sf.v) * sf.v == Matrix::identity(spec, cols));

            // partial-sum law against brute-force minor enumeration
            long long sum = 0;
            for (std::size_t j = 1; j <= sf.exponents.size(); ++j) {
                sum += sf.exponents[j - 1];
                CHECK(testutil::minor_gcd_valuation_brute(m, j) == Valuation(sum));
                CHECK(minor_gcd_valuation(m, j) == Valuation(sum));
            }
        }
    }
}

TEST_CASE("random 3x4 reconstruction") {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 50; ++i) {
        const Matrix m = testutil::random_matrix(rng, z3, 3, 4);
        const SmithForm sf = smith_decompose(m);
        CHECK(sf.u * sf.diagonal(3, 4) * sf.v == m);
    }
}

TEST_CASE("unimodular inverse examples") {
    CHECK(invert_unimodular(Matrix::identity(z3, 3)) == Matrix::identity(z3, 3));
    CHECK(invert_unimodular(z3_matrix(2, 2, {"1", "3", "0", "1"})) ==
          z3_matrix(2, 2, {"1", "-3", "0", "1"}));

    const SmithForm sf = smith_decompose(shuttle_received());
    CHECK(sf.u * invert_unimodular(sf.u) == Matrix::identity(z3, 2));
    CHECK(invert_unimodular(sf.u) * sf.u == Matrix::identity(z3, 2));

    CHECK_THROWS_AS(invert_unimodular(z3_matrix(1, 1, {"3"})), NotAUnitError);
    CHECK_THROWS_AS(invert_unimodular(z3_matrix(1, 1, {"0"})), NotAUnitError);
    CHECK_THROWS_AS(invert_unimodular(Matrix::zero(z3, 2, 3)), RingMismatchError);
}

TEST_CASE("unimodular inverse on random unimodular matrices") {
    std::mt19937_64 rng(35);
    for (const RingSpec& spec : {z3, f3d}) {
        for (int i = 0; i < 60; ++i) {
            // build a unimodular matrix as a product of elementary operations
            const std::size_t n = 1 + rng() % 4;
            Matrix m = Matrix::identity(spec, n);
            for (int ops = 0; ops < 6; ++ops) {
                const std::size_t a = rng() % n, b = rng() % n;
                if (a == b) continue;
                const RingElement f = testutil::random_element(rng, spec, 2);
                for (std::size_t j = 0; j < n; ++j) m.at(a, j) += f * m.at(b, j);
            }
            const Matrix inv = invert_unimodular(m);
            CHECK(m * inv == Matrix::identity(spec, n));
            CHECK(inv * m == Matrix::identity(spec, n));
        }
    }
}

TEST_CASE("row vector times matrix") {
    const Matrix a0 = z3_matrix(2, 2, {"6", "3", "0", "5"});
    const ElemVector r{RingElement::from_integer(z3, 7), RingElement::zero(z3)};
    const ElemVector y = row_times_matrix(r, a0);
    CHECK(y[0] == RingElement::from_integer(z3, 42));
    CHECK(y[1] == RingElement::from_integer(z3, 21));
    CHECK_THROWS_AS(row_times_matrix(ElemVector{RingElement::one(z3)}, a0), RingMismatchError);
}
