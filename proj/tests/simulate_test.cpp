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

std::filesystem::path data_dir() { return DVRNC_DATA_DIR; }

LinearCode shuttle() { return load_spec(data_dir() / "shuttle.json"); }

const MessageStream table_msgs{{2, 1}, {2, 1}, {1, 2}, {1, 1}};
}  // namespace

TEST_CASE("per-channel streams equal the expansion of m * f_e") {
    std::mt19937_64 rng(61);
    for (const RingSpec& spec : {z3, RingSpec::rational_power_series(3)}) {
        for (int trial = 0; trial < 20; ++trial) {
            const testutil::RandomCode rc = testutil::random_causal_code(rng, spec);
            const CodingVectors cv = compute_coding_vectors(rc.code);
            const std::size_t omega = rc.code.network().omega();
            const std::size_t horizon = 10;
            MessageStream msgs;
            for (int t = 0; t < 6; ++t) msgs.push_back(testutil::random_message(rng, spec, omega));
            const auto streams = encode_streams(rc.code, cv, msgs, horizon);

            // oracle: assemble the message exactly and multiply in the ring
            ElemVector m_exact(omega, RingElement::zero(spec));
            for (std::size_t j = msgs.size(); j-- > 0;)
                for (std::size_t c = 0; c < omega; ++c)
                    m_exact[c] += RingElement::from_representative(spec, msgs[j][c])
                                      .shifted(static_cast<long long>(j));
            for (const Edge& e : rc.code.network().edges()) {
                RingElement unit = RingElement::zero(spec);
                for (std::size_t c = 0; c < omega; ++c) unit += m_exact[c] * cv.at(e.id)[c];
                CHECK(streams.at(e.id) == expand(unit, horizon).coeffs);
            }
        }
    }
}

TEST_CASE("zero messages produce all-zero streams") {
    const LinearCode code = shuttle();
    const CodingVectors cv = compute_coding_vectors(code);
    const auto streams = encode_streams(code, cv, {{0, 0}, {0, 0}}, 6);
    for (const auto& [id, s] : streams)
        for (CosetRep d : s) CHECK(d == 0);
}

TEST_CASE("channel c follows the published carry pattern") {
    // d_0 = sigma(2 x_0); s_1 = (2 x_0 - d_0)/z; d_1 = sigma(2x_0 + 2y_0 + 2x_1 + s_1);
    // s_2 = (2x_0 + 2y_0 + 2x_1 + s_1 - d_1)/z; d_2 = sigma(2x_0+2y_0+2x_1+2y_1+2x_2+s_2)
    std::mt19937_64 rng(62);
    const LinearCode code = shuttle();
    const CodingVectors cv = compute_coding_vectors(code);
    for (int trial = 0; trial < 30; ++trial) {
        MessageStream msgs;
        for (int t = 0; t < 3; ++t) msgs.push_back(testutil::random_message(rng, z3, 2));
        const auto streams = encode_streams(code, cv, msgs, 3);
        const RepVector& c_stream = streams.at(4);

        auto elem = [&](long long v) { return RingElement::from_integer(z3, v); };
        const long long x0 = msgs[0][0], y0 = msgs[0][1];
        const long long x1 = msgs[1][0], y1 = msgs[1][1];
        const long long x2 = msgs[2][0];

        const RingElement t0 = elem(2 * x0);
        const CosetRep d0 = t0.residue();
        const RingElement s1 = t0.peel(d0);
        const RingElement t1 = elem(2 * x0 + 2 * y0 + 2 * x1) + s1;
        const CosetRep d1 = t1.residue();
        const RingElement s2 = t1.peel(d1);
        const RingElement t2 = elem(2 * x0 + 2 * y0 + 2 * x1 + 2 * y1 + 2 * x2) + s2;
        const CosetRep d2 = t2.residue();

        CHECK(c_stream == RepVector{d0, d1, d2});
    }
}

TEST_CASE("encoder emits tick t before seeing any later message") {
    const LinearCode code = shuttle();
    const CodingVectors cv = compute_coding_vectors(code);
    StreamEncoder enc_a(code, cv, 4);
    StreamEncoder enc_b(code, cv, 4);
    // identical first message, diverging afterwards
    const auto first_a = enc_a.step({2, 1});
    const auto first_b = enc_b.step({2, 1});
    CHECK(first_a == first_b);
    const auto second_a = enc_a.step({0, 1});
    const auto second_b = enc_b.step({2, 2});
    CHECK(second_a != second_b);  // divergence visible only from tick 1 on

    CHECK_THROWS_AS(enc_a.step({1, 2, 0}), RingMismatchError);
    CHECK_THROWS_AS(enc_a.step({9, 0}), ParseError);
}

TEST_CASE("shuttle simulation reproduces the worked example") {
    const SimulationReport report = simulate(shuttle(), table_msgs, 5);
    CHECK(report.omega == 2);
    CHECK(report.steps == 4);
    CHECK(report.horizon == 5);

    CHECK(report.edge_streams.at(2) == RepVector{1, 2, 0, 0, 1});
    // received vector stream at v: (1 0), (2 0), (0 2), (0 1), (1 2)
    const RepVector a_stream = report.edge_streams.at(2);
    const RepVector b_stream = report.edge_streams.at(3);
    const std::vector<RepVector> expected{{1, 0}, {2, 0}, {0, 2}, {0, 1}, {1, 2}};
    for (std::size_t t = 0; t < 5; ++t) {
        CHECK(a_stream[t] == expected[t][0]);
        CHECK(b_stream[t] == expected[t][1]);
    }

    REQUIRE(report.receivers.size() == 2);  // nodes u and v both have incoming channels
    const ReceiverReport* at_v = nullptr;
    for (const auto& rr : report.receivers)
        if (rr.node == "v") at_v = &rr;
    REQUIRE(at_v != nullptr);
    CHECK(at_v->full_rank);
    CHECK(at_v->min_delay == 1);
    CHECK(at_v->delay == 1);
    REQUIRE(at_v->a0.has_value());
    CHECK(at_v->a0->at(0, 0) == RingElement::from_integer(z3, 6));
    CHECK(at_v->a0->at(0, 1) == RingElement::from_integer(z3, 3));
    CHECK(at_v->a0->at(1, 0) == RingElement::from_integer(z3, 0));
    CHECK(at_v->a0->at(1, 1) == RingElement::from_integer(z3, 5));
    CHECK(at_v->decoded == table_msgs);
    CHECK(at_v->success);
}

TEST_CASE("simulation input validation") {
    CHECK_THROWS_AS(simulate(shuttle(), {{1, 2, 0}}, 4), RingMismatchError);
    CHECK_THROWS_AS(simulate(shuttle(), table_msgs, 2), Error);  // horizon too short
    CHECK_THROWS_AS(simulate(shuttle(), table_msgs, 6, 0), DelayTooSmallError);
    // a generous delay still works
    const SimulationReport r = simulate(shuttle(), table_msgs, 8, 2);
    for (const auto& rr : r.receivers)
        if (rr.node == "v") {
            CHECK(rr.delay == 2);
            CHECK(rr.success);
        }
}

TEST_CASE("rank-deficient receivers are reported, not fatal") {
    // omega = 2 but node w only hears one channel
    Network net({"s", "u", "w"},
                {{0, "s", "u"}, {1, "s", "u"}, {2, "u", "w"}}, "s", {0, 1});
    std::map<LinearCode::PairKey, RingElement> k;
    k.emplace(LinearCode::PairKey{0, 2}, RingElement::one(z3));
    const LinearCode code(net, z3, k);
    const SimulationReport report = simulate(code, {{1, 2}, {0, 1}}, 4);
    const ReceiverReport* at_w = nullptr;
    for (const auto& rr : report.receivers)
        if (rr.node == "w") at_w = &rr;
    REQUIRE(at_w != nullptr);
    CHECK_FALSE(at_w->full_rank);
    CHECK_FALSE(at_w->success);
    CHECK_FALSE(at_w->min_delay.has_value());
}

TEST_CASE("end-to-end round trip at the minimum delay") {
    std::mt19937_64 rng(63);
    for (const RingSpec& spec :
         {z3, RingSpec::rational_power_series(2), RingSpec::rational_padic(5)}) {
        for (int trial = 0; trial < 15; ++trial) {
            const testutil::RandomCode rc = testutil::random_causal_code(rng, spec);
            const std::size_t omega = rc.code.network().omega();
            MessageStream msgs;
            for (int t = 0; t < 12; ++t) msgs.push_back(testutil::random_message(rng, spec, omega));
            const SimulationReport report = simulate(rc.code, msgs, 12 + 6);
            bool found = false;
            for (const auto& rr : report.receivers) {
                if (rr.node != rc.receiver) continue;
                found = true;
                REQUIRE(rr.full_rank);
                CHECK(rr.decoded == msgs);
                CHECK(rr.success);
            }
            CHECK(found);
        }
    }
}

TEST_CASE("time-invariant and streaming decodes agree") {
    std::mt19937_64 rng(64);
    for (const RingSpec& spec : {z3, RingSpec::rational_power_series(3)}) {
        for (int trial = 0; trial < 12; ++trial) {
            const testutil::RandomCode rc = testutil::random_causal_code(rng, spec);
            const std::size_t omega = rc.code.network().omega();
            const std::size_t steps = 10;
            MessageStream msgs;
            for (std::size_t t = 0; t < steps; ++t)
                msgs.push_back(testutil::random_message(rng, spec, omega));

            const CodingVectors cv = compute_coding_vectors(rc.code);
            const Matrix fv = received_matrix(rc.code, cv, rc.receiver);
            const long long delta = min_delay(fv, omega);
            const std::size_t horizon = steps + static_cast<std::size_t>(delta) + 2;
            const SimulationReport report = simulate(rc.code, msgs, horizon);

            // the time-invariant route: r * A = z^delta * m, evaluated exactly
            const Matrix a = time_invariant_matrix(fv, delta);
            const std::vector<EdgeId> in = rc.code.network().incoming(rc.receiver);
            ElemVector r_exact(in.size(), RingElement::zero(spec));
            for (std::size_t j = 0; j < in.size(); ++j)
                r_exact[j] = assemble(RepSeries{spec, report.edge_streams.at(in[j])});
            const ElemVector y = row_times_matrix(r_exact, a);
            const RingElement zd = RingElement::uniformizer_pow(spec, delta);
            MessageStream shifted(steps, RepVector(omega, 0));
            for (std::size_t c = 0; c < omega; ++c) {
                const RepSeries digits = expand(y[c].div_exact(zd), steps);
                for (std::size_t t = 0; t < steps; ++t) shifted[t][c] = digits.coeffs[t];
            }
            CHECK(shifted == msgs);
            for (const auto& rr : report.receivers)
                if (rr.node == rc.receiver) CHECK(rr.decoded == shifted);
        }
    }
}

TEST_CASE("report serialization round-trips") {
    SimulationReport report = simulate(shuttle(), table_msgs, 6, std::nullopt, 12345);
    const nlohmann::json j = report_to_json(report);
    CHECK(report_from_json(j) == report);
    // via text to catch formatting loss
    const nlohmann::json reparsed = nlohmann::json::parse(j.dump());
    CHECK(report_from_json(reparsed) == report);

    const SimulationReport cnc =
        simulate(load_spec(data_dir() / "shuttle_cnc.json"), table_msgs, 6);
    CHECK(report_from_json(nlohmann::json::parse(report_to_json(cnc).dump())) == cnc);
}

TEST_CASE("matrix literals round-trip through json") {
    std::mt19937_64 rng(65);
    for (const RingSpec& spec : {z3, RingSpec::rational_power_series(2)}) {
        const Matrix m = testutil::random_matrix(rng, spec, 3, 2);
        CHECK(matrix_from_json(spec, matrix_to_json(m)) == m);
    }
    CHECK_THROWS_AS(matrix_from_json(z3, nlohmann::json::array()), ParseError);
}

TEST_CASE("seeded message generation is deterministic") {
    const MessageStream a = generate_messages(z3, 2, 6, 99);
    const MessageStream b = generate_messages(z3, 2, 6, 99);
    const MessageStream c = generate_messages(z3, 2, 6, 100);
    CHECK(a == b);
    CHECK(a != c);
    for (const RepVector& m : a)
        for (CosetRep x : m) CHECK(x < 3);
}

TEST_CASE("text rendering mentions the key facts") {
    const SimulationReport report = simulate(shuttle(), table_msgs, 5);
    const std::string text = render_report_text(report);
    CHECK(text.find("receiver v") != std::string::npos);
    CHECK(text.find("min delay 1") != std::string::npos);
    CHECK(text.find("success true") != std::string::npos);
}
