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

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <dvrnc/dvrnc.hpp>

namespace {

using namespace dvrnc;

constexpr std::size_t kDefaultHorizonCap = 64;

std::size_t horizon_cap() {
    const char* env = std::getenv("DVRNC_HORIZON");
    if (env == nullptr || *env == '\0') return kDefaultHorizonCap;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || v == 0)
        throw ParseError("DVRNC_HORIZON must be a positive integer");
    return static_cast<std::size_t>(v);
}

struct Options {
    std::string spec_path;
    std::string node;
    std::optional<long long> delay;
    std::optional<std::size_t> steps;
    std::string messages_path;
    std::optional<std::uint64_t> seed;
    std::string format = "text";

    bool json() const { return format == "json"; }
};

std::string exponents_str(const std::vector<long long>& exps) {
    std::string out = "[";
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(exps[i]);
    }
    return out + "]";
}

int run_analyze(const Options& opt) {
    const LinearCode code = load_spec(opt.spec_path);
    const CodingVectors cv = compute_coding_vectors(code);
    const Matrix fv = received_matrix(code, cv, opt.node);
    const std::size_t omega = code.network().omega();
    const std::size_t r = rank(fv);
    const std::vector<long long> exps = invariant_exponents(fv);
    const bool decodable = r == omega;
    const std::optional<long long> dmin =
        decodable ? std::optional<long long>(min_delay(fv, omega)) : std::nullopt;

    if (opt.json()) {
        nlohmann::json j{{"node", opt.node},
                         {"omega", omega},
                         {"fan_in", fv.cols()},
                         {"rank", r},
                         {"invariant_exponents", exps},
                         {"decodable", decodable}};
        if (dmin) j["min_delay"] = *dmin;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "node " << opt.node << "\n";
        std::cout << "rank " << r << " (omega " << omega << ")\n";
        std::cout << "invariant exponents " << exponents_str(exps) << "\n";
        if (dmin)
            std::cout << "min delay " << *dmin << "\n";
        else
            std::cout << "NotDecodable: received matrix is rank deficient\n";
    }
    return decodable ? 0 : 2;
}

MessageStream resolve_messages(const Options& opt, const LinearCode& code) {
    const std::size_t omega = code.network().omega();
    if (!opt.messages_path.empty()) {
        MessageStream msgs = load_messages(opt.messages_path, omega, code.spec().p);
        if (opt.steps && *opt.steps != msgs.size())
            throw ParseError("--steps disagrees with the message file length");
        return msgs;
    }
    if (!opt.seed) throw ParseError("either --messages or --seed is required");
    if (!opt.steps) throw ParseError("--steps is required with --seed");
    return generate_messages(code.spec(), omega, *opt.steps, *opt.seed);
}

void check_horizon(std::size_t horizon) {
    if (horizon > horizon_cap())
        throw ParseError("needed horizon " + std::to_string(horizon) +
                         " exceeds DVRNC_HORIZON cap " + std::to_string(horizon_cap()));
}

int run_decode(const Options& opt) {
    const LinearCode code = load_spec(opt.spec_path);
    const MessageStream msgs = resolve_messages(opt, code);
    const CodingVectors cv = compute_coding_vectors(code);
    const Matrix fv = received_matrix(code, cv, opt.node);
    const std::size_t omega = code.network().omega();
    const long long dmin = min_delay(fv, omega);  // NotDecodable when rank deficient
    const long long delta = opt.delay.value_or(dmin);
    if (delta < dmin)
        throw DelayTooSmallError("delay " + std::to_string(delta) + " is below the minimum " +
                                 std::to_string(dmin) + " at node " + opt.node);

    const std::size_t horizon = msgs.size() + static_cast<std::size_t>(delta);
    check_horizon(horizon);

    const auto streams = encode_streams(code, cv, msgs, horizon);
    const std::vector<EdgeId> in = code.network().incoming(opt.node);
    auto slice = [&](std::size_t t) {
        RepVector r(in.size(), 0);
        for (std::size_t j = 0; j < in.size(); ++j) r[j] = streams.at(in[j])[t];
        return r;
    };

    const TruncatedCodingMatrix trunc = truncate_matrix(fv, horizon);
    const Matrix a0 = time_variant_matrix(trunc, delta);
    TruncatedCodingMatrix head{trunc.spec, trunc.rows, trunc.cols, {}};
    head.slices.assign(trunc.slices.begin(), trunc.slices.begin() + delta + 1);
    std::vector<RepVector> r_head;
    for (std::size_t t = 0; t <= static_cast<std::size_t>(delta); ++t) r_head.push_back(slice(t));
    DecoderState st = make_decoder(head, a0, delta, r_head);

    nlohmann::json trace = nlohmann::json::array();
    auto carries_json = [&]() {
        nlohmann::json c = nlohmann::json::array();
        for (const ElemVector& s : st.carries) {
            nlohmann::json row = nlohmann::json::array();
            for (const RingElement& x : s) row.push_back(x.str());
            c.push_back(std::move(row));
        }
        return c;
    };
    // one line per step, fields interleaved the way the worked table prints
    // them: s_0, r_t, s_1, r_{t+1}, ..., s_{delta+1}, m_t
    auto text_row = [&](std::size_t t, const RepVector& m, bool with_carries) {
        std::cout << "t=" << t;
        for (std::size_t j = 0; j < st.last_window.size(); ++j) {
            if (with_carries)
                std::cout << "  s_" << j << "=" << format_elem_vector(st.carries[j]);
            std::cout << "  r_" << t + j << "=" << format_rep_vector(st.last_window[j]);
        }
        if (with_carries)
            std::cout << "  s_" << st.carries.size() - 1 << "="
                      << format_elem_vector(st.carries.back());
        std::cout << "  m_" << t << "=" << format_rep_vector(m) << "\n";
    };

    MessageStream decoded{st.messages.front()};
    if (opt.json()) {
        trace.push_back({{"t", 0},
                         {"window", st.last_window},
                         {"carries", carries_json()},
                         {"m", st.messages.front()}});
    } else {
        std::cout << "node " << opt.node << ", delay " << delta << "\n";
        std::cout << "A0 = " << a0.str() << "\n";
        text_row(0, st.messages.front(), false);
    }
    for (std::size_t t = 1; t < msgs.size(); ++t) {
        const std::size_t j = t + static_cast<std::size_t>(delta);
        const RepVector m = decode_step(st, t, slice(j), trunc.slices[j]);
        decoded.push_back(m);
        if (opt.json())
            trace.push_back(
                {{"t", t}, {"window", st.last_window}, {"carries", carries_json()}, {"m", m}});
        else
            text_row(t, m, true);
    }

    const bool success = decoded == msgs;
    if (opt.json()) {
        nlohmann::json j{{"node", opt.node},  {"delay", delta},   {"min_delay", dmin},
                         {"a0", matrix_to_json(a0)}, {"trace", trace},
                         {"decoded", decoded}, {"messages", msgs}, {"success", success}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "decoded " << decoded.size() << "/" << msgs.size() << " messages, "
                  << (success ? "success" : "MISMATCH") << "\n";
    }
    return success ? 0 : 1;
}

int run_simulate(const Options& opt) {
    const LinearCode code = load_spec(opt.spec_path);
    const MessageStream msgs = resolve_messages(opt, code);
    const CodingVectors cv = compute_coding_vectors(code);

    // horizon: enough for the slowest receiver to emit all messages
    long long max_delay = 0;
    for (const std::string& v : code.network().nodes()) {
        if (v == code.network().source() || code.network().incoming(v).empty()) continue;
        const Matrix fv = received_matrix(code, cv, v);
        if (rank(fv) != code.network().omega()) continue;
        max_delay = std::max(max_delay, opt.delay.value_or(min_delay(fv, code.network().omega())));
    }
    const std::size_t horizon = msgs.size() + static_cast<std::size_t>(max_delay);
    check_horizon(horizon);

    const SimulationReport report = simulate(code, msgs, horizon, opt.delay, opt.seed);
    if (opt.json())
        std::cout << report_to_json(report).dump(2) << "\n";
    else
        std::cout << render_report_text(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic analysis and simulation of DVR-based linear network codes"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool with_node) {
        sub->add_option("--spec", opt.spec_path, "network+code file (JSON)")->required();
        if (with_node) sub->add_option("--node", opt.node, "receiver node id")->required();
        sub->add_option("--format", opt.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };
    auto add_stream_inputs = [&](CLI::App* sub) {
        sub->add_option("--delay", opt.delay, "decoding delay override");
        sub->add_option("--steps", opt.steps, "number of message slices");
        sub->add_option("--messages", opt.messages_path, "message stream file (JSON)");
        sub->add_option("--seed", opt.seed, "generate pseudorandom messages from this seed");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "rank, invariant exponents, minimum delay");
    add_common(analyze, true);

    CLI::App* decode = app.add_subcommand("decode", "streaming decode with a per-step trace");
    add_common(decode, true);
    add_stream_inputs(decode);

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "encode everywhere and decode at every receiver");
    add_common(simulate_cmd, false);
    add_stream_inputs(simulate_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (analyze->parsed()) return run_analyze(opt);
        if (decode->parsed()) return run_decode(opt);
        return run_simulate(opt);
    } catch (const DelayTooSmallError& e) {
        std::cerr << "DelayTooSmall: " << e.what() << "\n";
        return 2;
    } catch (const NotDecodableError& e) {
        std::cerr << "NotDecodable: " << e.what() << "\n";
        return 2;
    } catch (const CausalityViolationError& e) {
        std::cerr << "CausalityViolation: " << e.what() << "\n";
        return 1;
    } catch (const EmptyReceiverError& e) {
        std::cerr << "EmptyReceiver: " << e.what() << "\n";
        return 1;
    } catch (const InconsistentStreamError& e) {
        std::cerr << "InconsistentStream: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
