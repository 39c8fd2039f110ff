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

#ifndef DVRNC_SIMULATE_HPP
#define DVRNC_SIMULATE_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "decode.hpp"
#include "network.hpp"

namespace dvrnc {

/// Ordered message slices m_0, m_1, ... over R, each omega wide.
using MessageStream = std::vector<RepVector>;

/**
 * Streaming per-channel encoder. Tick t emits, for every channel, the
 * coefficient d_t of the expansion of m * f_e, computed by the carry-based
 * convolution: d_t = sigma(sum_i sum_{j<=t} m_j[i] a^i_{t-j} + s_t) with one
 * carry s per channel. The symbol for tick t is produced before any later
 * message is seen.
 */
class StreamEncoder {
   public:
    StreamEncoder(const LinearCode& code, const CodingVectors& vectors, std::size_t horizon)
        : spec_(code.spec()), horizon_(horizon), tick_(0) {
        const Network& net = code.network();
        omega_ = net.omega();
        for (const Edge& e : net.edges()) {
            edge_ids_.push_back(e.id);
            std::vector<RepSeries> digits;
            digits.reserve(omega_);
            for (std::size_t i = 0; i < omega_; ++i)
                digits.push_back(expand(vectors.at(e.id)[i], horizon));
            digits_.push_back(std::move(digits));
            carries_.push_back(RingElement::zero(spec_));
        }
    }

    std::size_t ticks() const { return tick_; }
    std::size_t horizon() const { return horizon_; }

    /// Consume m_t and emit the tick-t symbol of every channel.
    std::map<EdgeId, CosetRep> step(const RepVector& m) {
        if (tick_ >= horizon_) throw Error("encoder horizon exhausted");
        if (m.size() != omega_) throw RingMismatchError("message width does not match omega");
        for (CosetRep r : m)
            if (r >= spec_.p) throw ParseError("message symbol out of range");
        history_.push_back(m);
        std::map<EdgeId, CosetRep> out;
        for (std::size_t e = 0; e < edge_ids_.size(); ++e) {
            RingElement total = carries_[e];
            for (std::size_t j = 0; j <= tick_; ++j) {
                const RepVector& mj = history_[j];
                for (std::size_t i = 0; i < omega_; ++i) {
                    const CosetRep a = digits_[e][i].coeffs[tick_ - j];
                    if (mj[i] == 0 || a == 0) continue;
                    total += RingElement::from_representative(spec_, mj[i]) *
                             RingElement::from_representative(spec_, a);
                }
            }
            const CosetRep d = total.residue();
            carries_[e] = total.peel(d);
            out[edge_ids_[e]] = d;
        }
        ++tick_;
        return out;
    }

   private:
    RingSpec spec_;
    std::size_t horizon_;
    std::size_t omega_;
    std::size_t tick_;
    std::vector<EdgeId> edge_ids_;
    std::vector<std::vector<RepSeries>> digits_;  ///< per edge, per component
    std::vector<RingElement> carries_;            ///< one merged carry per edge
    MessageStream history_;
};

/// Run the encoder for `horizon` ticks, zero-padding past the last message.
inline std::map<EdgeId, RepVector> encode_streams(const LinearCode& code,
                                                  const CodingVectors& vectors,
                                                  const MessageStream& msgs, std::size_t horizon) {
    StreamEncoder enc(code, vectors, horizon);
    std::map<EdgeId, RepVector> streams;
    for (const Edge& e : code.network().edges()) streams[e.id] = {};
    const RepVector zero(code.network().omega(), 0);
    for (std::size_t t = 0; t < horizon; ++t) {
        const auto symbols = enc.step(t < msgs.size() ? msgs[t] : zero);
        for (const auto& [id, d] : symbols) streams[id].push_back(d);
    }
    return streams;
}

struct ReceiverReport {
    std::string node;
    std::size_t fan_in = 0;
    bool full_rank = false;
    std::optional<long long> min_delay;
    std::optional<long long> delay;
    std::optional<Matrix> a0;
    MessageStream decoded;
    bool success = false;

    friend bool operator==(const ReceiverReport&, const ReceiverReport&) = default;
};

struct SimulationReport {
    RingSpec ring;
    std::size_t omega = 0;
    std::size_t steps = 0;
    std::size_t horizon = 0;
    std::optional<std::uint64_t> seed;
    MessageStream messages;
    std::map<EdgeId, RepVector> edge_streams;
    std::vector<ReceiverReport> receivers;
    double elapsed_ms = 0.0;

    friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

/**
 * Encode the message stream over the whole network and run streaming
 * decoding at every non-source node that has incoming channels. Receivers
 * decode at their minimum delay unless an override is given; an override
 * below some receiver's minimum fails fast with DelayTooSmall.
 */
inline SimulationReport simulate(const LinearCode& code, const MessageStream& msgs,
                                 std::size_t horizon,
                                 std::optional<long long> delay_override = std::nullopt,
                                 std::optional<std::uint64_t> seed = std::nullopt) {
    const auto start = std::chrono::steady_clock::now();
    if (horizon < msgs.size()) throw Error("horizon is shorter than the message stream");
    const Network& net = code.network();
    const std::size_t omega = net.omega();

    SimulationReport report{code.spec(), omega,   msgs.size(), horizon, seed,
                            msgs,        {},      {},          0.0};

    const CodingVectors vectors = compute_coding_vectors(code);
    report.edge_streams = encode_streams(code, vectors, msgs, horizon);

    for (const std::string& v : net.nodes()) {
        if (v == net.source()) continue;
        const std::vector<EdgeId> in = net.incoming(v);
        if (in.empty()) continue;

        ReceiverReport rr;
        rr.node = v;
        rr.fan_in = in.size();
        const Matrix fv = received_matrix(code, vectors, v);
        rr.full_rank = rank(fv) == omega;
        if (!rr.full_rank) {  // reported, never fatal: no delay can help
            report.receivers.push_back(std::move(rr));
            continue;
        }

        const long long dmin = min_delay(fv, omega);
        const long long delta = delay_override.value_or(dmin);
        rr.min_delay = dmin;
        rr.delay = delta;
        const TruncatedCodingMatrix trunc = truncate_matrix(fv, horizon);
        if (!decodable_with_delay(trunc, delta))
            throw DelayTooSmallError("node '" + v + "': delay " + std::to_string(delta) +
                                     " is below the minimum " + std::to_string(dmin));
        rr.a0 = time_variant_matrix(trunc, delta);

        const std::size_t usable =
            horizon >= static_cast<std::size_t>(delta) ? horizon - static_cast<std::size_t>(delta)
                                                       : 0;
        const std::size_t count = std::min(msgs.size(), usable);
        auto slice_of = [&](std::size_t t) {
            RepVector r(in.size(), 0);
            for (std::size_t j = 0; j < in.size(); ++j) r[j] = report.edge_streams.at(in[j])[t];
            return r;
        };
        if (count > 0) {
            std::vector<RepVector> r_head;
            for (std::size_t t = 0; t <= static_cast<std::size_t>(delta); ++t)
                r_head.push_back(slice_of(t));
            TruncatedCodingMatrix head{trunc.spec, trunc.rows, trunc.cols, {}};
            head.slices.assign(trunc.slices.begin(),
                               trunc.slices.begin() + static_cast<long>(delta) + 1);
            DecoderState st = make_decoder(head, *rr.a0, delta, r_head);
            rr.decoded.push_back(st.messages.front());
            for (std::size_t t = 1; t < count; ++t)
                rr.decoded.push_back(decode_step(st, t, slice_of(t + static_cast<std::size_t>(delta)),
                                                 trunc.slices[t + static_cast<std::size_t>(delta)]));
        }
        rr.success = count == msgs.size() && rr.decoded == msgs;
        report.receivers.push_back(std::move(rr));
    }

    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

/// Deterministic pseudorandom message stream; the seed is recorded in reports.
inline MessageStream generate_messages(const RingSpec& spec, std::size_t omega, std::size_t steps,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, spec.p - 1);
    MessageStream msgs(steps, RepVector(omega, 0));
    for (auto& m : msgs)
        for (auto& x : m) x = dist(rng);
    return msgs;
}

// --- JSON serialization ---------------------------------------------------

inline nlohmann::json ring_to_json(const RingSpec& spec) {
    return nlohmann::json{{"kind", spec.kind_name()}, {"p", spec.p}};
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const RingSpec& spec, const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix literal must be a nonempty array");
    std::vector<RingElement> entries;
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    for (const auto& row : j) {
        if (!row.is_array() || row.empty()) throw ParseError("matrix row must be a nonempty array");
        if (cols == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw ParseError("ragged matrix literal");
        for (const auto& cell : row) entries.push_back(RingElement::parse(spec, cell.get<std::string>()));
    }
    return Matrix(spec, rows, cols, std::move(entries));
}

inline MessageStream message_stream_from_json(const nlohmann::json& j, std::size_t omega,
                                              std::uint32_t p) {
    if (!j.is_array()) throw ParseError("message stream must be an array of vectors");
    MessageStream msgs;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != omega)
            throw ParseError("each message must be an array of " + std::to_string(omega) +
                             " symbols");
        RepVector m;
        for (const auto& cell : row) {
            if (!cell.is_number_unsigned() || cell.get<std::uint64_t>() >= p)
                throw ParseError("message symbols must be integers in [0, p-1]");
            m.push_back(cell.get<CosetRep>());
        }
        msgs.push_back(std::move(m));
    }
    return msgs;
}

inline MessageStream load_messages(const std::filesystem::path& path, std::size_t omega,
                                   std::uint32_t p) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
    }
    return message_stream_from_json(doc, omega, p);
}

inline nlohmann::json report_to_json(const SimulationReport& r) {
    nlohmann::json j;
    j["ring"] = ring_to_json(r.ring);
    j["omega"] = r.omega;
    j["steps"] = r.steps;
    j["horizon"] = r.horizon;
    if (r.seed) j["seed"] = *r.seed;
    j["messages"] = r.messages;
    nlohmann::json streams = nlohmann::json::object();
    for (const auto& [id, s] : r.edge_streams) streams[std::to_string(id)] = s;
    j["edge_streams"] = std::move(streams);
    nlohmann::json receivers = nlohmann::json::array();
    for (const ReceiverReport& rr : r.receivers) {
        nlohmann::json jr;
        jr["node"] = rr.node;
        jr["fan_in"] = rr.fan_in;
        jr["full_rank"] = rr.full_rank;
        if (rr.min_delay) jr["min_delay"] = *rr.min_delay;
        if (rr.delay) jr["delay"] = *rr.delay;
        if (rr.a0) jr["a0"] = matrix_to_json(*rr.a0);
        jr["decoded"] = rr.decoded;
        jr["success"] = rr.success;
        receivers.push_back(std::move(jr));
    }
    j["receivers"] = std::move(receivers);
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline SimulationReport report_from_json(const nlohmann::json& j) {
    SimulationReport r{parse_ring_spec(j.at("ring")), j.at("omega").get<std::size_t>(),
                       j.at("steps").get<std::size_t>(), j.at("horizon").get<std::size_t>(),
                       std::nullopt, {}, {}, {}, j.at("elapsed_ms").get<double>()};
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    r.messages = j.at("messages").get<MessageStream>();
    for (const auto& [key, value] : j.at("edge_streams").items())
        r.edge_streams[static_cast<EdgeId>(std::stoul(key))] = value.get<RepVector>();
    for (const auto& jr : j.at("receivers")) {
        ReceiverReport rr;
        rr.node = jr.at("node").get<std::string>();
        rr.fan_in = jr.at("fan_in").get<std::size_t>();
        rr.full_rank = jr.at("full_rank").get<bool>();
        if (jr.contains("min_delay")) rr.min_delay = jr.at("min_delay").get<long long>();
        if (jr.contains("delay")) rr.delay = jr.at("delay").get<long long>();
        if (jr.contains("a0")) rr.a0 = matrix_from_json(r.ring, jr.at("a0"));
        rr.decoded = jr.at("decoded").get<MessageStream>();
        rr.success = jr.at("success").get<bool>();
        r.receivers.push_back(std::move(rr));
    }
    return r;
}

// --- text rendering --------------------------------------------------------

inline std::string format_rep_vector(const RepVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(v[i]);
    }
    return out + ")";
}

inline std::string format_elem_vector(const ElemVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        out += v[i].str();
    }
    return out + ")";
}

inline std::string render_report_text(const SimulationReport& r) {
    std::ostringstream out;
    out << "ring " << r.ring.kind_name() << " p=" << r.ring.p << ", omega " << r.omega
        << ", steps " << r.steps << ", horizon " << r.horizon << "\n";
    if (r.seed) out << "seed " << *r.seed << "\n";
    out << "channel streams:\n";
    for (const auto& [id, s] : r.edge_streams) {
        out << "  edge " << id << ":";
        for (CosetRep d : s) out << " " << d;
        out << "\n";
    }
    for (const ReceiverReport& rr : r.receivers) {
        out << "receiver " << rr.node << " (fan-in " << rr.fan_in << "): ";
        if (!rr.full_rank) {
            out << "not decodable (rank deficient)\n";
            continue;
        }
        out << "min delay " << *rr.min_delay << ", delay " << *rr.delay << "\n";
        out << "  A0 = " << rr.a0->str() << "\n";
        out << "  decoded:";
        for (const RepVector& m : rr.decoded) out << " " << format_rep_vector(m);
        out << "\n  success " << (rr.success ? "true" : "false") << "\n";
    }
    out << "elapsed_ms " << r.elapsed_ms << "\n";
    return out.str();
}

}  // namespace dvrnc

#endif  // DVRNC_SIMULATE_HPP
