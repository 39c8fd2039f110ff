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

#ifndef DVRNC_NETWORK_HPP
#define DVRNC_NETWORK_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matrix.hpp"
#include "ring.hpp"

namespace dvrnc {

using EdgeId = std::uint32_t;

struct Edge {
    EdgeId id;
    std::string tail;
    std::string head;
};

/**
 * Directed multigraph with a designated source and an ordered list of omega
 * source channels. Cycles and parallel edges are allowed. Immutable after
 * construction.
 */
class Network {
   public:
    Network(std::vector<std::string> nodes, std::vector<Edge> edges, std::string source,
            std::vector<EdgeId> source_edges)
        : nodes_(std::move(nodes)),
          edges_(std::move(edges)),
          source_(std::move(source)),
          source_edges_(std::move(source_edges)) {
        std::set<std::string> node_set(nodes_.begin(), nodes_.end());
        if (node_set.size() != nodes_.size()) throw ParseError("duplicate node ids");
        if (!node_set.count(source_)) throw ParseError("source node '" + source_ + "' not declared");
        std::sort(edges_.begin(), edges_.end(),
                  [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            if (i > 0 && edges_[i - 1].id == e.id)
                throw ParseError("duplicate edge id " + std::to_string(e.id));
            if (!node_set.count(e.tail) || !node_set.count(e.head))
                throw ParseError("edge " + std::to_string(e.id) + " references unknown nodes");
            index_by_id_[e.id] = i;
        }
        if (source_edges_.empty()) throw ParseError("a code needs at least one source channel");
        std::set<EdgeId> seen;
        for (EdgeId id : source_edges_) {
            if (!seen.insert(id).second)
                throw ParseError("source edge " + std::to_string(id) + " listed twice");
            if (edge(id).tail != source_)
                throw ParseError("source edge " + std::to_string(id) +
                                 " does not leave the source");
        }
    }

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }  ///< ascending id
    const std::string& source() const { return source_; }
    const std::vector<EdgeId>& source_edges() const { return source_edges_; }
    std::size_t omega() const { return source_edges_.size(); }

    bool has_node(const std::string& v) const {
        return std::find(nodes_.begin(), nodes_.end(), v) != nodes_.end();
    }

    const Edge& edge(EdgeId id) const {
        auto it = index_by_id_.find(id);
        if (it == index_by_id_.end())
            throw ParseError("unknown edge id " + std::to_string(id));
        return edges_[it->second];
    }

    std::size_t edge_index(EdgeId id) const {
        auto it = index_by_id_.find(id);
        if (it == index_by_id_.end())
            throw ParseError("unknown edge id " + std::to_string(id));
        return it->second;
    }

    bool is_source_edge(EdgeId id) const {
        return std::find(source_edges_.begin(), source_edges_.end(), id) != source_edges_.end();
    }

    /// Incoming channels of v in ascending edge id.
    std::vector<EdgeId> incoming(const std::string& v) const {
        std::vector<EdgeId> in;
        for (const Edge& e : edges_)
            if (e.head == v) in.push_back(e.id);
        return in;
    }

   private:
    std::vector<std::string> nodes_;
    std::vector<Edge> edges_;
    std::string source_;
    std::vector<EdgeId> source_edges_;
    std::map<EdgeId, std::size_t> index_by_id_;
};

/**
 * A DVR-linear network code: a coding coefficient for every adjacent pair of
 * channels that carries one. Absent pairs mean coefficient zero.
 */
class LinearCode {
   public:
    using PairKey = std::pair<EdgeId, EdgeId>;

    LinearCode(Network network, RingSpec spec, std::map<PairKey, RingElement> coefficients)
        : net_(std::move(network)), spec_(spec), coeff_(std::move(coefficients)) {
        for (const auto& [key, value] : coeff_) {
            const auto& [d, e] = key;
            if (value.spec() != spec_)
                throw RingMismatchError("coding coefficient over the wrong ring");
            if (net_.edge(d).head != net_.edge(e).tail)
                throw ParseError("pair (" + std::to_string(d) + "," + std::to_string(e) +
                                 ") is not adjacent");
            if (net_.is_source_edge(e))
                throw ParseError("source edge " + std::to_string(e) +
                                 " cannot receive a coding coefficient");
        }
    }

    const Network& network() const { return net_; }
    const RingSpec& spec() const { return spec_; }
    const std::map<PairKey, RingElement>& coefficients() const { return coeff_; }

    RingElement coefficient(EdgeId d, EdgeId e) const {
        auto it = coeff_.find({d, e});
        return it == coeff_.end() ? RingElement::zero(spec_) : it->second;
    }

   private:
    Network net_;
    RingSpec spec_;
    std::map<PairKey, RingElement> coeff_;
};

/// Coding vectors, one omega-dimensional column per edge id.
using CodingVectors = std::map<EdgeId, ElemVector>;

/**
 * True iff every directed cycle of the adjacency-pair graph contains a pair
 * whose coefficient is divisible by z; equivalently, the edge-level digraph
 * restricted to unit (valuation 0) coefficients is acyclic.
 */
inline bool is_causal(const LinearCode& code) {
    const auto& edges = code.network().edges();
    const std::size_t n = edges.size();
    std::vector<std::vector<std::size_t>> arcs(n);
    for (const auto& [key, value] : code.coefficients()) {
        if (value.is_unit())
            arcs[code.network().edge_index(key.first)].push_back(
                code.network().edge_index(key.second));
    }
    // 0 = unseen, 1 = on stack, 2 = done
    std::vector<int> color(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (color[start] != 0) continue;
        stack.push_back({start, 0});
        color[start] = 1;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < arcs[node].size()) {
                const std::size_t succ = arcs[node][next++];
                if (color[succ] == 1) return false;
                if (color[succ] == 0) {
                    color[succ] = 1;
                    stack.push_back({succ, 0});
                }
            } else {
                color[node] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

/**
 * The unique coding vectors of a causal code. Solves F (I - K) = B over the
 * ring, where K holds the coefficients of adjacent pairs and B places the
 * natural basis on the source channels; causality makes I - K invertible
 * over the ring. Every vector is checked against the defining recursion.
 */
inline CodingVectors compute_coding_vectors(const LinearCode& code) {
    if (!is_causal(code))
        throw CausalityViolationError("a cycle carries only unit coding coefficients");
    const Network& net = code.network();
    const RingSpec& spec = code.spec();
    const std::size_t n = net.edges().size();
    const std::size_t omega = net.omega();

    Matrix system = Matrix::identity(spec, n);  // I - K
    for (const auto& [key, value] : code.coefficients()) {
        const std::size_t d = net.edge_index(key.first);
        const std::size_t e = net.edge_index(key.second);
        system.at(d, e) -= value;
    }
    Matrix basis = Matrix::zero(spec, omega, n);
    for (std::size_t i = 0; i < omega; ++i)
        basis.at(i, net.edge_index(net.source_edges()[i])) = RingElement::one(spec);

    const Matrix f = basis * invert_unimodular(system);

    CodingVectors cv;
    for (const Edge& e : net.edges()) {
        ElemVector column;
        column.reserve(omega);
        for (std::size_t i = 0; i < omega; ++i) column.push_back(f.at(i, net.edge_index(e.id)));
        cv.emplace(e.id, std::move(column));
    }
    // recursion residual must vanish exactly
    for (const Edge& e : net.edges()) {
        if (net.is_source_edge(e.id)) continue;
        ElemVector expect(omega, RingElement::zero(spec));
        for (EdgeId d : net.incoming(e.tail)) {
            const RingElement k = code.coefficient(d, e.id);
            if (k.is_zero()) continue;
            for (std::size_t i = 0; i < omega; ++i) expect[i] += k * cv.at(d)[i];
        }
        if (expect != cv.at(e.id))
            throw Error("coding-vector recursion residual is nonzero (internal error)");
    }
    return cv;
}

/**
 * Columns f_e for e in In(v), ascending edge id. For the source the identity
 * is returned by convention.
 */
inline Matrix received_matrix(const LinearCode& code, const CodingVectors& cv,
                              const std::string& v) {
    const Network& net = code.network();
    if (!net.has_node(v)) throw ParseError("unknown node '" + v + "'");
    const std::size_t omega = net.omega();
    if (v == net.source()) return Matrix::identity(code.spec(), omega);
    const std::vector<EdgeId> in = net.incoming(v);
    if (in.empty()) throw EmptyReceiverError("node '" + v + "' has no incoming channels");
    Matrix m = Matrix::zero(code.spec(), omega, in.size());
    for (std::size_t j = 0; j < in.size(); ++j)
        for (std::size_t i = 0; i < omega; ++i) m.at(i, j) = cv.at(in[j])[i];
    return m;
}

namespace detail {

inline void check_known_fields(const nlohmann::json& obj, std::initializer_list<const char*> known,
                               const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end())
            throw ParseError("unknown field '" + key + "' in " + where);
    }
}

inline const nlohmann::json& require_field(const nlohmann::json& obj, const char* name,
                                           const std::string& where) {
    if (!obj.contains(name)) throw ParseError("missing field '" + std::string(name) + "' in " + where);
    return obj.at(name);
}

inline EdgeId parse_edge_id(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_unsigned())
        throw ParseError("edge ids must be nonnegative integers (" + where + ")");
    return j.get<EdgeId>();
}

}  // namespace detail

inline RingSpec parse_ring_spec(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("'ring' must be an object");
    detail::check_known_fields(j, {"kind", "p"}, "ring");
    const std::string kind = detail::require_field(j, "kind", "ring").get<std::string>();
    const auto& pj = detail::require_field(j, "p", "ring");
    if (!pj.is_number_unsigned()) throw ParseError("'p' must be a nonnegative integer");
    const std::uint32_t p = pj.get<std::uint32_t>();
    if (kind == "rational-p-adic") return RingSpec::rational_padic(p);
    if (kind == "rational-power-series") return RingSpec::rational_power_series(p);
    throw ParseError("unknown ring kind '" + kind + "'");
}

/// Parse a network+code document, rejecting unknown fields.
inline LinearCode parse_code(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("top-level document must be an object");
    detail::check_known_fields(
        doc, {"ring", "omega", "nodes", "edges", "source", "source_edges", "coefficients"},
        "document");
    const RingSpec spec = parse_ring_spec(detail::require_field(doc, "ring", "document"));

    std::vector<std::string> nodes;
    for (const auto& n : detail::require_field(doc, "nodes", "document"))
        nodes.push_back(n.get<std::string>());

    std::vector<Edge> edges;
    for (const auto& e : detail::require_field(doc, "edges", "document")) {
        detail::check_known_fields(e, {"id", "tail", "head"}, "edge");
        edges.push_back(Edge{detail::parse_edge_id(detail::require_field(e, "id", "edge"), "edge"),
                             detail::require_field(e, "tail", "edge").get<std::string>(),
                             detail::require_field(e, "head", "edge").get<std::string>()});
    }

    std::vector<EdgeId> source_edges;
    for (const auto& s : detail::require_field(doc, "source_edges", "document"))
        source_edges.push_back(detail::parse_edge_id(s, "source_edges"));

    Network net(std::move(nodes), std::move(edges),
                detail::require_field(doc, "source", "document").get<std::string>(),
                std::move(source_edges));

    const auto& omega_field = detail::require_field(doc, "omega", "document");
    if (!omega_field.is_number_unsigned() || omega_field.get<std::size_t>() != net.omega())
        throw ParseError("'omega' does not match the number of source edges");

    std::map<LinearCode::PairKey, RingElement> coeffs;
    for (const auto& c : detail::require_field(doc, "coefficients", "document")) {
        detail::check_known_fields(c, {"from_edge", "to_edge", "value"}, "coefficient");
        const EdgeId from = detail::parse_edge_id(detail::require_field(c, "from_edge", "coefficient"),
                                                  "coefficient");
        const EdgeId to =
            detail::parse_edge_id(detail::require_field(c, "to_edge", "coefficient"), "coefficient");
        const std::string literal =
            detail::require_field(c, "value", "coefficient").get<std::string>();
        if (!coeffs.emplace(LinearCode::PairKey{from, to}, RingElement::parse(spec, literal)).second)
            throw ParseError("duplicate coefficient for pair (" + std::to_string(from) + "," +
                             std::to_string(to) + ")");
    }
    return LinearCode(std::move(net), spec, std::move(coeffs));
}

/// Load and validate a network+code file; causality is verified eagerly.
inline LinearCode load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
    }
    try {
        LinearCode code = parse_code(doc);
        if (!is_causal(code))
            throw CausalityViolationError("code in '" + path.string() + "' is not causal");
        return code;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed field in '" + path.string() + "': " + e.what());
    }
}

}  // namespace dvrnc

#endif  // DVRNC_NETWORK_HPP
