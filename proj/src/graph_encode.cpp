#include "permsum/graph_encode.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "permsum/error.hpp"
#include "permsum/gadgets.hpp"

namespace permsum {

EncodedGraph encode_polynomial(const Polynomial& poly, bool keep_clause_free) {
    for (const Clause& c : poly.clauses) {
        if (c.degree() > 3) {
            std::string vars;
            for (int v : c.vars) vars += " x" + std::to_string(v);
            throw UnsupportedError("no gadget for degree-" + std::to_string(c.degree()) +
                                   " clause theta=" + format_double(c.theta) + " on" + vars);
        }
    }
    std::vector<std::vector<std::size_t>> occurrences(static_cast<std::size_t>(poly.num_vars));
    for (std::size_t k = 0; k < poly.clauses.size(); ++k) {
        for (int v : poly.clauses[k].vars) occurrences[static_cast<std::size_t>(v)].push_back(k);
    }

    EncodedGraph g;
    int clause_free = 0;
    std::size_t next = 0;
    for (int v = 0; v < poly.num_vars; ++v) {
        const bool used = !occurrences[static_cast<std::size_t>(v)].empty();
        if (!used) ++clause_free;
        if (used || keep_clause_free) {
            g.variables.push_back({v, next++, {}});
        }
    }
    std::vector<Gadget> gadgets;
    for (const Clause& c : poly.clauses) {
        gadgets.push_back(clause_gadget(static_cast<int>(c.degree()), c.theta));
        g.clauses.push_back({next, gadgets.back().degree, gadgets.back().inner, c.theta, c.vars});
        next += static_cast<std::size_t>(gadgets.back().order());
    }

    g.adjacency = ComplexMatrix(next);
    ComplexMatrix& a = g.adjacency;
    for (std::size_t k = 0; k < gadgets.size(); ++k) {
        const std::size_t base = g.clauses[k].first;
        const ComplexMatrix& m = gadgets[k].matrix;
        for (std::size_t i = 0; i < m.order(); ++i)
            for (std::size_t j = 0; j < m.order(); ++j) a(base + i, base + j) = m(i, j);
    }
    for (VariableCycle& cycle : g.variables) {
        a(cycle.anchor, cycle.anchor) = 1.0;
        std::size_t prev = cycle.anchor;
        for (std::size_t k : occurrences[static_cast<std::size_t>(cycle.var)]) {
            const auto& vars = poly.clauses[k].vars;
            const auto slot = static_cast<std::size_t>(
                std::find(vars.begin(), vars.end(), cycle.var) - vars.begin());
            const std::size_t outer = g.clauses[k].first + slot;
            cycle.outer.push_back(outer);
            a(prev, outer) = 1.0;
            prev = outer;
        }
        if (prev != cycle.anchor) a(prev, cycle.anchor) = 1.0;
    }
    g.multiplier = unit_phase(poly.constant_phase) * std::ldexp(1.0, clause_free);
    return g;
}

Complex AmplitudeEncoding::amplitude(PermanentMethod method, unsigned threads) const {
    if (!paths.feasible) return 0.0;
    return scale * graph.multiplier * permanent(graph.adjacency, method, threads);
}

AmplitudeEncoding encode_amplitude(const SumOverPaths& paths, bool keep_clause_free) {
    AmplitudeEncoding enc;
    enc.paths = paths;
    enc.scale = paths.scale();
    if (paths.feasible) {
        enc.graph = encode_polynomial(paths.poly, keep_clause_free);
    } else {
        enc.graph.multiplier = 0.0;
    }
    return enc;
}

AmplitudeEncoding encode_amplitude(const IqpCircuit& circuit, const std::vector<bool>& in,
                                   const std::vector<bool>& out) {
    return encode_amplitude(extract_iqp(circuit, in, out));
}

AmplitudeEncoding encode_amplitude(const HtCircuit& circuit, const std::vector<bool>& in,
                                   const std::vector<bool>& out) {
    return encode_amplitude(extract_ht(circuit, in, out));
}

AmplitudeEncoding encode_zero_zero(const IqpCircuit& circuit) {
    const std::vector<bool> zeros(static_cast<std::size_t>(circuit.q), false);
    return encode_amplitude(extract_iqp(circuit, zeros, zeros), true);
}

namespace {

CircuitCounts single_layer_counts(const IqpCircuit& circuit) {
    if (circuit.layers.size() != 1) {
        throw DomainError("node-count formulas apply to single-layer IQP circuits");
    }
    return gate_counts(circuit);
}

}  // namespace

std::size_t predicted_node_count(const IqpCircuit& circuit) {
    const auto c = single_layer_counts(circuit);
    return static_cast<std::size_t>(c.q + c.by_degree[0] + 3 * c.by_degree[1] + 5 * c.by_degree[2]);
}

std::size_t ht_node_count(const IqpCircuit& circuit) {
    const auto c = single_layer_counts(circuit);
    return static_cast<std::size_t>(2 * c.q + c.by_degree[0] + 3 * c.by_degree[1] + 9 * c.by_degree[2]);
}

using nlohmann::json;

std::string export_graph_json(const EncodedGraph& g) {
    json entries = json::array();
    for (std::size_t i = 0; i < g.n(); ++i) {
        for (std::size_t j = 0; j < g.n(); ++j) {
            const Complex z = g.adjacency(i, j);
            if (z != Complex{}) entries.push_back({i, j, z.real(), z.imag()});
        }
    }
    json doc = {{"n", g.n()}, {"entries", std::move(entries)}};
    if (g.multiplier != Complex{1.0, 0.0}) {
        doc["multiplier"] = {g.multiplier.real(), g.multiplier.imag()};
    }
    if (!g.variables.empty() || !g.clauses.empty()) {
        json vars = json::array(), clauses = json::array();
        for (const auto& v : g.variables) {
            vars.push_back({{"var", v.var}, {"anchor", v.anchor}, {"outer", v.outer}});
        }
        for (const auto& c : g.clauses) {
            clauses.push_back({{"first", c.first}, {"degree", c.degree}, {"inner", c.inner},
                               {"theta", c.theta}, {"vars", c.vars}});
        }
        doc["meta"] = {{"variables", std::move(vars)}, {"clauses", std::move(clauses)}};
    }
    return doc.dump();
}

EncodedGraph parse_graph_json(std::string_view text) {
    EncodedGraph g;
    try {
        const json doc = json::parse(text);
        const auto n = doc.at("n").get<std::size_t>();
        g.adjacency = ComplexMatrix(n);
        std::vector<bool> seen(n * n, false);
        for (const json& e : doc.at("entries")) {
            if (!e.is_array() || e.size() != 4) throw DomainError("graph entry must be [i,j,re,im]");
            const auto i = e[0].get<std::size_t>(), j = e[1].get<std::size_t>();
            if (i >= n || j >= n) throw DomainError("graph entry index out of range");
            if (seen[i * n + j]) throw DomainError("duplicate graph entry");
            seen[i * n + j] = true;
            g.adjacency(i, j) = {e[2].get<double>(), e[3].get<double>()};
        }
        if (doc.contains("multiplier")) {
            const json& m = doc.at("multiplier");
            g.multiplier = {m.at(0).get<double>(), m.at(1).get<double>()};
        }
        if (doc.contains("meta")) {
            for (const json& v : doc.at("meta").at("variables")) {
                g.variables.push_back({v.at("var").get<int>(), v.at("anchor").get<std::size_t>(),
                                       v.at("outer").get<std::vector<std::size_t>>()});
            }
            for (const json& c : doc.at("meta").at("clauses")) {
                g.clauses.push_back({c.at("first").get<std::size_t>(), c.at("degree").get<int>(),
                                     c.at("inner").get<int>(), c.at("theta").get<double>(),
                                     c.at("vars").get<std::vector<int>>()});
            }
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("graph JSON: ") + e.what());
    }
    return g;
}

}  // namespace permsum
