#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "permsum/circuit.hpp"
#include "permsum/matrix.hpp"
#include "permsum/permanent.hpp"
#include "permsum/polynomial.hpp"

namespace permsum {

struct VariableCycle {
    int var = 0;
    std::size_t anchor = 0;
    std::vector<std::size_t> outer;  // visited after the anchor, in clause order

    bool operator==(const VariableCycle&) const = default;
};

struct ClauseBlock {
    std::size_t first = 0;  // first vertex of the gadget block
    int degree = 0;
    int inner = 0;
    double theta = 0.0;
    std::vector<int> vars;

    bool operator==(const ClauseBlock&) const = default;
};

/// Σ_x e^{i f(x)} = multiplier · per(adjacency).
struct EncodedGraph {
    ComplexMatrix adjacency;
    Complex multiplier{1.0, 0.0};
    std::vector<VariableCycle> variables;
    std::vector<ClauseBlock> clauses;

    std::size_t n() const { return adjacency.order(); }
    bool operator==(const EncodedGraph&) const = default;
};

/// Anchors first (one per variable, in variable order), then one gadget block
/// per clause. Clause-free variables become a factor 2 in the multiplier; with
/// `keep_clause_free` they also keep an isolated self-loop anchor.
/// Throws UnsupportedError for clauses of degree ≥ 4.
EncodedGraph encode_polynomial(const Polynomial& poly, bool keep_clause_free = false);

/// ⟨b|C|a⟩ = scale · multiplier · per(adjacency).
struct AmplitudeEncoding {
    SumOverPaths paths;
    EncodedGraph graph;
    double scale = 1.0;  // 1/√2^h

    Complex amplitude(PermanentMethod method = PermanentMethod::kRyser, unsigned threads = 1) const;
};

AmplitudeEncoding encode_amplitude(const SumOverPaths& paths, bool keep_clause_free = false);
AmplitudeEncoding encode_amplitude(const IqpCircuit& circuit, const std::vector<bool>& in,
                                   const std::vector<bool>& out);
AmplitudeEncoding encode_amplitude(const HtCircuit& circuit, const std::vector<bool>& in,
                                   const std::vector<bool>& out);

/// ⟨0…0|C|0…0⟩ with every free variable kept as a vertex.
AmplitudeEncoding encode_zero_zero(const IqpCircuit& circuit);

/// q + #deg1 + 3·#deg2 + 5·#deg3 for IQP-1 circuits.
std::size_t predicted_node_count(const IqpCircuit& circuit);
/// 2q + #deg1 + 3·#deg2 + 9·#deg3, the Hadamard-Toffoli construction's count.
std::size_t ht_node_count(const IqpCircuit& circuit);

/// {"n":..,"entries":[[i,j,re,im],..],"multiplier":[re,im],"meta":{..}};
/// entries sorted by (i,j), zeros omitted. Multiplier and meta are omitted
/// when trivial. Round-trips losslessly.
std::string export_graph_json(const EncodedGraph& g);
EncodedGraph parse_graph_json(std::string_view text);

}  // namespace permsum
