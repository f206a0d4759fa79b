#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "permsum/matrix.hpp"
#include "permsum/polynomial.hpp"

namespace permsum {

/// Controlled phase P_k(θ): multiplies |1…1⟩ on its qubits by e^{iθ}.
struct PhaseGate {
    double theta = 0.0;
    std::vector<int> qubits;  // 1..3 distinct wires
};

/// H^{⊗q} D_1 H^{⊗q} D_2 … D_l H^{⊗q}.
struct IqpCircuit {
    int q = 0;
    std::vector<std::vector<PhaseGate>> layers;
};

struct HadamardOp {
    int wire = 0;
};

struct ToffoliOp {
    int control1 = 0;
    int control2 = 0;
    int target = 0;
};

using HtOp = std::variant<HadamardOp, ToffoliOp, PhaseGate>;

/// Circuit over {H, Toffoli, phase}, applied in list order.
struct HtCircuit {
    int q = 0;
    std::vector<HtOp> ops;
};

/// Element of 𝔽₂[x]: XOR of multilinear monomials. Each monomial is a sorted
/// variable list; the empty monomial is the constant 1; no monomials means 0.
struct F2Expr {
    std::vector<std::vector<int>> monomials;

    static F2Expr variable(int v) { return F2Expr{{{v}}}; }
    static F2Expr constant(bool bit);

    bool is_constant() const;
    bool constant_value() const;  // meaningful when is_constant()
    bool operator==(const F2Expr&) const = default;
};

F2Expr operator^(const F2Expr& a, const F2Expr& b);
F2Expr operator*(const F2Expr& a, const F2Expr& b);

/// Fix variables to bits and simplify.
F2Expr substitute(const F2Expr& e, const std::vector<int>& values);  // -1 = free

std::string format_f2(const F2Expr& e);

/// Amplitude ⟨b|C|a⟩ = scale·Σ_x e^{i f(x)} over the free path variables.
struct SumOverPaths {
    int q = 0;
    int h = 0;                             // Hadamard count
    Polynomial path_poly;                  // over all q + h path variables
    std::vector<F2Expr> outputs;           // B_j(x), one per qubit
    std::vector<std::string> var_labels;   // creation site of each path variable
    std::vector<int> boundary;             // per path variable: 0/1 fixed, -1 free
    std::vector<int> free_vars;            // path variable behind each variable of `poly`
    Polynomial poly;                       // path_poly with the boundary substituted
    bool feasible = true;                  // false: a constant B_j(x) contradicts b_j

    double scale() const;  // 1/√2^h
};

/// Sum-over-paths of ⟨b|C|a⟩. Inputs are path variables 0..q-1; each Hadamard
/// creates the next one. Throws UnsupportedError for a non-π phase on a wire
/// whose expression is not a single variable, or for an output condition that
/// does not reduce to a constant or a single variable.
SumOverPaths extract_ht(const HtCircuit& circuit, const std::vector<bool>& in,
                        const std::vector<bool>& out);

SumOverPaths extract_iqp(const IqpCircuit& circuit, const std::vector<bool>& in,
                         const std::vector<bool>& out);

HtCircuit to_ht(const IqpCircuit& circuit);

/// (1/√2^h)·exp_sum over the free path variables.
Complex amplitude_direct(const SumOverPaths& paths, unsigned threads = 1);
Complex amplitude_direct(const IqpCircuit& circuit, const std::vector<bool>& in,
                         const std::vector<bool>& out, unsigned threads = 1);
Complex amplitude_direct(const HtCircuit& circuit, const std::vector<bool>& in,
                         const std::vector<bool>& out, unsigned threads = 1);

/// Dense 2^q state-vector amplitude, q ≤ 12. Test and cross-check oracle.
Complex statevector_amplitude(const HtCircuit& circuit, const std::vector<bool>& in,
                              const std::vector<bool>& out);
inline constexpr std::size_t kStatevectorCap = 12;

struct CircuitCounts {
    int q = 0;
    int layers = 0;
    std::array<int, 3> by_degree{};  // gate occurrences with 1, 2, 3 qubits
};

CircuitCounts gate_counts(const IqpCircuit& circuit);

/// Text formats:
///   iqp q=<int>                  ht q=<int>
///   layer                        h <w>
///   p <theta> <q1> [q2 [q3]]     ccx <c1> <c2> <target>
///   z <q> | cz <a> <b> | ccz <a> <b> <c>   (both formats)
/// Angles are decimals or multiples of pi such as `pi/8`, `-3*pi/4`.
IqpCircuit parse_iqp(std::string_view text);
HtCircuit parse_ht(std::string_view text);
std::string format_circuit(const IqpCircuit& circuit);
std::string format_circuit(const HtCircuit& circuit);

double parse_angle(std::string_view token);

/// Bit string such as "010" → {false, true, false}.
std::vector<bool> parse_bits(std::string_view bits);

}  // namespace permsum
