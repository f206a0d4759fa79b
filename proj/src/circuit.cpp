#include "permsum/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "permsum/error.hpp"
#include "permsum/matrix.hpp"

namespace permsum {

namespace {

F2Expr normalized(std::vector<std::vector<int>> monomials) {
    for (auto& m : monomials) {
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
    }
    std::sort(monomials.begin(), monomials.end());
    F2Expr out;
    for (std::size_t i = 0; i < monomials.size();) {
        std::size_t j = i;
        while (j < monomials.size() && monomials[j] == monomials[i]) ++j;
        if ((j - i) % 2 == 1) out.monomials.push_back(monomials[i]);
        i = j;
    }
    return out;
}

bool is_pi(double theta) { return std::abs(wrap_angle(theta) - kPi) < 1e-12; }

void check_wire(int w, int q, const char* what) {
    if (w < 0 || w >= q) {
        throw DomainError(std::string(what) + ": wire " + std::to_string(w) +
                          " out of range for q=" + std::to_string(q));
    }
}

void check_gate(const PhaseGate& g, int q) {
    if (g.qubits.empty() || g.qubits.size() > 3) {
        throw DomainError("phase gate must act on 1 to 3 qubits");
    }
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
        check_wire(g.qubits[i], q, "phase gate");
        for (std::size_t j = 0; j < i; ++j) {
            if (g.qubits[i] == g.qubits[j]) throw DomainError("phase gate qubits must be distinct");
        }
    }
}

void check_boundary(int q, const std::vector<bool>& in, const std::vector<bool>& out) {
    if (static_cast<int>(in.size()) != q || static_cast<int>(out.size()) != q) {
        throw DomainError("boundary bit strings must have length q=" + std::to_string(q));
    }
}

}  // namespace

F2Expr F2Expr::constant(bool bit) {
    F2Expr e;
    if (bit) e.monomials.push_back({});
    return e;
}

bool F2Expr::is_constant() const {
    return monomials.empty() || (monomials.size() == 1 && monomials[0].empty());
}

bool F2Expr::constant_value() const { return !monomials.empty(); }

F2Expr operator^(const F2Expr& a, const F2Expr& b) {
    auto all = a.monomials;
    all.insert(all.end(), b.monomials.begin(), b.monomials.end());
    return normalized(std::move(all));
}

F2Expr operator*(const F2Expr& a, const F2Expr& b) {
    std::vector<std::vector<int>> all;
    for (const auto& ma : a.monomials) {
        for (const auto& mb : b.monomials) {
            auto m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            all.push_back(std::move(m));
        }
    }
    return normalized(std::move(all));
}

F2Expr substitute(const F2Expr& e, const std::vector<int>& values) {
    std::vector<std::vector<int>> kept;
    for (const auto& m : e.monomials) {
        std::vector<int> rest;
        bool zero = false;
        for (int v : m) {
            const int value = values.at(static_cast<std::size_t>(v));
            if (value == 0) {
                zero = true;
                break;
            }
            if (value < 0) rest.push_back(v);
        }
        if (!zero) kept.push_back(std::move(rest));
    }
    return normalized(std::move(kept));
}

std::string format_f2(const F2Expr& e) {
    if (e.monomials.empty()) return "0";
    std::string out;
    for (const auto& m : e.monomials) {
        if (!out.empty()) out += " + ";
        if (m.empty()) {
            out += "1";
            continue;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i) out += "*";
            out += "x" + std::to_string(m[i]);
        }
    }
    return out;
}

double SumOverPaths::scale() const { return std::pow(2.0, -0.5 * h); }

SumOverPaths extract_ht(const HtCircuit& circuit, const std::vector<bool>& in,
                        const std::vector<bool>& out) {
    const int q = circuit.q;
    if (q < 1) throw DomainError("circuit needs at least one qubit");
    check_boundary(q, in, out);

    SumOverPaths paths;
    paths.q = q;
    for (const HtOp& op : circuit.ops) {
        if (std::holds_alternative<HadamardOp>(op)) ++paths.h;
    }
    const int n = q + paths.h;

    std::vector<F2Expr> wires;
    for (int j = 0; j < q; ++j) {
        wires.push_back(F2Expr::variable(j));
        paths.var_labels.push_back("input q" + std::to_string(j));
    }
    std::vector<RawClause> raw;
    int next = q;
    for (const HtOp& op : circuit.ops) {
        if (const auto* hadamard = std::get_if<HadamardOp>(&op)) {
            check_wire(hadamard->wire, q, "hadamard");
            const int y = next++;
            // π·p·y with p = XOR of monomials expands to a sum of π-clauses.
            for (const auto& m : wires[hadamard->wire].monomials) {
                auto vars = m;
                vars.push_back(y);
                raw.push_back({kPi, std::move(vars)});
            }
            wires[hadamard->wire] = F2Expr::variable(y);
            paths.var_labels.push_back("H" + std::to_string(y - q) + " q" +
                                       std::to_string(hadamard->wire));
        } else if (const auto* toffoli = std::get_if<ToffoliOp>(&op)) {
            check_wire(toffoli->control1, q, "toffoli");
            check_wire(toffoli->control2, q, "toffoli");
            check_wire(toffoli->target, q, "toffoli");
            if (toffoli->control1 == toffoli->control2 || toffoli->control1 == toffoli->target ||
                toffoli->control2 == toffoli->target) {
                throw DomainError("toffoli wires must be distinct");
            }
            wires[toffoli->target] =
                wires[toffoli->target] ^ (wires[toffoli->control1] * wires[toffoli->control2]);
        } else {
            const auto& gate = std::get<PhaseGate>(op);
            check_gate(gate, q);
            if (is_pi(gate.theta)) {
                F2Expr product = F2Expr::constant(true);
                for (int w : gate.qubits) product = product * wires[w];
                for (const auto& m : product.monomials) raw.push_back({kPi, m});
                continue;
            }
            std::vector<int> vars;
            for (int w : gate.qubits) {
                const auto& mono = wires[w].monomials;
                if (mono.size() != 1 || mono[0].size() != 1) {
                    throw UnsupportedError("phase gate with theta=" + format_double(gate.theta) +
                                           " on wire " + std::to_string(w) +
                                           " carrying composite expression " +
                                           format_f2(wires[w]));
                }
                vars.push_back(mono[0][0]);
            }
            raw.push_back({gate.theta, std::move(vars)});
        }
    }
    paths.path_poly = canonicalize(raw, n);
    paths.outputs = wires;

    paths.boundary.assign(static_cast<std::size_t>(n), -1);
    for (int j = 0; j < q; ++j) paths.boundary[static_cast<std::size_t>(j)] = in[j] ? 1 : 0;

    // Resolve B_j(x) = b_j until no condition makes progress.
    std::vector<bool> resolved(static_cast<std::size_t>(q), false);
    for (bool progress = true; progress;) {
        progress = false;
        for (int j = 0; j < q; ++j) {
            if (resolved[j]) continue;
            const F2Expr e = substitute(paths.outputs[j], paths.boundary);
            if (e.is_constant()) {
                if (e.constant_value() != out[j]) paths.feasible = false;
                resolved[j] = progress = true;
                continue;
            }
            // Single variable, possibly XOR 1.
            int var = -1;
            bool flip = false, single = true;
            for (const auto& m : e.monomials) {
                if (m.empty()) {
                    flip = true;
                } else if (m.size() == 1 && var < 0) {
                    var = m[0];
                } else {
                    single = false;
                }
            }
            if (!single) continue;
            paths.boundary[static_cast<std::size_t>(var)] = (out[j] != flip) ? 1 : 0;
            resolved[j] = progress = true;
        }
    }
    for (int j = 0; j < q; ++j) {
        if (!resolved[j]) {
            throw UnsupportedError("output condition on qubit " + std::to_string(j) + ": " +
                                   format_f2(substitute(paths.outputs[j], paths.boundary)) +
                                   " is not a single path variable");
        }
    }

    std::map<int, bool> fixed;
    for (int v = 0; v < n; ++v) {
        const int value = paths.boundary[static_cast<std::size_t>(v)];
        if (value < 0) {
            paths.free_vars.push_back(v);
        } else {
            fixed[v] = value == 1;
        }
    }
    paths.poly = substitute(paths.path_poly, fixed);
    return paths;
}

HtCircuit to_ht(const IqpCircuit& circuit) {
    HtCircuit ht;
    ht.q = circuit.q;
    auto hadamards = [&] {
        for (int w = 0; w < circuit.q; ++w) ht.ops.emplace_back(HadamardOp{w});
    };
    hadamards();
    for (const auto& layer : circuit.layers) {
        for (const PhaseGate& g : layer) ht.ops.emplace_back(g);
        hadamards();
    }
    return ht;
}

SumOverPaths extract_iqp(const IqpCircuit& circuit, const std::vector<bool>& in,
                         const std::vector<bool>& out) {
    return extract_ht(to_ht(circuit), in, out);
}

Complex amplitude_direct(const SumOverPaths& paths, unsigned threads) {
    if (!paths.feasible) return 0.0;
    return paths.scale() * exp_sum(paths.poly, threads);
}

Complex amplitude_direct(const IqpCircuit& circuit, const std::vector<bool>& in,
                         const std::vector<bool>& out, unsigned threads) {
    return amplitude_direct(extract_iqp(circuit, in, out), threads);
}

Complex amplitude_direct(const HtCircuit& circuit, const std::vector<bool>& in,
                         const std::vector<bool>& out, unsigned threads) {
    return amplitude_direct(extract_ht(circuit, in, out), threads);
}

Complex statevector_amplitude(const HtCircuit& circuit, const std::vector<bool>& in,
                              const std::vector<bool>& out) {
    const int q = circuit.q;
    check_boundary(q, in, out);
    require_within_cap(static_cast<std::size_t>(q), kStatevectorCap, "state-vector simulation");
    auto index_of = [q](const std::vector<bool>& bits) {
        std::size_t idx = 0;
        for (int j = 0; j < q; ++j) idx |= std::size_t{bits[j]} << j;
        return idx;
    };
    const std::size_t dim = std::size_t{1} << q;
    std::vector<Complex> state(dim);
    state[index_of(in)] = 1.0;
    const double r = 1.0 / std::sqrt(2.0);
    for (const HtOp& op : circuit.ops) {
        if (const auto* hadamard = std::get_if<HadamardOp>(&op)) {
            check_wire(hadamard->wire, q, "hadamard");
            const std::size_t bit = std::size_t{1} << hadamard->wire;
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & bit) continue;
                const Complex a = state[i], b = state[i | bit];
                state[i] = r * (a + b);
                state[i | bit] = r * (a - b);
            }
        } else if (const auto* toffoli = std::get_if<ToffoliOp>(&op)) {
            const std::size_t controls =
                (std::size_t{1} << toffoli->control1) | (std::size_t{1} << toffoli->control2);
            const std::size_t target = std::size_t{1} << toffoli->target;
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & controls) == controls && !(i & target)) std::swap(state[i], state[i | target]);
            }
        } else {
            const auto& gate = std::get<PhaseGate>(op);
            check_gate(gate, q);
            std::size_t mask = 0;
            for (int w : gate.qubits) mask |= std::size_t{1} << w;
            const Complex phase = unit_phase(gate.theta);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & mask) == mask) state[i] *= phase;
            }
        }
    }
    return state[index_of(out)];
}

CircuitCounts gate_counts(const IqpCircuit& circuit) {
    CircuitCounts counts;
    counts.q = circuit.q;
    counts.layers = static_cast<int>(circuit.layers.size());
    for (const auto& layer : circuit.layers) {
        for (const PhaseGate& g : layer) {
            if (g.qubits.empty() || g.qubits.size() > 3) {
                throw DomainError("phase gate must act on 1 to 3 qubits");
            }
            ++counts.by_degree[g.qubits.size() - 1];
        }
    }
    return counts;
}

double parse_angle(std::string_view token) {
    std::string t(token);
    const auto pi_at = t.find("pi");
    try {
        if (pi_at == std::string::npos) {
            std::size_t used = 0;
            const double v = std::stod(t, &used);
            if (used != t.size()) throw std::invalid_argument("trailing");
            return v;
        }
        std::string head = t.substr(0, pi_at);
        std::string tail = t.substr(pi_at + 2);
        if (!head.empty() && head.back() == '*') head.pop_back();
        double coeff = 1.0;
        if (head == "-") {
            coeff = -1.0;
        } else if (!head.empty() && head != "+") {
            std::size_t used = 0;
            coeff = std::stod(head, &used);
            if (used != head.size()) throw std::invalid_argument("coefficient");
        }
        double denom = 1.0;
        if (!tail.empty()) {
            if (tail.front() != '/') throw std::invalid_argument("denominator");
            std::size_t used = 0;
            denom = std::stod(tail.substr(1), &used);
            if (used != tail.size() - 1 || denom == 0.0) throw std::invalid_argument("denominator");
        }
        return coeff * kPi / denom;
    } catch (const std::exception&) {
        throw DomainError("bad angle '" + t + "'");
    }
}

std::vector<bool> parse_bits(std::string_view bits) {
    std::vector<bool> out;
    for (char c : bits) {
        if (c != '0' && c != '1') throw DomainError("bad bit string '" + std::string(bits) + "'");
        out.push_back(c == '1');
    }
    return out;
}

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

int parse_header(const std::vector<Line>& lines, const std::string& keyword) {
    if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != keyword ||
        lines[0].tokens[1].rfind("q=", 0) != 0) {
        throw DomainError("circuit: expected header '" + keyword + " q=<int>'");
    }
    try {
        const int q = std::stoi(lines[0].tokens[1].substr(2));
        if (q < 1) throw std::out_of_range("q");
        return q;
    } catch (const std::exception&) {
        throw DomainError("circuit: bad qubit count '" + lines[0].tokens[1] + "'");
    }
}

int parse_wire(const std::string& tok, int q, int line) {
    try {
        std::size_t used = 0;
        const int w = std::stoi(tok, &used);
        if (used != tok.size() || w < 0 || w >= q) throw std::out_of_range("wire");
        return w;
    } catch (const std::exception&) {
        throw DomainError("circuit line " + std::to_string(line) + ": bad wire '" + tok + "'");
    }
}

std::vector<int> parse_wires(const Line& line, std::size_t from, int q) {
    std::vector<int> wires;
    for (std::size_t i = from; i < line.tokens.size(); ++i) {
        wires.push_back(parse_wire(line.tokens[i], q, line.number));
    }
    return wires;
}

// p/z/cz/ccz; returns false if the keyword is not a phase gate.
bool parse_phase_line(const Line& line, int q, PhaseGate& gate) {
    const std::string& kw = line.tokens[0];
    std::size_t arity = 0;
    if (kw == "p") {
        if (line.tokens.size() < 3) {
            throw DomainError("circuit line " + std::to_string(line.number) +
                              ": 'p' needs an angle and 1 to 3 qubits");
        }
        gate.theta = parse_angle(line.tokens[1]);
        gate.qubits = parse_wires(line, 2, q);
    } else if (kw == "z" || kw == "cz" || kw == "ccz") {
        arity = kw.size();
        gate.theta = kPi;
        gate.qubits = parse_wires(line, 1, q);
        if (gate.qubits.size() != arity) {
            throw DomainError("circuit line " + std::to_string(line.number) + ": '" + kw +
                              "' takes " + std::to_string(arity) + " qubits");
        }
    } else {
        return false;
    }
    try {
        check_gate(gate, q);
    } catch (const DomainError& e) {
        throw DomainError("circuit line " + std::to_string(line.number) + ": " + e.what());
    }
    return true;
}

std::string format_gate(const PhaseGate& g) {
    std::string s = "p " + format_double(g.theta);
    for (int w : g.qubits) s += " " + std::to_string(w);
    return s + "\n";
}

}  // namespace

IqpCircuit parse_iqp(std::string_view text) {
    const auto lines = tokenize(text);
    IqpCircuit c;
    c.q = parse_header(lines, "iqp");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] == "layer" && line.tokens.size() == 1) {
            c.layers.emplace_back();
            continue;
        }
        PhaseGate gate;
        if (!parse_phase_line(line, c.q, gate)) {
            throw DomainError("circuit line " + std::to_string(line.number) + ": unknown gate '" +
                              line.tokens[0] + "'");
        }
        if (c.layers.empty()) c.layers.emplace_back();
        c.layers.back().push_back(std::move(gate));
    }
    if (c.layers.empty()) c.layers.emplace_back();
    return c;
}

HtCircuit parse_ht(std::string_view text) {
    const auto lines = tokenize(text);
    HtCircuit c;
    c.q = parse_header(lines, "ht");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& kw = line.tokens[0];
        if (kw == "h") {
            auto wires = parse_wires(line, 1, c.q);
            if (wires.size() != 1) {
                throw DomainError("circuit line " + std::to_string(line.number) +
                                  ": 'h' takes one wire");
            }
            c.ops.emplace_back(HadamardOp{wires[0]});
        } else if (kw == "ccx") {
            auto wires = parse_wires(line, 1, c.q);
            if (wires.size() != 3 || wires[0] == wires[1] || wires[0] == wires[2] ||
                wires[1] == wires[2]) {
                throw DomainError("circuit line " + std::to_string(line.number) +
                                  ": 'ccx' takes three distinct wires");
            }
            c.ops.emplace_back(ToffoliOp{wires[0], wires[1], wires[2]});
        } else {
            PhaseGate gate;
            if (!parse_phase_line(line, c.q, gate)) {
                throw DomainError("circuit line " + std::to_string(line.number) +
                                  ": unknown gate '" + kw + "'");
            }
            c.ops.emplace_back(std::move(gate));
        }
    }
    return c;
}

std::string format_circuit(const IqpCircuit& circuit) {
    std::string out = "iqp q=" + std::to_string(circuit.q) + "\n";
    for (const auto& layer : circuit.layers) {
        out += "layer\n";
        for (const PhaseGate& g : layer) out += format_gate(g);
    }
    return out;
}

std::string format_circuit(const HtCircuit& circuit) {
    std::string out = "ht q=" + std::to_string(circuit.q) + "\n";
    for (const HtOp& op : circuit.ops) {
        if (const auto* hadamard = std::get_if<HadamardOp>(&op)) {
            out += "h " + std::to_string(hadamard->wire) + "\n";
        } else if (const auto* toffoli = std::get_if<ToffoliOp>(&op)) {
            out += "ccx " + std::to_string(toffoli->control1) + " " +
                   std::to_string(toffoli->control2) + " " + std::to_string(toffoli->target) + "\n";
        } else {
            out += format_gate(std::get<PhaseGate>(op));
        }
    }
    return out;
}

}  // namespace permsum
