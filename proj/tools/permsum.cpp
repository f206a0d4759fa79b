#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "permsum/circuit.hpp"
#include "permsum/error.hpp"
#include "permsum/gadgets.hpp"
#include "permsum/graph_encode.hpp"
#include "permsum/permanent.hpp"
#include "permsum/polynomial.hpp"
#include "permsum/resources.hpp"
#include "permsum/sampling.hpp"

using namespace permsum;
using nlohmann::json;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitResource = 2;
constexpr int kExitUsage = 64;

struct Globals {
    std::string format = "json";
    std::uint64_t seed = 0;
    std::string method = "ryser";
    unsigned threads = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json complex_json(Complex z) {
    // Adding +0.0 maps a negative zero to +0.0.
    return {{"re", z.real() + 0.0}, {"im", z.imag() + 0.0}};
}

void emit(const json& doc) {
    std::cout << doc.dump() << '\n';
}

std::string first_token(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream words(line);
        std::string word;
        if (words >> word && word[0] != '#') return word;
    }
    return {};
}

struct LoadedCircuit {
    std::optional<IqpCircuit> iqp;
    std::optional<HtCircuit> ht;

    int q() const { return iqp ? iqp->q : ht->q; }
};

LoadedCircuit load_circuit(const std::string& path) {
    const std::string text = read_file(path);
    const std::string head = first_token(text);
    LoadedCircuit c;
    if (head == "iqp") {
        c.iqp = parse_iqp(text);
    } else if (head == "ht") {
        c.ht = parse_ht(text);
    } else {
        throw DomainError("'" + path + "' is neither an iqp nor an ht circuit");
    }
    return c;
}

std::vector<bool> boundary_bits(const std::string& bits, int q, const char* what) {
    if (bits.empty()) return std::vector<bool>(static_cast<std::size_t>(q), false);
    std::vector<bool> v = parse_bits(bits);
    if (v.size() != static_cast<std::size_t>(q)) {
        throw DomainError(std::string(what) + " has " + std::to_string(v.size()) + " bits, circuit has " +
                          std::to_string(q) + " qubits");
    }
    return v;
}

EncodedGraph load_matrix(const std::string& path) {
    const std::string text = read_file(path);
    const auto start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && text[start] == '{') return parse_graph_json(text);
    EncodedGraph g;
    g.adjacency = parse_dense_matrix(text);
    return g;
}

IqpCircuit require_iqp(const LoadedCircuit& c) {
    if (!c.iqp) throw DomainError("this command needs an iqp circuit");
    return *c.iqp;
}

std::pair<int, int> parse_range(const std::string& spec) {
    auto number = [&](std::string_view s) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) {
            throw DomainError("bad q range '" + spec + "' (expected N or A..B)");
        }
        return v;
    };
    const auto dots = spec.find("..");
    if (dots == std::string::npos) {
        const int v = number(spec);
        return {v, v};
    }
    const int lo = number(std::string_view(spec).substr(0, dots));
    const int hi = number(std::string_view(spec).substr(dots + 2));
    if (lo > hi) throw DomainError("empty q range '" + spec + "'");
    return {lo, hi};
}

std::string count_str(const SampleCount& n) {
    return n.str();
}

SampleCount parse_count(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw DomainError("sample count must be a positive integer (got '" + text + "')");
    }
    SampleCount n(text);
    if (n == 0) throw DomainError("sample count must be positive");
    return n;
}

// encode ---------------------------------------------------------------------

struct EncodeArgs {
    std::string poly, circuit, in, out;
    bool keep_free = false;
};

void run_encode(const EncodeArgs& a, const Globals& g) {
    if (a.poly.empty() == a.circuit.empty()) throw DomainError("encode needs exactly one of --poly or --circuit");
    EncodedGraph graph;
    std::optional<double> scale;
    if (!a.poly.empty()) {
        graph = encode_polynomial(parse_polynomial(read_file(a.poly)), a.keep_free);
    } else {
        const LoadedCircuit c = load_circuit(a.circuit);
        const auto in = boundary_bits(a.in, c.q(), "--in");
        const auto out = boundary_bits(a.out, c.q(), "--out");
        const SumOverPaths paths = c.iqp ? extract_iqp(*c.iqp, in, out) : extract_ht(*c.ht, in, out);
        const AmplitudeEncoding enc = encode_amplitude(paths, a.keep_free);
        graph = enc.graph;
        scale = enc.scale;
    }
    if (g.format == "dense") {
        std::cout << format_dense_matrix(graph.adjacency);
        return;
    }
    json doc = json::parse(export_graph_json(graph));
    if (scale) doc["scale"] = *scale;
    emit(doc);
}

// permanent ------------------------------------------------------------------

struct PermanentArgs {
    std::string matrix;
    std::uint64_t samples = 100000;
};

void run_permanent(const PermanentArgs& a, const Globals& g) {
    const EncodedGraph graph = load_matrix(a.matrix);
    json doc;
    if (g.method == "gurvits") {
        doc = complex_json(gurvits_estimate(graph.adjacency, a.samples, g.seed, g.threads));
        doc["samples"] = a.samples;
    } else {
        doc = complex_json(permanent(graph.adjacency, parse_permanent_method(g.method), g.threads));
    }
    emit(doc);
}

// amplitude ------------------------------------------------------------------

struct AmplitudeArgs {
    std::string circuit, in, out, via = "graph";
};

void run_amplitude(const AmplitudeArgs& a, const Globals& g) {
    const LoadedCircuit c = load_circuit(a.circuit);
    const auto in = boundary_bits(a.in, c.q(), "--in");
    const auto out = boundary_bits(a.out, c.q(), "--out");
    const SumOverPaths paths = c.iqp ? extract_iqp(*c.iqp, in, out) : extract_ht(*c.ht, in, out);
    json doc;
    if (a.via == "graph") {
        const AmplitudeEncoding enc = encode_amplitude(paths);
        doc = complex_json(enc.amplitude(parse_permanent_method(g.method), g.threads));
        doc["vertices"] = enc.graph.n();
    } else if (a.via == "direct") {
        doc = complex_json(amplitude_direct(paths, g.threads));
    } else {
        doc = complex_json(statevector_amplitude(c.iqp ? to_ht(*c.iqp) : *c.ht, in, out));
    }
    doc["via"] = a.via;
    emit(doc);
}

// gadget-gen / gadget-verify -------------------------------------------------

struct GadgetArgs {
    int degree = 2;
    int inner = -1;
    std::string theta = "pi";
    bool symbolic = false;
    std::string variant = "symmetric";
    double tol = 1e-9;
};

void run_gadget_gen(const GadgetArgs& a, const Globals& g) {
    const int inner = a.inner >= 0 ? a.inner : clause_gadget(a.degree, 0.0).inner;
    const ConstraintSystem system = generate_constraints(a.degree, inner);
    if (g.format == "json") {
        json eqs = json::array();
        for (const Equation& e : system.equations) {
            eqs.push_back({{"tag", e.tag.label()},
                           {"rhs", e.rhs == Rhs::kPhase ? "T" : e.rhs == Rhs::kOne ? "1" : "0"},
                           {"terms", e.lhs.terms().size()}});
        }
        emit({{"degree", system.degree}, {"inner", system.inner}, {"symbols", system.num_symbols},
              {"equations", eqs}, {"text", export_constraints(system, parse_angle(a.theta), a.symbolic)}});
        return;
    }
    std::cout << export_constraints(system, parse_angle(a.theta), a.symbolic);
}

void run_gadget_verify(const GadgetArgs& a, const Globals&) {
    const double theta = parse_angle(a.theta);
    Gadget gadget;
    if (a.degree == 3) {
        if (a.variant != "reference" && a.variant != "symmetric") {
            throw DomainError("--variant must be reference or symmetric");
        }
        gadget = cubic_gadget(theta, a.variant == "reference" ? CubicVariant::kReference : CubicVariant::kSymmetric);
    } else {
        gadget = gadget_matrix(a.degree, theta);
    }
    const VerificationReport r = verify_gadget(gadget, theta, a.tol);
    json eqs = json::array(), failing = json::array();
    for (const EquationResidual& e : r.equations) {
        eqs.push_back({{"tag", e.tag.label()}, {"lhs", complex_json(e.lhs)}, {"rhs", complex_json(e.rhs)},
                       {"residual", e.residual}});
    }
    for (const EquationResidual& e : r.failing()) failing.push_back(e.tag.label());
    emit({{"degree", a.degree}, {"theta", theta}, {"variant", a.degree == 3 ? a.variant : "reference"},
          {"pass", r.pass}, {"tolerance", r.tolerance}, {"max_nonzero_residual", r.max_nonzero_residual},
          {"max_zero_residual", r.max_zero_residual}, {"failing", failing}, {"equations", eqs}});
}

// analyze --------------------------------------------------------------------

struct AnalyzeArgs {
    std::string circuit;
    double varsigma = 4.53;
};

void run_analyze(const AnalyzeArgs& a, const Globals& g) {
    const IqpCircuit c = require_iqp(load_circuit(a.circuit));
    const GateCounts counts = counts_of(c);
    SchemeParams params;
    params.varsigma = a.varsigma;
    const ResourceRow row = resource_table(counts);
    const Probability ps = success_prob_klm(counts, params);
    const CczCoefficients derived = derive_ccz_coefficients(params);

    const AmplitudeEncoding enc = encode_zero_zero(c);
    const std::size_t m = enc.graph.n();
    const double norm = m == 0 ? 1.0 : spectral_norm(enc.graph.adjacency);
    json doc = {
        {"q", counts.q},
        {"layers", c.layers.size()},
        {"counts", {{"z", counts.x}, {"cz", counts.y}, {"ccz", counts.z}}},
        {"resources",
         {{"klm_photons", row.klm_photons}, {"klm_modes", row.klm_modes},
          {"graph_photons", row.graph_photons}, {"graph_modes", row.graph_modes}}},
        {"klm_success", {{"probability", ps.value}, {"log2", ps.log2}}},
        {"graph", {{"vertices", m}, {"norm", norm}}},
        {"log2_alpha", log2_alpha(counts, norm, m, params)},
        {"log2_alpha_at_varsigma", log2_alpha(counts, params.varsigma,
                                              static_cast<std::size_t>(row.graph_photons), params)},
        {"ccz_threshold",
         {{"derived", ccz_threshold(counts.q, counts.x, counts.y, derived)},
          {"rounded", ccz_threshold(counts.q, counts.x, counts.y, kRoundedCcz)},
          {"coefficients", {{"c_x", derived.c_x}, {"c_y", derived.c_y}, {"c_q", derived.c_q}}}}},
    };
    if (c.layers.size() == 1) {
        doc["graph"]["predicted_vertices"] = predicted_node_count(c);
        doc["graph"]["ht_construction_vertices"] = ht_node_count(c);
    }
    try {
        const NormBound b = norm_bound_check(enc.graph);
        doc["norm_bound"] = {{"lower", b.lower}, {"observed", b.observed}, {"upper", b.upper}, {"pass", b.pass}};
    } catch (const DomainError&) {
        doc["norm_bound"] = nullptr;  // the bound covers pi gates only
    }
    if (m <= size_cap(kRyserCap)) {
        const Complex amp = enc.amplitude(parse_permanent_method(g.method), g.threads);
        doc["zero_zero"] = {{"amplitude", complex_json(amp)}, {"probability", std::norm(amp)}};
    }
    emit(doc);
}

// prob-curve -----------------------------------------------------------------

struct CurveArgs {
    std::string theorem = "alpha";
    std::string q = "6..12";
    std::string mode = "exact";
    std::string coefficients = "derived";
    std::string condition = "strict";
    bool complement = false;
};

void run_prob_curve(const CurveArgs& a, const Globals& g, bool format_given) {
    const auto [lo, hi] = parse_range(a.q);
    const ProbMode mode = a.mode == "exact" ? ProbMode::kExact
                          : a.mode == "log" ? ProbMode::kLog
                                            : throw DomainError("--mode must be exact or log");
    auto fraction = [&](int q) {
        if (a.theorem == "alpha") {
            if (a.coefficients != "derived" && a.coefficients != "rounded") {
                throw DomainError("--coefficients must be derived or rounded");
            }
            return alpha_fraction(q, mode,
                                  a.coefficients == "derived" ? CoefficientChoice::kDerived : CoefficientChoice::kRounded);
        }
        if (a.theorem == "photons") {
            if (a.condition != "strict" && a.condition != "seven") {
                throw DomainError("--condition must be strict or seven");
            }
            return photon_fraction(q, mode, a.condition == "strict" ? PhotonCondition::kStrict : PhotonCondition::kSevenZ);
        }
        throw DomainError("--theorem must be alpha or photons");
    };
    const bool csv = !format_given || g.format == "csv";
    if (csv) {
        std::cout << (a.complement ? "q,prob,log2_complement\n" : "q,prob\n");
        for (int q = lo; q <= hi; ++q) {
            const EnsembleFraction f = fraction(q);
            std::cout << q << ',' << format_double(f.value);
            if (a.complement) std::cout << ',' << format_double(f.log2_complement);
            std::cout << '\n';
        }
        return;
    }
    json rows = json::array();
    for (int q = lo; q <= hi; ++q) {
        const EnsembleFraction f = fraction(q);
        rows.push_back({{"q", q}, {"prob", f.value}, {"log2_complement", f.log2_complement}});
    }
    emit({{"theorem", a.theorem}, {"mode", a.mode}, {"rows", rows}});
}

// simulate -------------------------------------------------------------------

struct SimulateArgs {
    std::string circuit;
    std::string scheme = "graph";
    double epsilon = 0.01;
    double delta = 0.05;
    std::string samples;
    int runs = 1;
};

void run_simulate(const SimulateArgs& a, const Globals& g, bool format_given) {
    if (a.runs < 1) throw DomainError("--runs must be positive");
    const IqpCircuit c = require_iqp(load_circuit(a.circuit));
    const SchemeTarget target = true_postselect_prob(parse_scheme(a.scheme), c, parse_permanent_method(g.method), g.threads);
    const SampleCount n = a.samples.empty() ? plan_estimation(target, a.epsilon, a.delta).samples : parse_count(a.samples);
    const bool csv = !format_given || g.format == "csv";
    json rows = json::array();
    if (csv) std::cout << "seed,N,N_post,estimate\n";
    for (int r = 0; r < a.runs; ++r) {
        const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(r);
        const Estimate e = simulate_estimation(target, n, seed);
        if (csv) {
            std::cout << seed << ',' << count_str(n) << ',' << count_str(e.accepted) << ',' << format_double(e.estimate)
                      << '\n';
        } else {
            rows.push_back({{"seed", seed}, {"N", count_str(n)}, {"N_post", count_str(e.accepted)}, {"estimate", e.estimate}});
        }
    }
    if (!csv) {
        emit({{"scheme", a.scheme}, {"probability", target.probability}, {"rescale", target.rescale},
              {"zero_zero", target.zero_zero}, {"runs", rows}});
    }
}

// boost ----------------------------------------------------------------------

struct BoostArgs {
    std::string matrix;
    std::string evaluations;
    int points = 0;
};

void run_boost(const BoostArgs& a, const Globals&) {
    const ComplexMatrix m = load_matrix(a.matrix).adjacency;
    std::vector<double> eps;
    std::optional<std::vector<double>> values;
    if (!a.evaluations.empty()) {
        // CSV rows "epsilon,value"; a non-numeric first row is a header.
        std::istringstream in(read_file(a.evaluations));
        std::string line;
        values.emplace();
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos) throw DomainError("evaluation row must be 'epsilon,value': " + line);
            double e = 0.0, v = 0.0;
            const auto r1 = std::from_chars(line.data(), line.data() + comma, e);
            const auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), v);
            if (r1.ec != std::errc{} || r2.ec != std::errc{}) {
                if (first) {
                    first = false;
                    continue;
                }
                throw DomainError("evaluation row must be 'epsilon,value': " + line);
            }
            first = false;
            eps.push_back(e);
            values->push_back(v);
        }
    } else {
        const int n = a.points > 0 ? a.points : static_cast<int>(2 * m.order() + 1);
        eps = chebyshev_points(static_cast<std::size_t>(n), 0.0, 2.0);
    }
    const BoostResult r = boost_recover(m, eps, values);
    json doc = {{"value", r.value}, {"coefficients", r.coefficients}, {"rcond", r.rcond},
                {"ill_conditioned", r.ill_conditioned}, {"epsilons", eps}};
    if (!r.warning.empty()) doc["warning"] = r.warning;
    if (m.order() <= size_cap(kRyserCap)) doc["exact"] = std::norm(permanent(m));
    emit(doc);
}

// stats ----------------------------------------------------------------------

struct StatsArgs {
    int q = 3;
    double epsilon = 0.0;
    double delta = 0.05;
};

void run_stats(const StatsArgs& a, const Globals&) {
    const EnsembleStats s = ensemble_stats(a.q);
    json doc = {{"q", a.q}, {"log2_ensemble_size", s.log2_size}, {"ensemble_size", s.size()},
                {"expected_photons", s.expected_photons}};
    if (a.epsilon > 0.0) {
        const SampleCount n = hoeffding_samples(a.epsilon, a.delta);
        doc["hoeffding"] = {{"epsilon", a.epsilon}, {"delta", a.delta}, {"samples", count_str(n)},
                            {"achieved_epsilon", epsilon_for(n, a.delta)}};
    }
    emit(doc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential sums, circuit amplitudes and graph permanents"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "Output format: json, csv, text or dense")
        ->check(CLI::IsMember({"json", "csv", "text", "dense"}));
    app.add_option("--seed", g.seed, "Seed for all randomness");
    app.add_option("--method", g.method, "Permanent engine: naive, ryser, cycle_cover, block_auto, gurvits");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

    EncodeArgs encode;
    auto* cmd_encode = app.add_subcommand("encode", "Encode a polynomial or circuit amplitude as a graph");
    cmd_encode->add_option("--poly", encode.poly, "Polynomial file");
    cmd_encode->add_option("--circuit", encode.circuit, "Circuit file (iqp or ht)");
    cmd_encode->add_option("--in", encode.in, "Input bits (default all zeros)");
    cmd_encode->add_option("--out", encode.out, "Output bits (default all zeros)");
    cmd_encode->add_flag("--keep-free", encode.keep_free, "Keep clause-free variables as isolated vertices");

    PermanentArgs perm;
    auto* cmd_perm = app.add_subcommand("permanent", "Permanent of a dense matrix or graph JSON");
    cmd_perm->add_option("--matrix", perm.matrix, "Matrix file")->required();
    cmd_perm->add_option("--samples", perm.samples, "Samples for --method gurvits");

    AmplitudeArgs amp;
    auto* cmd_amp = app.add_subcommand("amplitude", "Circuit amplitude <out|C|in>");
    cmd_amp->add_option("--circuit", amp.circuit, "Circuit file (iqp or ht)")->required();
    cmd_amp->add_option("--in", amp.in, "Input bits (default all zeros)");
    cmd_amp->add_option("--out", amp.out, "Output bits (default all zeros)");
    cmd_amp->add_option("--via", amp.via, "graph, direct or statevector")
        ->check(CLI::IsMember({"graph", "direct", "statevector"}));

    GadgetArgs gen;
    auto* cmd_gen = app.add_subcommand("gadget-gen", "Export the gadget constraint system");
    cmd_gen->add_option("--degree", gen.degree, "Clause degree")->required();
    cmd_gen->add_option("--inner", gen.inner, "Inner vertices (default: as in the reference gadget)");
    cmd_gen->add_option("--theta", gen.theta, "Angle for the right-hand side");
    cmd_gen->add_flag("--symbolic", gen.symbolic, "Write e^{i theta} as T");

    GadgetArgs ver;
    auto* cmd_ver = app.add_subcommand("gadget-verify", "Residual report of a gadget against its constraints");
    cmd_ver->add_option("--degree", ver.degree, "Clause degree")->required();
    cmd_ver->add_option("--theta", ver.theta, "Angle");
    cmd_ver->add_option("--variant", ver.variant, "Cubic gadget: reference or symmetric");
    cmd_ver->add_option("--tol", ver.tol, "Residual tolerance");

    AnalyzeArgs analyze;
    auto* cmd_analyze = app.add_subcommand("analyze", "Resource report for an IQP circuit");
    cmd_analyze->add_option("--circuit", analyze.circuit, "IQP circuit file")->required();
    cmd_analyze->add_option("--varsigma", analyze.varsigma, "Norm bound used in the CCZ threshold");

    CurveArgs curve;
    auto* cmd_curve = app.add_subcommand("prob-curve", "Ensemble probability curve");
    cmd_curve->add_option("--theorem", curve.theorem, "alpha or photons");
    cmd_curve->add_option("--q", curve.q, "Qubit count N or range A..B");
    cmd_curve->add_option("--mode", curve.mode, "exact or log");
    cmd_curve->add_option("--coefficients", curve.coefficients, "alpha: derived or rounded");
    cmd_curve->add_option("--condition", curve.condition, "photons: strict (z > x+y) or seven (7z > x+y)");
    cmd_curve->add_flag("--complement", curve.complement, "Add log2 of the complementary fraction");

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte-Carlo estimate of the zero-zero probability");
    cmd_sim->add_option("--circuit", sim.circuit, "IQP circuit file")->required();
    cmd_sim->add_option("--scheme", sim.scheme, "graph or klm");
    cmd_sim->add_option("--epsilon", sim.epsilon, "Target accuracy of the rescaled estimate");
    cmd_sim->add_option("--delta", sim.delta, "Failure probability");
    cmd_sim->add_option("--samples", sim.samples, "Sample count (overrides the Hoeffding budget)");
    cmd_sim->add_option("--runs", sim.runs, "Runs with consecutive seeds");

    BoostArgs boost;
    auto* cmd_boost = app.add_subcommand("boost", "Recover |per A|^2 from |per(A + eps I)|^2");
    cmd_boost->add_option("--matrix", boost.matrix, "Matrix file")->required();
    cmd_boost->add_option("--evaluations", boost.evaluations, "CSV of epsilon,value rows");
    cmd_boost->add_option("--points", boost.points, "Chebyshev points on [0,2] (default 2M+1)");

    StatsArgs stats;
    auto* cmd_stats = app.add_subcommand("stats", "Ensemble size, expected photons and Hoeffding budget");
    cmd_stats->add_option("--q", stats.q, "Qubit count");
    cmd_stats->add_option("--epsilon", stats.epsilon, "Accuracy for a Hoeffding budget");
    cmd_stats->add_option("--delta", stats.delta, "Failure probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const bool format_given = app.count("--format") > 0;
    try {
        if (*cmd_encode) run_encode(encode, g);
        if (*cmd_perm) run_permanent(perm, g);
        if (*cmd_amp) run_amplitude(amp, g);
        if (*cmd_gen) run_gadget_gen(gen, format_given ? g : Globals{"text"});
        if (*cmd_ver) run_gadget_verify(ver, g);
        if (*cmd_analyze) run_analyze(analyze, g);
        if (*cmd_curve) run_prob_curve(curve, g, format_given);
        if (*cmd_sim) run_simulate(sim, g, format_given);
        if (*cmd_boost) run_boost(boost, g);
        if (*cmd_stats) run_stats(stats, g);
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return 0;
}
