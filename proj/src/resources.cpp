#include "permsum/resources.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "permsum/error.hpp"
#include "permsum/gadgets.hpp"

namespace permsum {

namespace {

using boost::multiprecision::cpp_int;

long long choose2(long long n) { return n * (n - 1) / 2; }
long long choose3(long long n) { return n * (n - 1) * (n - 2) / 6; }

// Smallest z counted for given (x, y); may exceed C(q,3) or be ≤ 0.
using MinZ = std::function<std::int64_t(int x, int y)>;

std::vector<cpp_int> binomial_row(long long n) {
    std::vector<cpp_int> row(static_cast<std::size_t>(n + 1));
    row[0] = 1;
    for (long long k = 0; k < n; ++k) {
        row[static_cast<std::size_t>(k + 1)] = row[static_cast<std::size_t>(k)] * (n - k) / (k + 1);
    }
    return row;
}

// num / 2^exponent as a double without overflowing intermediate values.
double ratio_to_power_of_two(const cpp_int& num, std::uint64_t exponent) {
    if (num == 0) return 0.0;
    const auto top = static_cast<long long>(boost::multiprecision::msb(num));
    const long long shift = std::max(0LL, top - 62);
    const double mantissa = static_cast<double>(static_cast<cpp_int>(num >> shift));
    return std::ldexp(mantissa, static_cast<int>(shift - static_cast<long long>(exponent)));
}

double log2_of(const cpp_int& num) {
    if (num == 0) return -HUGE_VAL;
    const auto top = static_cast<long long>(boost::multiprecision::msb(num));
    const long long shift = std::max(0LL, top - 62);
    return std::log2(static_cast<double>(static_cast<cpp_int>(num >> shift))) + static_cast<double>(shift);
}

std::uint64_t ensemble_log2_size(int q) {
    return static_cast<std::uint64_t>(q + choose2(q) + choose3(q));
}

EnsembleFraction ensemble_fraction_exact(int q, const MinZ& min_z) {
    if (q > kExactEnsembleCap) {
        throw ResourceError("exact ensemble sums are capped at q=" + std::to_string(kExactEnsembleCap) +
                            " (got " + std::to_string(q) + "); use the log mode");
    }
    const long long n2 = choose2(q), n3 = choose3(q);
    const auto row_q = binomial_row(q), row2 = binomial_row(n2), row3 = binomial_row(n3);
    // suffix[t] = Σ_{z ≥ t} C(n3, z)
    std::vector<cpp_int> suffix(static_cast<std::size_t>(n3 + 2));
    for (long long t = n3; t >= 0; --t) {
        suffix[static_cast<std::size_t>(t)] =
            suffix[static_cast<std::size_t>(t + 1)] + row3[static_cast<std::size_t>(t)];
    }
    // Group the (x, y) weights by threshold so each suffix is multiplied once.
    std::map<long long, cpp_int> weight_by_t;
    for (int x = 0; x <= q; ++x) {
        for (long long y = 0; y <= n2; ++y) {
            const long long t = std::clamp<long long>(min_z(x, static_cast<int>(y)), 0, n3 + 1);
            weight_by_t[t] += row_q[static_cast<std::size_t>(x)] * row2[static_cast<std::size_t>(y)];
        }
    }
    cpp_int total = 0;
    for (const auto& [t, w] : weight_by_t) total += w * suffix[static_cast<std::size_t>(t)];
    const std::uint64_t e = ensemble_log2_size(q);
    const cpp_int rest = (cpp_int(1) << e) - total;
    return {ratio_to_power_of_two(total, e), ratio_to_power_of_two(rest, e),
            log2_of(rest) - static_cast<double>(e)};
}

double log_choose(long long n, long long k) {
    return std::lgamma(static_cast<double>(n + 1)) - std::lgamma(static_cast<double>(k + 1)) -
           std::lgamma(static_cast<double>(n - k + 1));
}

double log_add(double a, double b) {
    if (a == -HUGE_VAL) return b;
    if (b == -HUGE_VAL) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

EnsembleFraction ensemble_fraction_log(int q, const MinZ& min_z) {
    const long long n2 = choose2(q), n3 = choose3(q);
    // log Σ_{z ≥ t} and log Σ_{z < t} of C(n3, z)
    std::vector<double> log_suffix(static_cast<std::size_t>(n3 + 2), -HUGE_VAL);
    std::vector<double> log_prefix(static_cast<std::size_t>(n3 + 2), -HUGE_VAL);
    for (long long t = n3; t >= 0; --t) {
        log_suffix[static_cast<std::size_t>(t)] =
            log_add(log_suffix[static_cast<std::size_t>(t + 1)], log_choose(n3, t));
    }
    for (long long t = 1; t <= n3 + 1; ++t) {
        log_prefix[static_cast<std::size_t>(t)] =
            log_add(log_prefix[static_cast<std::size_t>(t - 1)], log_choose(n3, t - 1));
    }
    double log_in = -HUGE_VAL, log_out = -HUGE_VAL;
    for (int x = 0; x <= q; ++x) {
        for (long long y = 0; y <= n2; ++y) {
            const auto t = static_cast<std::size_t>(std::clamp<long long>(min_z(x, static_cast<int>(y)), 0, n3 + 1));
            const double w = log_choose(q, x) + log_choose(n2, y);
            log_in = log_add(log_in, w + log_suffix[t]);
            log_out = log_add(log_out, w + log_prefix[t]);
        }
    }
    const double log_size = static_cast<double>(ensemble_log2_size(q)) * std::log(2.0);
    return {std::exp(log_in - log_size), std::exp(log_out - log_size), (log_out - log_size) / std::log(2.0)};
}

EnsembleFraction ensemble_fraction(int q, ProbMode mode, const MinZ& min_z) {
    if (q < 0) throw DomainError("qubit count must be non-negative");
    return mode == ProbMode::kExact ? ensemble_fraction_exact(q, min_z) : ensemble_fraction_log(q, min_z);
}

}  // namespace

void validate(const GateCounts& c) {
    if (c.q < 0 || c.x < 0 || c.x > c.q || c.y < 0 || c.y > choose2(c.q) || c.z < 0 ||
        c.z > choose3(c.q)) {
        throw DomainError("gate counts out of range: q=" + std::to_string(c.q) + " x=" + std::to_string(c.x) +
                          " y=" + std::to_string(c.y) + " z=" + std::to_string(c.z));
    }
}

GateCounts counts_of(const IqpCircuit& circuit) {
    const CircuitCounts c = gate_counts(circuit);
    return {c.q, c.by_degree[0], c.by_degree[1], c.by_degree[2]};
}

double SchemeParams::gamma() const {
    return std::pow(p_cz, 2 * cz_per_ccz) * std::pow(varsigma, 20);
}

Probability success_prob_klm(const GateCounts& counts, const SchemeParams& params) {
    const double uses = counts.y + static_cast<double>(params.cz_per_ccz) * counts.z;
    const double log2 = uses * std::log2(params.p_cz);
    return {std::exp2(log2), log2};
}

double log2_alpha(const GateCounts& counts, double graph_norm, std::size_t vertices,
                  const SchemeParams& params) {
    if (!(graph_norm > 0.0)) throw DomainError("graph norm must be positive");
    return 2.0 * success_prob_klm(counts, params).log2 +
           4.0 * static_cast<double>(vertices) * std::log2(graph_norm) - 4.0 * counts.q;
}

CczCoefficients derive_ccz_coefficients(const SchemeParams& params) {
    const double ln_gamma = std::log(params.gamma());
    if (!(ln_gamma < 0.0)) throw DomainError("scheme parameters need gamma < 1");
    const double ln_s = std::log(params.varsigma), ln_p = std::log(params.p_cz);
    return {-4.0 * ln_s / ln_gamma, -(2.0 * ln_p + 12.0 * ln_s) / ln_gamma,
            -4.0 * (ln_s - std::log(2.0)) / ln_gamma};
}

std::int64_t ccz_threshold(int q, int x, int y, const CczCoefficients& c) {
    return static_cast<std::int64_t>(std::ceil(c.c_x * x + c.c_y * y + c.c_q * q));
}

EnsembleFraction alpha_fraction(int q, ProbMode mode, CoefficientChoice choice, const SchemeParams& params) {
    const CczCoefficients c = choice == CoefficientChoice::kDerived ? derive_ccz_coefficients(params) : kRoundedCcz;
    return ensemble_fraction(q, mode, [&](int x, int y) { return ccz_threshold(q, x, y, c); });
}

double prob_alpha_lt_1(int q, ProbMode mode, CoefficientChoice choice, const SchemeParams& params) {
    return alpha_fraction(q, mode, choice, params).value;
}

EnsembleFraction photon_fraction(int q, ProbMode mode, PhotonCondition condition) {
    return ensemble_fraction(q, mode, [&](int x, int y) -> std::int64_t {
        const std::int64_t s = static_cast<std::int64_t>(x) + y;
        return condition == PhotonCondition::kStrict ? s + 1 : s / 7 + 1;
    });
}

double prob_fewer_photons(int q, ProbMode mode, PhotonCondition condition) {
    return photon_fraction(q, mode, condition).value;
}

double log2_entropy_bound(long long n, long long d) {
    if (n < 0 || d < 0 || 2 * d > n) {
        throw DomainError("entropy bound needs 0 <= d <= n/2 (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
    }
    if (d == 0) return 0.0;
    const double p = static_cast<double>(d) / static_cast<double>(n);
    return static_cast<double>(n) * (-p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p));
}

double entropy_bound_check(int n, int d) {
    return std::exp2(log2_entropy_bound(n, d));
}

ResourceRow resource_table(const GateCounts& c) {
    return {c.q + 2LL * c.y + 12LL * c.z, 2LL * c.q + 2LL * c.y + 12LL * c.z,
            static_cast<long long>(c.q) + c.x + 3LL * c.y + 5LL * c.z,
            2LL * c.q + 2LL * c.x + 6LL * c.y + 10LL * c.z};
}

std::string EnsembleStats::size() const {
    return (cpp_int(1) << log2_size).str();
}

EnsembleStats ensemble_stats(int q) {
    if (q < 0) throw DomainError("qubit count must be non-negative");
    return {ensemble_log2_size(q), q + 0.5 * (q + 3.0 * choose2(q) + 5.0 * choose3(q))};
}

SampleCount hoeffding_samples(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
    const double n = std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon));
    if (n >= std::ldexp(1.0, 127)) throw ResourceError("Hoeffding sample count exceeds 2^127");
    return SampleCount(n);
}

double epsilon_for(const SampleCount& samples, double delta) {
    if (samples == 0) throw DomainError("sample count must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples)));
}

double gadget_norm(int degree) {
    return spectral_norm(clause_gadget(degree, kPi).matrix);
}

NormBound norm_bound_check(const EncodedGraph& graph, double tol) {
    NormBound b;
    for (const ClauseBlock& c : graph.clauses) {
        if (std::abs(wrap_angle(c.theta) - kPi) > 1e-12) {
            throw DomainError("norm bound applies to theta = pi clauses only (got " + format_double(c.theta) + ")");
        }
        b.gadget_degree = std::max(b.gadget_degree, c.degree);
    }
    if (b.gadget_degree > 0) {
        const double g = gadget_norm(b.gadget_degree);
        b.lower = std::max(1.0, g - 1.0);
        b.upper = g + 1.0;
    }
    b.observed = graph.n() == 0 ? 1.0 : spectral_norm(graph.adjacency);
    b.pass = b.observed >= b.lower - tol && b.observed <= b.upper + tol;
    return b;
}

}  // namespace permsum
