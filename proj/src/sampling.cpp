#include "permsum/sampling.hpp"

#include <Eigen/Dense>
#include <boost/random/binomial_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "permsum/error.hpp"
#include "permsum/graph_encode.hpp"

namespace permsum {

Scheme parse_scheme(std::string_view name) {
    if (name == "graph") return Scheme::kGraph;
    if (name == "klm") return Scheme::kKlm;
    throw DomainError("unknown scheme '" + std::string(name) + "' (expected graph or klm)");
}

std::string_view to_string(Scheme scheme) {
    return scheme == Scheme::kGraph ? "graph" : "klm";
}

SchemeTarget true_postselect_prob(Scheme scheme, const IqpCircuit& circuit, PermanentMethod method,
                                  unsigned threads) {
    SchemeTarget t;
    t.scheme = scheme;
    t.counts = counts_of(circuit);
    if (scheme == Scheme::kGraph) {
        const AmplitudeEncoding enc = encode_zero_zero(circuit);
        const Complex per = permanent(enc.graph.adjacency, method, threads);
        const Complex amp = enc.scale * enc.graph.multiplier * per;
        t.zero_zero = std::norm(amp);
        t.vertices = enc.graph.n();
        t.graph_norm = t.vertices == 0 ? 1.0 : spectral_norm(enc.graph.adjacency);
        const double m2 = 2.0 * static_cast<double>(t.vertices);
        t.probability = std::exp(std::log(std::norm(per)) - m2 * std::log(t.graph_norm));
        t.rescale = std::exp(m2 * std::log(t.graph_norm)) * enc.scale * enc.scale * std::norm(enc.graph.multiplier);
    } else {
        const std::vector<bool> zeros(static_cast<std::size_t>(circuit.q), false);
        t.zero_zero = std::norm(amplitude_direct(circuit, zeros, zeros, threads));
        const Probability ps = success_prob_klm(t.counts);
        t.probability = t.zero_zero * ps.value;
        t.rescale = std::exp2(-ps.log2);
    }
    if (!(t.probability <= 1.0 + 1e-9)) {
        throw NumericError("post-selection probability " + format_double(t.probability) + " exceeds 1");
    }
    t.probability = std::min(t.probability, 1.0);
    return t;
}

SampleCount draw_binomial(const SampleCount& n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability must lie in [0,1]");
    if (p == 0.0 || n == 0) return 0;
    if (p == 1.0) return n;
    std::mt19937_64 rng(mix64(seed));
    constexpr std::int64_t kChunk = std::int64_t{1} << 62;
    const SampleCount exact_limit = SampleCount(1) << 68;
    if (n <= exact_limit) {
        SampleCount remaining = n, hits = 0;
        while (remaining > 0) {
            const auto take = remaining > kChunk ? kChunk : static_cast<std::int64_t>(remaining);
            hits += static_cast<std::uint64_t>(boost::random::binomial_distribution<std::int64_t, double>(take, p)(rng));
            remaining -= take;
        }
        return hits;
    }
    const long double mean = static_cast<long double>(n) * p;
    const long double sd = std::sqrt(mean * (1.0L - p));
    const long double draw = std::round(mean + sd * boost::random::normal_distribution<double>()(rng));
    const long double clamped = std::clamp(draw, 0.0L, static_cast<long double>(n));
    return SampleCount(clamped);
}

Estimate simulate_estimation(const SchemeTarget& target, const SampleCount& samples, std::uint64_t seed) {
    if (samples == 0) throw DomainError("sample count must be positive");
    Estimate e;
    e.samples = samples;
    e.accepted = draw_binomial(samples, target.probability, seed);
    const double rate = e.accepted == samples
                            ? 1.0
                            : static_cast<double>(static_cast<long double>(e.accepted) / static_cast<long double>(samples));
    e.estimate = rate * target.rescale;
    return e;
}

EstimationPlan plan_estimation(const SchemeTarget& target, double epsilon_target, double delta) {
    EstimationPlan plan;
    plan.epsilon_target = epsilon_target;
    plan.delta = delta;
    plan.epsilon_raw = epsilon_target / target.rescale;
    plan.samples = hoeffding_samples(plan.epsilon_raw, delta);
    return plan;
}

std::vector<Complex> eps_poly_coeffs(const ComplexMatrix& a) {
    const std::size_t n = a.order();
    require_within_cap(n, kEpsPolyCap, "eps_poly_coeffs");
    std::vector<Complex> c(n + 1, Complex{});
    // c_i sums per(A minus rows/cols S) over i-subsets S of the diagonal.
    for (std::uint64_t removed = 0; removed < (std::uint64_t{1} << n); ++removed) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i)
            if (!(removed >> i & 1)) keep.push_back(i);
        ComplexMatrix sub(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j) sub(i, j) = a(keep[i], keep[j]);
        c[static_cast<std::size_t>(std::popcount(removed))] += permanent(sub, PermanentMethod::kRyser);
    }
    return c;
}

std::vector<double> chebyshev_points(std::size_t n, double lo, double hi) {
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double node = -std::cos(kPi * (2.0 * static_cast<double>(k) + 1.0) / (2.0 * static_cast<double>(n)));
        x[k] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * node;
    }
    return x;
}

BoostResult boost_recover(const ComplexMatrix& a, const std::vector<double>& epsilons,
                          const std::optional<std::vector<double>>& evaluations) {
    const std::size_t degree = 2 * a.order();
    const std::size_t k = epsilons.size();
    if (k < degree + 1) {
        throw DomainError("boosting needs at least " + std::to_string(degree + 1) + " epsilons (got " +
                          std::to_string(k) + ")");
    }
    std::vector<double> sorted = epsilons;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("boosting epsilons must be distinct");
    }
    if (evaluations && evaluations->size() != k) {
        throw DomainError("boosting needs one evaluation per epsilon");
    }

    Eigen::MatrixXd v(k, degree + 1);
    Eigen::VectorXd y(k);
    for (std::size_t i = 0; i < k; ++i) {
        double power = 1.0;
        for (std::size_t j = 0; j <= degree; ++j) {
            v(i, j) = power;
            power *= epsilons[i];
        }
        if (evaluations) {
            y(i) = (*evaluations)[i];
        } else {
            ComplexMatrix shifted = a;
            for (std::size_t d = 0; d < a.order(); ++d) shifted(d, d) += epsilons[i];
            y(i) = std::norm(permanent(shifted, PermanentMethod::kRyser));
        }
    }

    BoostResult r;
    Eigen::VectorXd b;
    if (k == degree + 1) {
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(v);
        b = lu.solve(y);
        r.rcond = lu.rcond();
    } else {
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
        b = svd.solve(y);
        const auto& s = svd.singularValues();
        r.rcond = s(s.size() - 1) / s(0);
    }
    r.coefficients.assign(b.data(), b.data() + b.size());
    r.value = b(0);
    if (r.rcond < kBoostRcondFloor) {
        r.ill_conditioned = true;
        r.warning = "Vandermonde fit is ill-conditioned (rcond " + format_double(r.rcond) + ")";
    }
    return r;
}

BoostResult boost_recover(const ComplexMatrix& a) {
    return boost_recover(a, chebyshev_points(2 * a.order() + 1, 0.0, 2.0));
}

BoostedNormBounds boosted_norm_bounds(const ComplexMatrix& a, double eps, double tol) {
    if (eps < 0.0) throw DomainError("epsilon must be non-negative");
    ComplexMatrix shifted = a;
    for (std::size_t d = 0; d < a.order(); ++d) shifted(d, d) += eps;
    BoostedNormBounds b;
    b.lower = 1.0 + eps;
    b.upper = infinity_norm(a) + eps;
    b.observed = spectral_norm(shifted);
    b.pass = b.observed >= b.lower - tol && b.observed <= b.upper + tol;
    return b;
}

}  // namespace permsum
