#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permsum/circuit.hpp"
#include "permsum/permanent.hpp"
#include "permsum/resources.hpp"

namespace permsum {

enum class Scheme { kGraph, kKlm };

Scheme parse_scheme(std::string_view name);
std::string_view to_string(Scheme scheme);

/// Exact post-selection probability of a scheme for ⟨0…0|C|0…0⟩ and the
/// factor that turns it back into |⟨0…0|C|0…0⟩|².
struct SchemeTarget {
    Scheme scheme = Scheme::kGraph;
    double probability = 0.0;   // p ∈ [0,1]
    double rescale = 1.0;       // graph: ‖G‖₂^{2M}·scale²·|multiplier|²; KLM: 1/p_s
    double zero_zero = 0.0;     // |⟨0…0|C|0…0⟩|²
    std::size_t vertices = 0;   // graph only
    double graph_norm = 0.0;    // graph only
    GateCounts counts;
};

/// NumericError if p exceeds 1 by more than 1e-9.
SchemeTarget true_postselect_prob(Scheme scheme, const IqpCircuit& circuit,
                                  PermanentMethod method = PermanentMethod::kRyser, unsigned threads = 1);

/// Binomial(n, p) draw. Exact chunked draws up to 2^68 trials, a rounded
/// normal approximation beyond.
SampleCount draw_binomial(const SampleCount& n, double p, std::uint64_t seed);

struct Estimate {
    SampleCount samples = 0;
    SampleCount accepted = 0;  // N_post
    double estimate = 0.0;     // (N_post/N)·rescale
};

Estimate simulate_estimation(const SchemeTarget& target, const SampleCount& samples, std::uint64_t seed);

/// ε′ = ε₀ is met with probability ≥ 1−δ when the raw rate is estimated to
/// ε₀/rescale.
struct EstimationPlan {
    double epsilon_target = 0.0;
    double delta = 0.0;
    double epsilon_raw = 0.0;
    SampleCount samples = 0;
};

EstimationPlan plan_estimation(const SchemeTarget& target, double epsilon_target, double delta);

/// per(A + εI) = Σ_i c_i εⁱ, order ≤ 10 (ResourceError beyond).
std::vector<Complex> eps_poly_coeffs(const ComplexMatrix& a);
inline constexpr std::size_t kEpsPolyCap = 10;

/// n Chebyshev nodes of the first kind on [lo, hi], increasing.
std::vector<double> chebyshev_points(std::size_t n, double lo, double hi);

struct BoostResult {
    double value = 0.0;                // b₀ = |per A|²
    std::vector<double> coefficients;  // b₀..b_{2M}
    double rcond = 1.0;                // reciprocal condition estimate of the fit
    bool ill_conditioned = false;
    std::string warning;
};

inline constexpr double kBoostRcondFloor = 1e-14;

/// Fits |per(A + εI)|² as a degree-2M polynomial in ε and returns its value at
/// 0. Needs ≥ 2M+1 distinct epsilons; evaluations default to exact permanents.
BoostResult boost_recover(const ComplexMatrix& a, const std::vector<double>& epsilons,
                          const std::optional<std::vector<double>>& evaluations = std::nullopt);
/// Chebyshev points on [0, 2].
BoostResult boost_recover(const ComplexMatrix& a);

struct BoostedNormBounds {
    double lower = 1.0;     // 1 + ε
    double observed = 1.0;  // ‖A + εI‖₂
    double upper = 1.0;     // ‖A‖_∞ + ε
    bool pass = true;
};

BoostedNormBounds boosted_norm_bounds(const ComplexMatrix& a, double eps, double tol = 1e-9);

}  // namespace permsum
