#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "permsum/graph_encode.hpp"

namespace permsum {

/// Sample counts can exceed 2^64 for the graph scheme.
using SampleCount = boost::multiprecision::uint128_t;

/// Gate counts of a diagonal layer by degree: x Z-type, y CZ-type, z CCZ-type.
struct GateCounts {
    int q = 0;
    int x = 0;
    int y = 0;
    int z = 0;
};

/// Throws DomainError unless 0 ≤ x ≤ q, 0 ≤ y ≤ C(q,2), 0 ≤ z ≤ C(q,3).
void validate(const GateCounts& counts);

/// Counts over all layers of an IQP circuit.
GateCounts counts_of(const IqpCircuit& circuit);

struct SchemeParams {
    double p_cz = 2.0 / 27.0;
    int cz_per_ccz = 6;
    double varsigma = 4.53;

    double gamma() const;  // p^{2·cz_per_ccz}·ς^{20}
};

struct Probability {
    double value = 0.0;  // may underflow to 0
    double log2 = 0.0;
};

/// p_cz^{y + cz_per_ccz·z}.
Probability success_prob_klm(const GateCounts& counts, const SchemeParams& params = {});

/// log₂ α = 2·log₂ p_s + 4M·log₂‖G‖₂ − 4q.
double log2_alpha(const GateCounts& counts, double graph_norm, std::size_t vertices,
                  const SchemeParams& params = {});

struct CczCoefficients {
    double c_x = 0.0;
    double c_y = 0.0;
    double c_q = 0.0;
};

/// Coefficients rounded to two decimals.
inline constexpr CczCoefficients kRoundedCcz{5.68, 12.14, 3.07};

/// c_q = −4(lnς − ln2)/lnγ, c_x = −4lnς/lnγ, c_y = −(2lnp + 12lnς)/lnγ.
CczCoefficients derive_ccz_coefficients(const SchemeParams& params = {});

/// ⌈c_x·x + c_y·y + c_q·q⌉.
std::int64_t ccz_threshold(int q, int x, int y, const CczCoefficients& coefficients);

enum class ProbMode { kExact, kLog };

enum class CoefficientChoice {
    kDerived,    // derive_ccz_coefficients(params)
    kRounded,  // kRoundedCcz
};

inline constexpr int kExactEnsembleCap = 50;

/// Fraction of an ensemble and of its complement, each computed directly so
/// that values next to 1 stay resolvable through the complement.
struct EnsembleFraction {
    double value = 0.0;
    double complement = 1.0;
    double log2_complement = 0.0;  // exact even where `complement` underflows
};

/// Fraction of the q-qubit π-gate ensemble with z ≥ ccz_threshold(q,x,y).
/// Exact mode throws ResourceError above kExactEnsembleCap.
EnsembleFraction alpha_fraction(int q, ProbMode mode, CoefficientChoice choice = CoefficientChoice::kDerived,
                                const SchemeParams& params = {});
double prob_alpha_lt_1(int q, ProbMode mode, CoefficientChoice choice = CoefficientChoice::kDerived,
                       const SchemeParams& params = {});

enum class PhotonCondition {
    kStrict,   // z > x + y
    kSevenZ,   // 7z > x + y
};

EnsembleFraction photon_fraction(int q, ProbMode mode, PhotonCondition condition = PhotonCondition::kStrict);
double prob_fewer_photons(int q, ProbMode mode, PhotonCondition condition = PhotonCondition::kStrict);

/// 2^{n·H(d/n)}; DomainError unless 0 ≤ d ≤ n/2.
double entropy_bound_check(int n, int d);
/// n·H(d/n), the same bound in log₂ form for sizes where it overflows.
double log2_entropy_bound(long long n, long long d);

struct ResourceRow {
    long long klm_photons = 0;
    long long klm_modes = 0;
    long long graph_photons = 0;
    long long graph_modes = 0;
};

ResourceRow resource_table(const GateCounts& counts);

struct EnsembleStats {
    std::uint64_t log2_size = 0;  // |I_q| = 2^{log2_size}
    double expected_photons = 0.0;

    std::string size() const;  // decimal |I_q|
};

EnsembleStats ensemble_stats(int q);

/// ⌈ln(2/δ)/(2ε²)⌉; DomainError unless 0 < ε < 1 and 0 < δ < 1.
SampleCount hoeffding_samples(double epsilon, double delta);
/// √(ln(2/δ)/(2N)).
double epsilon_for(const SampleCount& samples, double delta);

struct NormBound {
    double lower = 1.0;
    double observed = 1.0;
    double upper = 1.0;
    int gadget_degree = 0;  // largest gadget present, 0 if none
    bool pass = true;
};

/// ‖A_d(π)‖₂ for the gadget the encoder uses.
double gadget_norm(int degree);

/// max{1, ‖A_d(π)‖₂ − 1} ≤ ‖G‖₂ ≤ ‖A_d(π)‖₂ + 1 with d the largest gadget
/// degree. DomainError when a clause angle is not π.
NormBound norm_bound_check(const EncodedGraph& graph, double tol = 1e-9);

}  // namespace permsum
