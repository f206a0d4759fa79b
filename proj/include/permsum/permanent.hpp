#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "permsum/matrix.hpp"

namespace permsum {

enum class PermanentMethod {
    kNaive,       // Σ over all n! permutations
    kRyser,       // inclusion–exclusion with Gray-code column updates, O(2ⁿ·n)
    kCycleCover,  // depth-first enumeration of nonzero cycle covers
    kBlockAuto,   // product over connected components of the support, Ryser per block
};

PermanentMethod parse_permanent_method(std::string_view name);
std::string_view to_string(PermanentMethod method);

inline constexpr std::size_t kNaiveCap = 10;
inline constexpr std::size_t kRyserCap = 32;
inline constexpr std::size_t kEnumerateCap = 8;

/// per(A) = Σ_σ Π_i a_{i,σ(i)}; per of the 0×0 matrix is 1.
/// Ryser-based methods split the subset space into fixed chunks, so the
/// result is bit-identical for every `threads` value.
Complex permanent(const ComplexMatrix& m, PermanentMethod method = PermanentMethod::kRyser,
                  unsigned threads = 1);

/// A permutation σ with nonzero weight Π a_{i,σ(i)}, read as a set of
/// vertex-disjoint directed cycles covering every vertex.
struct CycleCover {
    std::vector<std::size_t> successor;  // σ(i)
    Complex weight;

    /// Cycles in order of their smallest vertex, each starting there.
    std::vector<std::vector<std::size_t>> cycles() const;
};

/// All nonzero-weight cycle covers, in lexicographic order of σ.
std::vector<CycleCover> enumerate_cycle_covers(const ComplexMatrix& m);

/// Vertex sets of the connected components of the symmetrized support
/// (i ~ j when a_ij ≠ 0 or a_ji ≠ 0), each sorted, ordered by smallest vertex.
std::vector<std::vector<std::size_t>> support_components(const ComplexMatrix& m);

/// Gurvits' unbiased estimator: mean over `samples` draws x ∈ {±1}ⁿ of
/// Π_i x_i · Π_i (Ax)_i. Sample s draws its signs from a stream keyed by
/// (seed, s), so the output does not depend on `threads`.
Complex gurvits_estimate(const ComplexMatrix& m, std::uint64_t samples, std::uint64_t seed,
                         unsigned threads = 1);

/// σ_max(A) by power iteration on AᴴA from the normalized all-ones vector.
/// Throws NumericError if the relative change does not drop below `tol`.
double spectral_norm(const ComplexMatrix& m, double tol = 1e-10, int max_iter = 10000);

/// Bijective 64-bit mixer (splitmix64 finalizer); used for keyed RNG streams.
std::uint64_t mix64(std::uint64_t x);

}  // namespace permsum
