#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace permsum {

/// One monomial θ·Π_{i∈vars} x_i of an 𝔽₂-valued multilinear polynomial.
struct Clause {
    double theta = 0.0;         // radians, in [0, 2π) once canonical
    std::vector<int> vars;      // strictly increasing variable indices

    std::size_t degree() const { return vars.size(); }
    bool operator==(const Clause&) const = default;
};

/// A clause as read from input, before merging and reduction.
struct RawClause {
    double theta = 0.0;
    std::vector<int> vars;
};

/// Canonical multilinear polynomial f(x) = constant_phase + Σ θ_S Π_{i∈S} x_i
/// over boolean variables x_0..x_{n-1}. Build it through `canonicalize`.
struct Polynomial {
    int num_vars = 0;
    std::vector<Clause> clauses;
    double constant_phase = 0.0;

    /// Number of variables that occur in no clause.
    int clause_free_count() const;
    int max_degree() const;
};

/// Merge clauses with equal variable sets (θ summed mod 2π), drop θ ≡ 0,
/// fold empty clauses into the constant phase, collapse repeated variables.
/// Clause order follows first occurrence of each variable set.
Polynomial canonicalize(const std::vector<RawClause>& raw, int num_vars);

/// Phase f(x) in radians, as a plain real sum (not reduced mod 2π).
/// `assignment[i]` is the value of x_i.
double evaluate(const Polynomial& poly, const std::vector<bool>& assignment);

/// Reference oracle Σ_x e^{i f(x)} by enumeration of all 2ⁿ assignments.
/// Deterministic for any thread count. Throws ResourceError above the cap (24).
std::complex<double> exp_sum(const Polynomial& poly, unsigned threads = 1);

inline constexpr std::size_t kExpSumCap = 24;

/// Fix some variables to constants and re-index the rest densely (in order).
Polynomial substitute(const Polynomial& poly, const std::map<int, bool>& fixed);

/// Text format:
///   poly n=<int>
///   <theta> <v1> [<v2> ...]     one clause per line; no variables = constant phase
///   # comment
Polynomial parse_polynomial(std::string_view text);
std::string format_polynomial(const Polynomial& poly);

}  // namespace permsum
