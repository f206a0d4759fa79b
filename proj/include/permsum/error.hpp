#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace permsum {

/// Bad input: out-of-range index, malformed file, inapplicable operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A brute-force or exponential engine would exceed its configured size cap.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Valid input outside what the constructions support (e.g. degree-4 clause).
class UnsupportedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An iterative method failed to converge, or a consistency check tripped.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Size cap for brute-force engines. `PERMSUM_MAX_N`, when set, overrides the
/// built-in default for every cap.
std::size_t size_cap(std::size_t default_cap);

void require_within_cap(std::size_t n, std::size_t default_cap, const std::string& what);

}  // namespace permsum
