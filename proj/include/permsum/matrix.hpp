#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permsum {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// e^{iθ}. Exact (no 1e-16 residue) when θ is an integer multiple of π/2.
Complex unit_phase(double theta);

/// Reduce an angle into [0, 2π).
double wrap_angle(double theta);

/// Dense square complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t order);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t order);

    std::size_t order() const { return order_; }
    bool empty() const { return order_ == 0; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * order_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * order_ + j]; }

    std::span<const Complex> row(std::size_t i) const {
        return {data_.data() + i * order_, order_};
    }
    std::span<const Complex> data() const { return data_; }

    /// Principal submatrix on the given (ordered) index list.
    ComplexMatrix principal(std::span<const std::size_t> indices) const;

    /// Matrix with row `row` and column `col` deleted.
    ComplexMatrix minor(std::size_t row, std::size_t col) const;

    ComplexMatrix transpose() const;

    /// Copy with `value` added on the diagonal.
    ComplexMatrix shifted(Complex value) const;

    bool operator==(const ComplexMatrix&) const = default;

  private:
    std::size_t order_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, const ComplexMatrix& a);

/// Max absolute row sum.
double infinity_norm(const ComplexMatrix& m);
/// Max absolute column sum.
double one_norm(const ComplexMatrix& m);

/// Dense text format: first line `n`, then n lines of n `re+imj` tokens.
ComplexMatrix parse_dense_matrix(std::string_view text);
std::string format_dense_matrix(const ComplexMatrix& m);

/// Parse one `re+imj` token (also accepts `re`, `imj`, `re-imj`).
Complex parse_complex_token(std::string_view token);
std::string format_complex_token(Complex z);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace permsum
