#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "permsum/matrix.hpp"

namespace permsum {

/// Clause gadget: rows/cols 0..degree-1 are outer vertices, the rest inner.
struct Gadget {
    int degree = 0;
    int inner = 0;
    ComplexMatrix matrix;

    int order() const { return degree + inner; }
};

/// Reference A_d(θ) for d ∈ {1,2,3}, principal branch for every square root.
Gadget gadget_matrix(int degree, double theta);

enum class CubicVariant {
    kReference,
    kSymmetric,  // a₄₀ := a₀₄ = −η(θ)/√2
};

Gadget cubic_gadget(double theta, CubicVariant variant);

/// Gadget used by the graph encoder: A₁, A₂, and the symmetric cubic variant.
Gadget clause_gadget(int degree, double theta);

/// Multilinear polynomial over symbols with complex coefficients. Keys are
/// strictly increasing symbol lists; the empty key is the constant term.
class SymbolicPolynomial {
  public:
    SymbolicPolynomial() = default;
    static SymbolicPolynomial constant(Complex value);
    static SymbolicPolynomial symbol(int index);

    const std::map<std::vector<int>, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    SymbolicPolynomial& operator+=(const SymbolicPolynomial& other);
    friend SymbolicPolynomial operator*(const SymbolicPolynomial& a, const SymbolicPolynomial& b);

    /// Substitute `values[symbol]` for every symbol.
    Complex evaluate(std::span<const Complex> values) const;

    bool operator==(const SymbolicPolynomial&) const = default;

  private:
    void add_term(std::vector<int> symbols, Complex coeff);
    std::map<std::vector<int>, Complex> terms_;
};

using SymbolicMatrix = std::vector<std::vector<SymbolicPolynomial>>;

/// Laplace expansion along rows with memoised minors. Order ≤ 6; the empty
/// permanent is 1.
SymbolicPolynomial symbolic_permanent(const SymbolicMatrix& m);

inline constexpr std::size_t kSymbolicCap = 6;

struct ConstraintTag {
    bool nonzero = true;
    std::vector<int> s;  // nonzero: s_i = 1 keeps outer vertex i
    int x = -1;          // zero: path enters at x ...
    int y = -1;          // ... and leaves at y
    std::vector<int> o;  // zero: other outer vertices covered inside the gadget

    std::string label() const;
};

enum class Rhs { kOne, kPhase, kZero };  // 1, e^{iθ}, 0

struct Equation {
    ConstraintTag tag;
    SymbolicPolynomial lhs;
    Rhs rhs = Rhs::kOne;
    std::vector<std::size_t> vertices;  // gadget vertices of the submatrix, increasing
    int replaced_row = -1;              // position of y in `vertices`, zero equations only
    int replaced_col = -1;              // position of x
};

struct ConstraintSystem {
    int degree = 0;
    int inner = 0;
    std::size_t num_symbols = 0;  // (d+k)², x_{i,j} has index i·(d+k)+j
    std::vector<Equation> equations;
};

/// Nonzero equations for s from all-ones down to all-zeros, then zero
/// equations for each ordered outer pair (x,y) and each subset o of the rest.
ConstraintSystem generate_constraints(int degree, int inner);

/// 2^d + 2^{d-2}·d(d-1).
std::size_t expected_equation_count(int degree);

/// Numeric submatrix of an equation for concrete gadget entries.
ComplexMatrix equation_matrix(const Equation& eq, const ComplexMatrix& gadget);

struct EquationResidual {
    ConstraintTag tag;
    Complex lhs;
    Complex rhs;
    double residual = 0.0;
};

struct VerificationReport {
    std::vector<EquationResidual> equations;
    double max_nonzero_residual = 0.0;
    double max_zero_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;

    std::vector<EquationResidual> failing() const;
};

/// Residual |per(submatrix) − rhs| of every constraint equation. Reports,
/// never throws on failure.
VerificationReport verify_gadget(const Gadget& g, double theta, double tol = 1e-9);

/// Σ ω over covers made of a path x → … → y through any vertices of o ∪ inner,
/// with the remaining vertices of o ∪ inner covered by cycles among
/// themselves. Enumerated directly.
Complex partial_cover_sum(const Gadget& g, int x, int y, const std::vector<int>& o);

/// Same quantity via the row-replacement permanent.
Complex row_replacement_permanent(const Gadget& g, int x, int y, const std::vector<int>& o);

/// One equation per line:
///   (re,im)*x_0_0*x_1_1 + x_0_1*x_1_0 = T
/// preceded by a `# <tag>` comment. With `symbolic_theta`, e^{iθ} is written T.
std::string export_constraints(const ConstraintSystem& system, double theta, bool symbolic_theta);

}  // namespace permsum
