#include "permsum/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>
#include <optional>

#include "permsum/error.hpp"
#include "permsum/permanent.hpp"

namespace permsum {

namespace {

const Complex kI{0.0, 1.0};

Complex eta(double theta) {
    return std::sqrt(3.0 * (1.0 + kI) * (1.0 - unit_phase(theta))) / 6.0;
}

Gadget cubic(double theta, bool symmetric) {
    const Complex e = unit_phase(theta);
    const Complex n = eta(theta);
    const Complex w1 = unit_phase(kPi / 4);
    const Complex w3 = unit_phase(3 * kPi / 4);
    const double r2 = std::sqrt(2.0);
    const Complex corner =
        symmetric ? -n / r2 : -std::sqrt((1.0 - e) / (24.0 * (1.0 + kI)));
    Gadget g{3, 2, ComplexMatrix{
        {(e - (1.0 + 12.0 * kI)) / (-12.0 * kI), -n, -n, n / r2 * w1, -n / r2},
        {-n, kI, -1.0 + kI, 1.0, w3},
        {-n, -1.0 + kI, kI, 1.0, w3},
        {n / r2 * w1, 1.0, 1.0, 1.0, 0.0},
        {corner, w3, w3, 0.0, 1.0},
    }};
    return g;
}

}  // namespace

Gadget gadget_matrix(int degree, double theta) {
    const Complex e = unit_phase(theta);
    switch (degree) {
        case 1:
            return Gadget{1, 0, ComplexMatrix{{e}}};
        case 2:
            return Gadget{2, 1, ComplexMatrix{
                {(1.0 + e) / 2.0, (e - 1.0) / 2.0, (1.0 - e) / 2.0},
                {-1.0, 0.0, 1.0},
                {1.0, 1.0, 1.0},
            }};
        case 3:
            return cubic(theta, false);
        default:
            throw UnsupportedError("no gadget for clauses of degree " + std::to_string(degree));
    }
}

Gadget cubic_gadget(double theta, CubicVariant variant) {
    return cubic(theta, variant == CubicVariant::kSymmetric);
}

Gadget clause_gadget(int degree, double theta) {
    if (degree == 3) return cubic_gadget(theta, CubicVariant::kSymmetric);
    return gadget_matrix(degree, theta);
}

SymbolicPolynomial SymbolicPolynomial::constant(Complex value) {
    SymbolicPolynomial p;
    p.add_term({}, value);
    return p;
}

SymbolicPolynomial SymbolicPolynomial::symbol(int index) {
    SymbolicPolynomial p;
    p.add_term({index}, 1.0);
    return p;
}

void SymbolicPolynomial::add_term(std::vector<int> symbols, Complex coeff) {
    if (coeff == Complex{}) return;
    auto [it, inserted] = terms_.try_emplace(std::move(symbols), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == Complex{}) terms_.erase(it);
    }
}

SymbolicPolynomial& SymbolicPolynomial::operator+=(const SymbolicPolynomial& other) {
    for (const auto& [key, coeff] : other.terms_) add_term(key, coeff);
    return *this;
}

SymbolicPolynomial operator*(const SymbolicPolynomial& a, const SymbolicPolynomial& b) {
    SymbolicPolynomial out;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            std::vector<int> key;
            std::set_union(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(key));
            out.add_term(std::move(key), ca * cb);
        }
    }
    return out;
}

Complex SymbolicPolynomial::evaluate(std::span<const Complex> values) const {
    Complex sum{};
    for (const auto& [key, coeff] : terms_) {
        Complex term = coeff;
        for (int s : key) term *= values[static_cast<std::size_t>(s)];
        sum += term;
    }
    return sum;
}

SymbolicPolynomial symbolic_permanent(const SymbolicMatrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m) {
        if (row.size() != n) throw DomainError("symbolic_permanent: matrix is not square");
    }
    require_within_cap(n, kSymbolicCap, "symbolic permanent");
    // memo[mask] = permanent of the rows n-|mask|.. on the columns in mask.
    std::vector<std::optional<SymbolicPolynomial>> memo(std::size_t{1} << n);
    auto solve = [&](auto&& self, std::size_t mask) -> const SymbolicPolynomial& {
        auto& slot = memo[mask];
        if (slot) return *slot;
        if (mask == 0) return slot.emplace(SymbolicPolynomial::constant(1.0));
        const std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
        SymbolicPolynomial sum;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask >> j & 1) || m[row][j].is_zero()) continue;
            sum += m[row][j] * self(self, mask & ~(std::size_t{1} << j));
        }
        return slot.emplace(std::move(sum));
    };
    return solve(solve, (std::size_t{1} << n) - 1);
}

std::string ConstraintTag::label() const {
    std::string out;
    if (nonzero) {
        out = "nonzero s=";
        for (int b : s) out += std::to_string(b);
        return out;
    }
    out = "zero x=" + std::to_string(x) + " y=" + std::to_string(y) + " o={";
    for (std::size_t i = 0; i < o.size(); ++i) out += (i ? "," : "") + std::to_string(o[i]);
    return out + "}";
}

std::size_t expected_equation_count(int degree) {
    const std::size_t d = static_cast<std::size_t>(degree);
    const std::size_t zero = d >= 2 ? (std::size_t{1} << (d - 2)) * d * (d - 1) : 0;
    return (std::size_t{1} << d) + zero;
}

namespace {

SymbolicMatrix symbolic_submatrix(const Equation& eq, std::size_t order) {
    const std::size_t n = eq.vertices.size();
    SymbolicMatrix m(n, std::vector<SymbolicPolynomial>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (static_cast<int>(a) == eq.replaced_row) {
                if (static_cast<int>(b) == eq.replaced_col) m[a][b] = SymbolicPolynomial::constant(1.0);
                continue;
            }
            m[a][b] = SymbolicPolynomial::symbol(static_cast<int>(eq.vertices[a] * order + eq.vertices[b]));
        }
    }
    return m;
}

}  // namespace

ConstraintSystem generate_constraints(int degree, int inner) {
    if (degree < 1 || inner < 0) throw DomainError("generate_constraints: need d >= 1 and k >= 0");
    const std::size_t order = static_cast<std::size_t>(degree + inner);
    require_within_cap(order, kSymbolicCap, "constraint generation");

    ConstraintSystem sys;
    sys.degree = degree;
    sys.inner = inner;
    sys.num_symbols = order * order;

    for (std::size_t mask = std::size_t{1} << degree; mask-- > 0;) {
        Equation eq;
        eq.tag.nonzero = true;
        for (int i = 0; i < degree; ++i) {
            const int bit = static_cast<int>(mask >> (degree - 1 - i) & 1);
            eq.tag.s.push_back(bit);
            if (bit) eq.vertices.push_back(static_cast<std::size_t>(i));
        }
        for (std::size_t v = static_cast<std::size_t>(degree); v < order; ++v) eq.vertices.push_back(v);
        eq.rhs = mask == (std::size_t{1} << degree) - 1 ? Rhs::kPhase : Rhs::kOne;
        eq.lhs = symbolic_permanent(symbolic_submatrix(eq, order));
        sys.equations.push_back(std::move(eq));
    }

    for (int x = 0; x < degree; ++x) {
        for (int y = 0; y < degree; ++y) {
            if (x == y) continue;
            std::vector<int> rest;
            for (int i = 0; i < degree; ++i) {
                if (i != x && i != y) rest.push_back(i);
            }
            for (std::size_t sub = 0; sub < (std::size_t{1} << rest.size()); ++sub) {
                Equation eq;
                eq.tag = ConstraintTag{false, {}, x, y, {}};
                for (std::size_t r = 0; r < rest.size(); ++r) {
                    if (sub >> r & 1) eq.tag.o.push_back(rest[r]);
                }
                std::vector<int> outer = eq.tag.o;
                outer.push_back(x);
                outer.push_back(y);
                std::sort(outer.begin(), outer.end());
                for (int v : outer) eq.vertices.push_back(static_cast<std::size_t>(v));
                for (std::size_t v = static_cast<std::size_t>(degree); v < order; ++v) eq.vertices.push_back(v);
                for (std::size_t p = 0; p < eq.vertices.size(); ++p) {
                    if (eq.vertices[p] == static_cast<std::size_t>(y)) eq.replaced_row = static_cast<int>(p);
                    if (eq.vertices[p] == static_cast<std::size_t>(x)) eq.replaced_col = static_cast<int>(p);
                }
                eq.rhs = Rhs::kZero;
                eq.lhs = symbolic_permanent(symbolic_submatrix(eq, order));
                sys.equations.push_back(std::move(eq));
            }
        }
    }
    return sys;
}

ComplexMatrix equation_matrix(const Equation& eq, const ComplexMatrix& gadget) {
    ComplexMatrix m = gadget.principal(eq.vertices);
    if (eq.replaced_row >= 0) {
        const auto r = static_cast<std::size_t>(eq.replaced_row);
        for (std::size_t j = 0; j < m.order(); ++j) m(r, j) = 0.0;
        m(r, static_cast<std::size_t>(eq.replaced_col)) = 1.0;
    }
    return m;
}

std::vector<EquationResidual> VerificationReport::failing() const {
    std::vector<EquationResidual> out;
    for (const auto& e : equations) {
        if (!(e.residual <= tolerance)) out.push_back(e);
    }
    return out;
}

VerificationReport verify_gadget(const Gadget& g, double theta, double tol) {
    if (g.matrix.order() != static_cast<std::size_t>(g.order())) {
        throw DomainError("gadget matrix order does not match degree + inner");
    }
    const ConstraintSystem sys = generate_constraints(g.degree, g.inner);
    VerificationReport report;
    report.tolerance = tol;
    for (const Equation& eq : sys.equations) {
        EquationResidual r;
        r.tag = eq.tag;
        r.lhs = permanent(equation_matrix(eq, g.matrix), PermanentMethod::kNaive);
        r.rhs = eq.rhs == Rhs::kPhase ? unit_phase(theta) : eq.rhs == Rhs::kOne ? 1.0 : 0.0;
        r.residual = std::abs(r.lhs - r.rhs);
        double& worst = eq.tag.nonzero ? report.max_nonzero_residual : report.max_zero_residual;
        worst = std::max(worst, std::isnan(r.residual) ? HUGE_VAL : r.residual);
        report.equations.push_back(std::move(r));
    }
    report.pass = report.max_nonzero_residual <= tol && report.max_zero_residual <= tol;
    return report;
}

namespace {

void check_pair(const Gadget& g, int x, int y, const std::vector<int>& o) {
    if (g.degree < 2) throw DomainError("gadget has fewer than two outer vertices");
    auto outer = [&](int v) { return v >= 0 && v < g.degree; };
    if (!outer(x) || !outer(y) || x == y) throw DomainError("x and y must be distinct outer vertices");
    std::vector<int> seen;
    for (int v : o) {
        if (!outer(v) || v == x || v == y || std::find(seen.begin(), seen.end(), v) != seen.end()) {
            throw DomainError("o must list distinct outer vertices other than x and y");
        }
        seen.push_back(v);
    }
}

}  // namespace

Complex partial_cover_sum(const Gadget& g, int x, int y, const std::vector<int>& o) {
    check_pair(g, x, y, o);
    std::vector<std::size_t> pool(o.begin(), o.end());
    for (int v = g.degree; v < g.order(); ++v) pool.push_back(static_cast<std::size_t>(v));
    const ComplexMatrix& a = g.matrix;

    // Cycle covers of the pool vertices left off the path.
    std::vector<std::optional<Complex>> rest(std::size_t{1} << pool.size());
    auto cover_rest = [&](std::size_t used) {
        auto& slot = rest[used];
        if (!slot) {
            std::vector<std::size_t> left;
            for (std::size_t i = 0; i < pool.size(); ++i) {
                if (!(used >> i & 1)) left.push_back(pool[i]);
            }
            slot = permanent(a.principal(left), PermanentMethod::kNaive);
        }
        return *slot;
    };

    const auto target = static_cast<std::size_t>(y);
    Complex total{};
    auto walk = [&](auto&& self, std::size_t at, std::size_t used, Complex weight) -> void {
        if (a(at, target) != Complex{}) total += weight * a(at, target) * cover_rest(used);
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (used >> i & 1 || a(at, pool[i]) == Complex{}) continue;
            self(self, pool[i], used | std::size_t{1} << i, weight * a(at, pool[i]));
        }
    };
    walk(walk, static_cast<std::size_t>(x), 0, 1.0);
    return total;
}

Complex row_replacement_permanent(const Gadget& g, int x, int y, const std::vector<int>& o) {
    check_pair(g, x, y, o);
    Equation eq;
    std::vector<int> outer = o;
    outer.push_back(x);
    outer.push_back(y);
    std::sort(outer.begin(), outer.end());
    for (int v : outer) eq.vertices.push_back(static_cast<std::size_t>(v));
    for (int v = g.degree; v < g.order(); ++v) eq.vertices.push_back(static_cast<std::size_t>(v));
    for (std::size_t p = 0; p < eq.vertices.size(); ++p) {
        if (eq.vertices[p] == static_cast<std::size_t>(y)) eq.replaced_row = static_cast<int>(p);
        if (eq.vertices[p] == static_cast<std::size_t>(x)) eq.replaced_col = static_cast<int>(p);
    }
    return permanent(equation_matrix(eq, g.matrix), PermanentMethod::kNaive);
}

namespace {

std::string complex_pair(Complex z) {
    return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
}

}  // namespace

std::string export_constraints(const ConstraintSystem& system, double theta, bool symbolic_theta) {
    const std::size_t order = static_cast<std::size_t>(system.degree + system.inner);
    std::string out;
    for (const Equation& eq : system.equations) {
        out += "# " + eq.tag.label() + "\n";
        std::string line;
        for (const auto& [key, coeff] : eq.lhs.terms()) {
            if (!line.empty()) line += " + ";
            std::string term;
            if (key.empty() || coeff != Complex{1.0, 0.0}) term = complex_pair(coeff);
            for (int s : key) {
                if (!term.empty()) term += "*";
                term += "x_" + std::to_string(static_cast<std::size_t>(s) / order) + "_" +
                        std::to_string(static_cast<std::size_t>(s) % order);
            }
            line += term;
        }
        if (line.empty()) line = "(0,0)";
        line += " = ";
        switch (eq.rhs) {
            case Rhs::kPhase: line += symbolic_theta ? "T" : complex_pair(unit_phase(theta)); break;
            case Rhs::kOne: line += "(1,0)"; break;
            case Rhs::kZero: line += "(0,0)"; break;
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace permsum
