#include "doctest.h"

#include <random>
#include <sstream>

#include "permsum/error.hpp"
#include "permsum/gadgets.hpp"
#include "permsum/permanent.hpp"
#include "test_support.hpp"

using namespace permsum;
using permsum::testing::random_unit_disk_matrix;

namespace {

const double kThetaGrid[] = {0.0, kPi / 8, kPi / 4, kPi / 2, kPi, 1.234, kTwoPi - 0.1};

std::vector<std::string> equation_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') out.push_back(line);
    }
    return out;
}

std::vector<Complex> flatten(const ComplexMatrix& m) {
    return {m.data().begin(), m.data().end()};
}

}  // namespace

TEST_CASE("reference gadget matrices") {
    const double theta = 0.77;
    CHECK(gadget_matrix(1, theta).matrix == ComplexMatrix{{unit_phase(theta)}});
    CHECK(gadget_matrix(2, kPi).matrix == ComplexMatrix{{0, -1, 1}, {-1, 0, 1}, {1, 1, 1}});
    CHECK(gadget_matrix(2, 0).matrix == ComplexMatrix{{1, 0, 0}, {-1, 0, 1}, {1, 1, 1}});
    const Gadget a3 = gadget_matrix(3, theta);
    CHECK(a3.degree == 3);
    CHECK(a3.inner == 2);
    // The symmetric variant differs from the reference matrix in entry (4,0) only.
    const Gadget sym = cubic_gadget(theta, CubicVariant::kSymmetric);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            if (i == 4 && j == 0) {
                CHECK(sym.matrix(4, 0) == sym.matrix(0, 4));
                CHECK(std::abs(sym.matrix(4, 0) - a3.matrix(4, 0)) > 1e-3);
            } else {
                CHECK(sym.matrix(i, j) == a3.matrix(i, j));
            }
        }
    }
    CHECK(cubic_gadget(theta, CubicVariant::kReference).matrix == a3.matrix);
    CHECK(clause_gadget(3, theta).matrix == sym.matrix);
    CHECK_THROWS_AS(gadget_matrix(4, 0.0), UnsupportedError);
    CHECK_THROWS_AS(gadget_matrix(0, 0.0), UnsupportedError);
}

TEST_CASE("symbolic permanent") {
    using SP = SymbolicPolynomial;
    CHECK(symbolic_permanent({}) == SP::constant(1.0));
    CHECK(symbolic_permanent({{SP::symbol(0)}}) == SP::symbol(0));
    SymbolicMatrix two = {{SP::symbol(0), SP::symbol(1)}, {SP::symbol(2), SP::symbol(3)}};
    SP want = SP::symbol(0) * SP::symbol(3);
    want += SP::symbol(1) * SP::symbol(2);
    CHECK(symbolic_permanent(two) == want);

    SymbolicMatrix big(7, std::vector<SP>(7, SP::constant(1.0)));
    CHECK_THROWS_AS(symbolic_permanent(big), ResourceError);

    SUBCASE("property: m! monomials and agreement with numeric permanents") {
        std::mt19937_64 rng(41);
        std::size_t factorial = 1;
        for (std::size_t m = 1; m <= 6; ++m) {
            factorial *= m;
            SymbolicMatrix sm(m, std::vector<SP>(m));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) sm[i][j] = SP::symbol(static_cast<int>(i * m + j));
            const SP p = symbolic_permanent(sm);
            CHECK(p.terms().size() == factorial);
            const ComplexMatrix a = random_unit_disk_matrix(m, rng);
            CHECK(std::abs(p.evaluate(flatten(a)) - permanent(a)) < 1e-12);
        }
    }
}

TEST_CASE("constraint generation counts") {
    const auto d1 = generate_constraints(1, 0);
    REQUIRE(d1.equations.size() == 2);
    CHECK(d1.equations[0].rhs == Rhs::kPhase);
    CHECK(d1.equations[0].lhs == SymbolicPolynomial::symbol(0));
    CHECK(d1.equations[1].rhs == Rhs::kOne);
    CHECK(d1.equations[1].lhs == SymbolicPolynomial::constant(1.0));

    const auto d2 = generate_constraints(2, 1);
    CHECK(d2.equations.size() == 6);
    CHECK(d2.num_symbols == 9);
    const auto d3 = generate_constraints(3, 2);
    CHECK(d3.equations.size() == 20);
    CHECK(d3.num_symbols == 25);

    for (int d = 2; d <= 5; ++d) {
        for (int k = 0; d + k <= 5; ++k) {
            const std::size_t want = (std::size_t{1} << d) * (d * (d - 1) / 4.0 + 1) + 0.5;
            CHECK(generate_constraints(d, k).equations.size() == want);
            CHECK(expected_equation_count(d) == want);
        }
    }
    CHECK_THROWS_AS(generate_constraints(4, 3), ResourceError);
    CHECK_THROWS_AS(generate_constraints(0, 1), DomainError);
}

TEST_CASE("gadget verification") {
    SUBCASE("A1 and A2 pass on the theta grid") {
        for (double theta : kThetaGrid) {
            CAPTURE(theta);
            for (int d : {1, 2}) {
                const auto report = verify_gadget(gadget_matrix(d, theta), theta, 1e-9);
                CHECK(report.pass);
                CHECK(report.failing().empty());
            }
        }
        const auto report = verify_gadget(gadget_matrix(2, kPi), kPi, 1e-12);
        CHECK(report.pass);
        CHECK(report.equations[0].tag.label() == "nonzero s=11");
        CHECK(std::abs(report.equations[0].lhs - Complex(-1.0, 0.0)) < 1e-15);
    }
    SUBCASE("the symmetric cubic gadget passes on the theta grid") {
        for (double theta : kThetaGrid) {
            CAPTURE(theta);
            CHECK(verify_gadget(cubic_gadget(theta, CubicVariant::kSymmetric), theta, 1e-9).pass);
        }
    }
    SUBCASE("the reference cubic gadget fails away from theta = 0") {
        CHECK(verify_gadget(gadget_matrix(3, 0.0), 0.0, 1e-9).pass);
        for (double theta : kThetaGrid) {
            if (theta == 0.0) continue;
            CAPTURE(theta);
            const auto report = verify_gadget(gadget_matrix(3, theta), theta, 1e-9);
            CHECK_FALSE(report.pass);
            std::vector<std::string> failing;
            for (const auto& e : report.failing()) failing.push_back(e.tag.label());
            CHECK(failing == std::vector<std::string>{
                                 "nonzero s=111", "nonzero s=110", "nonzero s=101", "nonzero s=100",
                                 "zero x=1 y=0 o={}", "zero x=1 y=0 o={2}", "zero x=1 y=2 o={0}",
                                 "zero x=2 y=0 o={}", "zero x=2 y=0 o={1}", "zero x=2 y=1 o={0}"});
        }
    }
    SUBCASE("identity treated as a quadratic gadget") {
        const Gadget id{2, 1, ComplexMatrix::identity(3)};
        // No crossing paths at all, and every kept submatrix has permanent 1.
        CHECK(verify_gadget(id, 0.0, 1e-12).pass);
        const auto report = verify_gadget(id, 1.0, 1e-9);
        REQUIRE(report.failing().size() == 1);
        CHECK(report.failing()[0].tag.label() == "nonzero s=11");
        CHECK(report.max_zero_residual == 0.0);
    }
}

TEST_CASE("symbolic and numeric residuals agree") {
    for (double theta : kThetaGrid) {
        for (const Gadget& g : {gadget_matrix(2, theta), gadget_matrix(3, theta),
                                cubic_gadget(theta, CubicVariant::kSymmetric)}) {
            const auto sys = generate_constraints(g.degree, g.inner);
            const auto report = verify_gadget(g, theta, 1e-9);
            const auto values = flatten(g.matrix);
            for (std::size_t e = 0; e < sys.equations.size(); ++e) {
                const Complex symbolic = sys.equations[e].lhs.evaluate(values);
                CHECK(std::abs(std::abs(symbolic - report.equations[e].rhs) - report.equations[e].residual) <
                      1e-12);
            }
        }
    }
}

TEST_CASE("partial cover sums") {
    CHECK(std::abs(partial_cover_sum(gadget_matrix(2, 0.6), 0, 1, {})) < 1e-15);
    CHECK(std::abs(partial_cover_sum(gadget_matrix(2, kPi), 1, 0, {})) < 1e-15);
    CHECK_THROWS_AS(partial_cover_sum(gadget_matrix(1, 0.6), 0, 0, {}), DomainError);
    CHECK_THROWS_AS(partial_cover_sum(gadget_matrix(3, 0.6), 0, 1, {1}), DomainError);

    SUBCASE("property: direct enumeration equals the row-replacement permanent") {
        std::mt19937_64 rng(55);
        for (int trial = 0; trial < 20; ++trial) {
            const int d = 2 + trial % 3;
            const int k = static_cast<int>(rng() % 3);
            Gadget g{d, k, random_unit_disk_matrix(static_cast<std::size_t>(d + k), rng)};
            for (int x = 0; x < d; ++x) {
                for (int y = 0; y < d; ++y) {
                    if (x == y) continue;
                    std::vector<int> rest;
                    for (int i = 0; i < d; ++i)
                        if (i != x && i != y) rest.push_back(i);
                    for (std::size_t sub = 0; sub < (std::size_t{1} << rest.size()); ++sub) {
                        std::vector<int> o;
                        for (std::size_t r = 0; r < rest.size(); ++r)
                            if (sub >> r & 1) o.push_back(rest[r]);
                        const Complex direct = partial_cover_sum(g, x, y, o);
                        const Complex trick = row_replacement_permanent(g, x, y, o);
                        CHECK(std::abs(direct - trick) < 1e-10);
                    }
                }
            }
        }
    }
}

TEST_CASE("constraint export") {
    CHECK(equation_lines(export_constraints(generate_constraints(1, 0), kPi, false)) ==
          std::vector<std::string>{"x_0_0 = (-1,0)", "(1,0) = (1,0)"});
    const auto lines = equation_lines(export_constraints(generate_constraints(2, 1), 0.0, true));
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] ==
          "x_0_0*x_1_1*x_2_2 + x_0_0*x_1_2*x_2_1 + x_0_1*x_1_0*x_2_2 + "
          "x_0_1*x_1_2*x_2_0 + x_0_2*x_1_0*x_2_1 + x_0_2*x_1_1*x_2_0 = T");
    CHECK(lines[1] == "x_0_0*x_2_2 + x_0_2*x_2_0 = (1,0)");
    CHECK(lines[4] == "x_0_1*x_2_2 + x_0_2*x_2_1 = (0,0)");
    const std::string text = export_constraints(generate_constraints(2, 1), 0.0, true);
    CHECK(text.rfind("# nonzero s=11\n", 0) == 0);
    CHECK(export_constraints(ConstraintSystem{}, 0.0, true).empty());
}
