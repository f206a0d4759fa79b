#include "doctest.h"

#include <Eigen/Dense>
#include <cstdlib>
#include <numeric>
#include <random>

#include "permsum/error.hpp"
#include "permsum/permanent.hpp"
#include "test_support.hpp"

using namespace permsum;
using permsum::testing::laplace_permanent;
using permsum::testing::random_unit_disk_matrix;
using permsum::testing::rel_err;

namespace {

const PermanentMethod kAll[] = {PermanentMethod::kNaive, PermanentMethod::kRyser,
                                PermanentMethod::kCycleCover, PermanentMethod::kBlockAuto};

double eigen_sigma_max(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.order(), m.order());
    for (std::size_t i = 0; i < m.order(); ++i)
        for (std::size_t j = 0; j < m.order(); ++j) e(i, j) = m(i, j);
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(e).singularValues()(0);
}

}  // namespace

TEST_CASE("permanent definition examples") {
    const Complex a{1, 2}, b{-0.5, 0.3}, c{0.25, -1}, d{2, 0};
    ComplexMatrix two{{a, b}, {c, d}};
    ComplexMatrix ones{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    ComplexMatrix quad{{0, -1, 1}, {-1, 0, 1}, {1, 1, 1}};
    for (PermanentMethod method : kAll) {
        CAPTURE(to_string(method));
        CHECK(std::abs(permanent(two, method) - (a * d + b * c)) < 1e-14);
        CHECK(std::abs(permanent(ones, method) - 6.0) < 1e-13);
        CHECK(std::abs(permanent(quad, method) - (-1.0)) < 1e-13);
        CHECK(permanent(ComplexMatrix{}, method) == Complex(1.0, 0.0));
    }
}

TEST_CASE("permanent laws") {
    std::mt19937_64 rng(5);
    ComplexMatrix a = random_unit_disk_matrix(3, rng);
    ComplexMatrix b = random_unit_disk_matrix(3, rng);
    ComplexMatrix block(6);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            block(i, j) = a(i, j);
            block(i + 3, j + 3) = b(i, j);
        }
    }
    const Complex pa = laplace_permanent(a), pb = laplace_permanent(b);
    for (PermanentMethod method : kAll) {
        CHECK(rel_err(permanent(block, method), pa * pb) < 1e-12);
    }
    CHECK(support_components(block).size() == 2);

    const Complex scale{0.3, -1.1};
    CHECK(rel_err(permanent(scale * a), std::pow(scale, 3) * pa) < 1e-12);
}

TEST_CASE("property: engines agree and match an independent Laplace expansion") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 7;
        ComplexMatrix m = random_unit_disk_matrix(n, rng);
        // Sparsify some matrices so block decomposition has work to do.
        if (trial % 2 == 0) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (rng() % 3 == 0) m(i, j) = 0.0;
        }
        const Complex want = laplace_permanent(m);
        for (PermanentMethod method : kAll) {
            CAPTURE(to_string(method));
            CHECK(rel_err(permanent(m, method), want) < 1e-10);
        }
        // Row-0 Laplace identity through the engine itself.
        Complex expansion{};
        for (std::size_t j = 0; j < n; ++j) expansion += m(0, j) * permanent(m.minor(0, j));
        CHECK(rel_err(expansion, want) < 1e-10);
    }
}

TEST_CASE("property: transpose and simultaneous permutation invariance") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng() % 6;
        ComplexMatrix m = random_unit_disk_matrix(n, rng);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const Complex p = permanent(m);
        CHECK(rel_err(permanent(m.transpose()), p) < 1e-10);
        CHECK(rel_err(permanent(m.principal(perm)), p) < 1e-10);
    }
}

TEST_CASE("property: |per A| <= ||A||_2^n") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        ComplexMatrix m = random_unit_disk_matrix(n, rng);
        const double bound = std::pow(spectral_norm(m), static_cast<double>(n));
        CHECK(std::abs(permanent(m)) <= bound * (1 + 1e-9));
    }
}

TEST_CASE("ryser is deterministic across thread counts") {
    std::mt19937_64 rng(3);
    ComplexMatrix m = random_unit_disk_matrix(14, rng);
    const Complex one = permanent(m, PermanentMethod::kRyser, 1);
    CHECK(permanent(m, PermanentMethod::kRyser, 3) == one);
    CHECK(permanent(m, PermanentMethod::kRyser, 8) == one);
}

TEST_CASE("cycle cover enumeration") {
    SUBCASE("three self-loops plus a directed triangle") {
        const Complex a{2, 0}, b{0, 1}, c{-1, 0.5}, d{0.5, 0}, e{3, -1}, f{0, -2};
        ComplexMatrix g{{a, d, 0}, {0, b, e}, {f, 0, c}};
        auto covers = enumerate_cycle_covers(g);
        REQUIRE(covers.size() == 2);
        CHECK(std::abs(covers[0].weight - a * b * c) < 1e-14);
        CHECK(std::abs(covers[1].weight - d * e * f) < 1e-14);
        CHECK(covers[1].cycles() == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
        CHECK(covers[0].cycles().size() == 3);
    }
    SUBCASE("identity") {
        auto covers = enumerate_cycle_covers(ComplexMatrix::identity(2));
        REQUIRE(covers.size() == 1);
        CHECK(covers[0].weight == Complex(1.0, 0.0));
    }
    SUBCASE("zero matrix") { CHECK(enumerate_cycle_covers(ComplexMatrix(3)).empty()); }
    SUBCASE("sum of cover weights is the naive permanent") {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 10; ++t) {
            ComplexMatrix m = random_unit_disk_matrix(1 + rng() % 6, rng);
            Complex sum{};
            for (const auto& cover : enumerate_cycle_covers(m)) sum += cover.weight;
            CHECK(rel_err(sum, permanent(m, PermanentMethod::kNaive)) < 1e-12);
        }
    }
}

TEST_CASE("size caps") {
    CHECK_THROWS_AS(permanent(ComplexMatrix(11), PermanentMethod::kNaive), ResourceError);
    CHECK_THROWS_AS(permanent(ComplexMatrix(11), PermanentMethod::kCycleCover), ResourceError);
    CHECK_THROWS_AS(permanent(ComplexMatrix(33), PermanentMethod::kRyser), ResourceError);
    CHECK_THROWS_AS(enumerate_cycle_covers(ComplexMatrix(9)), ResourceError);
    // Block decomposition lifts the cap when components are small.
    CHECK(permanent(ComplexMatrix::identity(40), PermanentMethod::kBlockAuto) == Complex(1.0, 0.0));

    ::setenv("PERMSUM_MAX_N", "4", 1);
    CHECK_THROWS_AS(permanent(ComplexMatrix(5), PermanentMethod::kNaive), ResourceError);
    ::unsetenv("PERMSUM_MAX_N");
    CHECK_NOTHROW(permanent(ComplexMatrix(5), PermanentMethod::kNaive));
}

TEST_CASE("gurvits estimator") {
    SUBCASE("diagonal matrices have zero variance") {
        ComplexMatrix d(4);
        d(0, 0) = {1, 1};
        d(1, 1) = 2.0;
        d(2, 2) = {0, -1};
        d(3, 3) = 0.5;
        const Complex want = Complex{1, 1} * 2.0 * Complex{0, -1} * 0.5;
        CHECK(std::abs(gurvits_estimate(d, 1, 42) - want) < 1e-15);
        CHECK(std::abs(gurvits_estimate(d, 1000, 7) - want) < 1e-13);
    }
    SUBCASE("2x2 converges to ad+bc within 5 standard errors") {
        const Complex a{0.3, 0.4}, b{-0.7, 0.1}, c{0.2, -0.9}, d{0.5, 0.5};
        ComplexMatrix m{{a, b}, {c, d}};
        // Exact estimator variance by enumerating the four sign vectors.
        const Complex mean = a * d + b * c;
        double var = 0.0;
        for (int s0 : {-1, 1}) {
            for (int s1 : {-1, 1}) {
                Complex v = double(s0 * s1) * (a * double(s0) + b * double(s1)) *
                            (c * double(s0) + d * double(s1));
                var += std::norm(v - mean) / 4.0;
            }
        }
        const std::uint64_t n = 100000;
        const Complex est = gurvits_estimate(m, n, 2024);
        CHECK(std::abs(est - mean) < 5.0 * std::sqrt(var / double(n)));
    }
    SUBCASE("deterministic for a fixed seed and any thread count") {
        std::mt19937_64 rng(1);
        ComplexMatrix m = random_unit_disk_matrix(5, rng);
        const Complex one = gurvits_estimate(m, 5000, 9);
        CHECK(gurvits_estimate(m, 5000, 9) == one);
        CHECK(gurvits_estimate(m, 5000, 9, 4) == one);
        CHECK(gurvits_estimate(m, 5000, 10) != one);
    }
    CHECK_THROWS_AS(gurvits_estimate(ComplexMatrix::identity(2), 0, 1), DomainError);
}

TEST_CASE("gurvits concentration: additive error rarely exceeds 3 eps ||A||^n") {
    std::mt19937_64 rng(77);
    const double eps = 0.2;
    for (std::size_t n : {3u, 5u}) {
        ComplexMatrix m = random_unit_disk_matrix(n, rng);
        const Complex exact = permanent(m);
        const double scale = std::pow(spectral_norm(m), double(n));
        const auto samples = static_cast<std::uint64_t>(std::ceil(double(n * n) / (eps * eps)));
        int bad = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            if (std::abs(gurvits_estimate(m, samples, seed) - exact) > 3 * eps * scale) ++bad;
        }
        CHECK(bad <= 2);
    }
}

TEST_CASE("spectral norm") {
    CHECK(spectral_norm(ComplexMatrix::identity(5)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_norm(ComplexMatrix(3)) == 0.0);
    ComplexMatrix quad{{0, -1, 1}, {-1, 0, 1}, {1, 1, 1}};
    CHECK(spectral_norm(quad) == doctest::Approx(1.73).epsilon(0.01 / 1.73));
    std::mt19937_64 rng(12);
    for (int t = 0; t < 30; ++t) {
        ComplexMatrix m = random_unit_disk_matrix(1 + rng() % 9, rng);
        CHECK(spectral_norm(m) == doctest::Approx(eigen_sigma_max(m)).epsilon(1e-8));
    }
    // Nilpotent shift: the all-ones start vector is not in the kernel, norm 1.
    ComplexMatrix shift(4);
    for (std::size_t i = 0; i + 1 < 4; ++i) shift(i, i + 1) = 1.0;
    CHECK(spectral_norm(shift) == doctest::Approx(1.0));
    CHECK_THROWS_AS(spectral_norm(ComplexMatrix{}), DomainError);
}

TEST_CASE("dense matrix text format") {
    ComplexMatrix m{{Complex{1, 0}, Complex{-0.5, 2.25}}, {Complex{0, -1e-3}, Complex{3.141592653589793, 0}}};
    std::string text = format_dense_matrix(m);
    CHECK(parse_dense_matrix(text) == m);
    CHECK(parse_complex_token("1+0j") == Complex(1, 0));
    CHECK(parse_complex_token("-2.5e-3-1e+2j") == Complex(-2.5e-3, -100));
    CHECK(parse_complex_token("4") == Complex(4, 0));
    CHECK(parse_complex_token("-3j") == Complex(0, -3));
    CHECK_THROWS_AS(parse_dense_matrix("2\n1 2 3\n"), DomainError);
    CHECK_THROWS_AS(parse_complex_token("x+1j"), DomainError);
}
