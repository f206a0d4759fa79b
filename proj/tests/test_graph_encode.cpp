#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "permsum/error.hpp"
#include "permsum/gadgets.hpp"
#include "permsum/graph_encode.hpp"
#include "permsum/permanent.hpp"
#include "test_support.hpp"

using namespace permsum;
using permsum::testing::bits_of;
using permsum::testing::random_encodable_polynomial;
using permsum::testing::random_iqp;
using permsum::testing::random_raw_clauses;

namespace {

std::string read_data(const std::string& name) {
    std::ifstream in(std::string(PERMSUM_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Complex encoded_sum(const EncodedGraph& g) {
    const auto method = g.n() <= kNaiveCap ? PermanentMethod::kNaive : PermanentMethod::kRyser;
    return g.multiplier * permanent(g.adjacency, method);
}

// Sets PERMSUM_MAX_N for the lifetime of the object.
struct CapOverride {
    explicit CapOverride(const char* value) { ::setenv("PERMSUM_MAX_N", value, 1); }
    ~CapOverride() { ::unsetenv("PERMSUM_MAX_N"); }
};

}  // namespace

TEST_CASE("encoding examples") {
    SUBCASE("single linear clause") {
        const double theta = 1.1;
        const auto g = encode_polynomial(canonicalize({{theta, {0}}}, 1));
        CHECK(g.adjacency == ComplexMatrix{{1, 1}, {1, unit_phase(theta)}});
        CHECK(std::abs(permanent(g.adjacency) - (1.0 + unit_phase(theta))) < 1e-15);
        CHECK(g.multiplier == Complex(1.0, 0.0));
    }
    SUBCASE("single quadratic clause") {
        const double theta = 2.3;
        const auto g = encode_polynomial(canonicalize({{theta, {0, 1}}}, 2));
        CHECK(g.n() == 5);
        CHECK(std::abs(permanent(g.adjacency) - (3.0 + unit_phase(theta))) < 1e-14);
        REQUIRE(g.variables.size() == 2);
        CHECK(g.variables[0].anchor == 0);
        CHECK(g.variables[0].outer == std::vector<std::size_t>{2});
        CHECK(g.variables[1].outer == std::vector<std::size_t>{3});
    }
    SUBCASE("empty polynomial") {
        const auto g = encode_polynomial(canonicalize({}, 2));
        CHECK(g.n() == 0);
        CHECK(g.multiplier == Complex(4.0, 0.0));
        CHECK(permanent(g.adjacency) == Complex(1.0, 0.0));
    }
    SUBCASE("constant phase and clause-free variables go to the multiplier") {
        const auto p = canonicalize({{0.5, {}}, {1.0, {2}}}, 4);
        const auto g = encode_polynomial(p);
        CHECK(g.n() == 2);
        CHECK(std::abs(g.multiplier - 8.0 * unit_phase(0.5)) < 1e-15);
        CHECK(std::abs(encoded_sum(g) - exp_sum(p)) < 1e-13);
        const auto kept = encode_polynomial(p, true);
        CHECK(kept.n() == 5);
        CHECK(kept.multiplier == g.multiplier);
        CHECK(std::abs(encoded_sum(kept) - exp_sum(p)) < 1e-13);
    }
    SUBCASE("every variable cycle is a simple weight-1 cycle through its anchor") {
        const auto p = canonicalize({{1.0, {0, 1}}, {2.0, {1, 2}}, {0.3, {0, 1, 2}}, {0.7, {1}}}, 3);
        const auto g = encode_polynomial(p);
        for (const auto& cycle : g.variables) {
            CHECK(g.adjacency(cycle.anchor, cycle.anchor) == Complex(1.0, 0.0));
            std::size_t prev = cycle.anchor;
            for (std::size_t v : cycle.outer) {
                CHECK(g.adjacency(prev, v) == Complex(1.0, 0.0));
                prev = v;
            }
            CHECK(g.adjacency(prev, cycle.anchor) == Complex(1.0, 0.0));
        }
        CHECK(g.variables[1].outer.size() == 4);
    }
    SUBCASE("degree four is rejected") {
        CHECK_THROWS_AS(encode_polynomial(canonicalize({{1.0, {0, 1, 2, 3}}}, 4)), UnsupportedError);
    }
}

TEST_CASE("property: encoding identity") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int max_degree = trial < 200 ? 2 : 3;
        const Polynomial p = random_encodable_polynomial(rng, 5, 6, max_degree, 24);
        const auto g = encode_polynomial(p);
        const double tol = 1e-8 * std::ldexp(1.0, p.num_vars);
        CHECK(std::abs(encoded_sum(g) - exp_sum(p)) < tol);
        if (g.n() <= kNaiveCap) {
            CHECK(std::abs(g.multiplier * permanent(g.adjacency, PermanentMethod::kBlockAuto) - exp_sum(p)) <
                  tol);
        }
    }
}

TEST_CASE("property: permanent does not depend on the cycle visiting order") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const Polynomial p = random_encodable_polynomial(rng, 4, 5, 3, 22);
        Polynomial shuffled = p;
        std::shuffle(shuffled.clauses.begin(), shuffled.clauses.end(), rng);
        const Complex a = permanent(encode_polynomial(p).adjacency);
        const Complex b = permanent(encode_polynomial(shuffled).adjacency);
        CHECK(std::abs(b - a) < 1e-8 * std::ldexp(1.0, p.num_vars));
    }
}

TEST_CASE("cycle covers classify into assignments") {
    // Encoded graphs exceed the default enumeration cap; they are sparse.
    CapOverride cap("14");
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int max_degree = trial < 25 ? 2 : 3;
        const Polynomial p = canonicalize(random_raw_clauses(n, 1 + static_cast<int>(rng() % 2), max_degree, rng), n);
        const auto g = encode_polynomial(p);
        if (g.n() > 14) continue;
        std::map<std::uint64_t, Complex> consistent;
        Complex inconsistent{};
        for (const auto& cover : enumerate_cycle_covers(g.adjacency)) {
            // x_v = 0 when the whole variable cycle is used, 1 when the anchor
            // keeps its self-loop and no cycle edge is used.
            std::uint64_t x = 0;
            bool ok = true;
            for (const auto& cycle : g.variables) {
                std::vector<std::size_t> ring{cycle.anchor};
                ring.insert(ring.end(), cycle.outer.begin(), cycle.outer.end());
                std::size_t used = 0;
                for (std::size_t i = 0; i < ring.size(); ++i) {
                    used += cover.successor[ring[i]] == ring[(i + 1) % ring.size()];
                }
                if (used == ring.size()) continue;
                const bool self_loop = cover.successor[cycle.anchor] == cycle.anchor;
                if (self_loop && used == 0) {
                    x |= std::uint64_t{1} << cycle.var;
                } else {
                    ok = false;
                }
            }
            if (ok) {
                consistent[x] += cover.weight;
            } else {
                inconsistent += cover.weight;
            }
        }
        CHECK(std::abs(inconsistent) < 1e-12);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            bool free_bit_set = false;
            std::vector<bool> assignment = bits_of(x, n);
            for (int v = 0; v < n; ++v) {
                bool in_graph = false;
                for (const auto& cycle : g.variables) in_graph = in_graph || cycle.var == v;
                free_bit_set = free_bit_set || (!in_graph && assignment[static_cast<std::size_t>(v)]);
            }
            if (free_bit_set) continue;  // clause-free variables live in the multiplier
            const Complex want = std::polar(1.0, evaluate(p, assignment) - p.constant_phase);
            CHECK(std::abs(consistent[x] - want) < 1e-12);
        }
    }
}

TEST_CASE("zero-zero encodings") {
    SUBCASE("worked example") {
        const IqpCircuit c = parse_iqp(read_data("example.iqp"));
        const auto enc = encode_zero_zero(c);
        CHECK(enc.graph.n() == 12);
        CHECK(predicted_node_count(c) == 12);
        CHECK(ht_node_count(c) == 19);
        CHECK(enc.scale == doctest::Approx(1.0 / 8.0));
        const Complex amp = enc.amplitude();
        CHECK(std::abs(amp - Complex(0.348, 0.511)) < 5e-3);
        CHECK(std::abs(amp - amplitude_direct(c, {0, 0, 0}, {0, 0, 0})) < 1e-12);
    }
    SUBCASE("q=1, empty diagonal keeps one anchor") {
        const auto enc = encode_zero_zero(parse_iqp("iqp q=1\n"));
        CHECK(enc.graph.n() == 1);
        CHECK(enc.graph.adjacency(0, 0) == Complex(1.0, 0.0));
        CHECK(std::abs(enc.amplitude() - 1.0) < 1e-15);
    }
    SUBCASE("CZ") {
        const auto enc = encode_zero_zero(parse_iqp(read_data("cz.iqp")));
        CHECK(enc.graph.n() == 5);
        CHECK(std::abs(enc.amplitude() - 0.5) < 1e-15);
    }
    SUBCASE("counts without gates") {
        const IqpCircuit c = parse_iqp("iqp q=3\n");
        CHECK(predicted_node_count(c) == 3);
        CHECK(encode_zero_zero(c).graph.n() == 3);
        CHECK_THROWS_AS(predicted_node_count(parse_iqp("iqp q=2\nlayer\nlayer\n")), DomainError);
    }
    SUBCASE("property: vertex count and amplitude for random IQP-1 circuits") {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 60; ++trial) {
            const int q = 1 + static_cast<int>(rng() % 4);
            const IqpCircuit c = random_iqp(rng, q, 1, static_cast<int>(rng() % 4), false, true);
            const auto enc = encode_zero_zero(c);
            CHECK(enc.graph.n() == predicted_node_count(c));
            const std::vector<bool> zeros(static_cast<std::size_t>(q), false);
            CHECK(std::abs(enc.amplitude() - statevector_amplitude(to_ht(c), zeros, zeros)) < 1e-10);
        }
    }
}

TEST_CASE("general amplitudes through the graph") {
    SUBCASE("Hadamard-Toffoli example") {
        const HtCircuit c = parse_ht(read_data("example.ht"));
        const auto enc = encode_amplitude(c, {0, 0, 0}, {1, 1, 1});
        CHECK(enc.scale == doctest::Approx(1.0 / (8.0 * std::sqrt(2.0))));
        CHECK(std::abs(enc.amplitude() - statevector_amplitude(c, {0, 0, 0}, {1, 1, 1})) < 1e-12);
        for (std::uint64_t a = 0; a < 8; ++a) {
            for (std::uint64_t b = 0; b < 8; ++b) {
                const auto e = encode_amplitude(c, bits_of(a, 3), bits_of(b, 3));
                CHECK(std::abs(e.amplitude() - statevector_amplitude(c, bits_of(a, 3), bits_of(b, 3))) < 1e-12);
            }
        }
    }
    SUBCASE("multi-layer IQP circuits with arbitrary boundaries") {
        const IqpCircuit c = parse_iqp("iqp q=2\np pi/3 0 1\np 0.7 1\nlayer\np -pi/5 0\n");
        for (std::uint64_t a = 0; a < 4; ++a) {
            for (std::uint64_t b = 0; b < 4; ++b) {
                const auto e = encode_amplitude(c, bits_of(a, 2), bits_of(b, 2));
                CHECK(std::abs(e.amplitude() - statevector_amplitude(to_ht(c), bits_of(a, 2), bits_of(b, 2))) <
                      1e-10);
            }
        }
    }
    SUBCASE("infeasible boundary") {
        const auto enc = encode_amplitude(HtCircuit{1, {}}, {0}, {1});
        CHECK(enc.amplitude() == Complex(0.0, 0.0));
    }
}

TEST_CASE("graph JSON") {
    EncodedGraph one;
    one.adjacency = ComplexMatrix{{unit_phase(kPi)}};
    CHECK(export_graph_json(one) == R"({"entries":[[0,0,-1.0,0.0]],"n":1})");
    CHECK(export_graph_json(EncodedGraph{}) == R"({"entries":[],"n":0})");

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = encode_polynomial(random_encodable_polynomial(rng, 4, 4, 3, 20));
        CHECK(parse_graph_json(export_graph_json(g)) == g);
    }
    EncodedGraph dense;
    dense.adjacency = permsum::testing::random_unit_disk_matrix(6, rng);
    dense.multiplier = {0.1, -1.0 / 3.0};
    CHECK(parse_graph_json(export_graph_json(dense)) == dense);

    CHECK_THROWS_AS(parse_graph_json(R"({"n":1,"entries":[[1,0,1.0,0.0]]})"), DomainError);
    CHECK_THROWS_AS(parse_graph_json(R"({"n":1,"entries":[[0,0,1.0]]})"), DomainError);
    CHECK_THROWS_AS(parse_graph_json("not json"), DomainError);
}
