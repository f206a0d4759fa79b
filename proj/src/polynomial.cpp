#include "permsum/polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "permsum/detail/parallel.hpp"
#include "permsum/error.hpp"
#include "permsum/matrix.hpp"

namespace permsum {

int Polynomial::clause_free_count() const {
    std::vector<bool> used(static_cast<std::size_t>(num_vars), false);
    for (const Clause& c : clauses) {
        for (int v : c.vars) used[static_cast<std::size_t>(v)] = true;
    }
    return static_cast<int>(std::count(used.begin(), used.end(), false));
}

int Polynomial::max_degree() const {
    std::size_t d = 0;
    for (const Clause& c : clauses) d = std::max(d, c.degree());
    return static_cast<int>(d);
}

Polynomial canonicalize(const std::vector<RawClause>& raw, int num_vars) {
    if (num_vars < 0) {
        throw DomainError("canonicalize: negative variable count");
    }
    Polynomial out;
    out.num_vars = num_vars;
    std::map<std::vector<int>, std::size_t> slot;
    std::vector<Clause> merged;
    double constant = 0.0;
    for (const RawClause& rc : raw) {
        std::vector<int> vars = rc.vars;
        for (int v : vars) {
            if (v < 0 || v >= num_vars) {
                throw DomainError("canonicalize: variable index " + std::to_string(v) +
                                  " out of range for n=" + std::to_string(num_vars));
            }
        }
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        if (vars.empty()) {
            constant += rc.theta;
            continue;
        }
        auto [it, inserted] = slot.try_emplace(vars, merged.size());
        if (inserted) {
            merged.push_back(Clause{rc.theta, std::move(vars)});
        } else {
            merged[it->second].theta += rc.theta;
        }
    }
    for (Clause& c : merged) {
        c.theta = wrap_angle(c.theta);
        // Angles within rounding of 2π are zero as well.
        if (c.theta < 1e-13 || kTwoPi - c.theta < 1e-13) continue;
        out.clauses.push_back(std::move(c));
    }
    out.constant_phase = wrap_angle(constant);
    return out;
}

double evaluate(const Polynomial& poly, const std::vector<bool>& assignment) {
    if (assignment.size() != static_cast<std::size_t>(poly.num_vars)) {
        throw DomainError("evaluate: assignment has length " + std::to_string(assignment.size()) +
                          ", expected " + std::to_string(poly.num_vars));
    }
    double phase = poly.constant_phase;
    for (const Clause& c : poly.clauses) {
        bool all = std::all_of(c.vars.begin(), c.vars.end(),
                               [&](int v) { return assignment[static_cast<std::size_t>(v)]; });
        if (all) phase += c.theta;
    }
    return phase;
}

std::complex<double> exp_sum(const Polynomial& poly, unsigned threads) {
    const auto n = static_cast<std::size_t>(poly.num_vars);
    require_within_cap(n, kExpSumCap, "exp_sum");

    struct MaskedClause {
        std::uint64_t mask;
        double theta;
    };
    std::vector<MaskedClause> masked;
    masked.reserve(poly.clauses.size());
    for (const Clause& c : poly.clauses) {
        std::uint64_t mask = 0;
        for (int v : c.vars) mask |= std::uint64_t{1} << v;
        masked.push_back({mask, c.theta});
    }

    const std::uint64_t total = std::uint64_t{1} << n;
    const unsigned chunk_bits = n > 10 ? 10 : static_cast<unsigned>(n);
    const std::uint64_t chunks = std::uint64_t{1} << chunk_bits;
    const std::uint64_t per_chunk = total / chunks;

    auto chunk_sum = [&](std::size_t c) {
        std::complex<double> acc{};
        const std::uint64_t begin = c * per_chunk;
        for (std::uint64_t x = begin; x < begin + per_chunk; ++x) {
            double phase = 0.0;
            for (const MaskedClause& mc : masked) {
                if ((x & mc.mask) == mc.mask) phase += mc.theta;
            }
            acc += unit_phase(phase);
        }
        return acc;
    };
    std::complex<double> sum =
        detail::chunked_sum<std::complex<double>>(static_cast<std::size_t>(chunks), chunk_sum, threads);
    return unit_phase(poly.constant_phase) * sum;
}

Polynomial substitute(const Polynomial& poly, const std::map<int, bool>& fixed) {
    for (const auto& [v, bit] : fixed) {
        if (v < 0 || v >= poly.num_vars) {
            throw DomainError("substitute: variable index " + std::to_string(v) + " out of range");
        }
    }
    std::vector<int> new_index(static_cast<std::size_t>(poly.num_vars), -1);
    int next = 0;
    for (int v = 0; v < poly.num_vars; ++v) {
        if (!fixed.contains(v)) new_index[static_cast<std::size_t>(v)] = next++;
    }
    std::vector<RawClause> raw;
    raw.push_back({poly.constant_phase, {}});
    for (const Clause& c : poly.clauses) {
        RawClause rc{c.theta, {}};
        bool killed = false;
        for (int v : c.vars) {
            auto it = fixed.find(v);
            if (it == fixed.end()) {
                rc.vars.push_back(new_index[static_cast<std::size_t>(v)]);
            } else if (!it->second) {
                killed = true;
                break;
            }
        }
        if (!killed) raw.push_back(std::move(rc));
    }
    return canonicalize(raw, next);
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int n = -1;
    std::vector<RawClause> raw;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (n < 0) {
            std::istringstream hs(t);
            std::string keyword, size;
            hs >> keyword >> size;
            if (keyword != "poly" || size.rfind("n=", 0) != 0) {
                throw DomainError("polynomial: expected header 'poly n=<int>' on line " +
                                  std::to_string(line_no));
            }
            try {
                n = std::stoi(size.substr(2));
            } catch (const std::exception&) {
                throw DomainError("polynomial: bad variable count '" + size + "'");
            }
            if (n < 0) throw DomainError("polynomial: negative variable count");
            continue;
        }
        std::istringstream ls(t);
        std::string theta_token;
        ls >> theta_token;
        RawClause rc;
        try {
            std::size_t used = 0;
            rc.theta = std::stod(theta_token, &used);
            if (used != theta_token.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw DomainError("polynomial: bad coefficient '" + theta_token + "' on line " +
                              std::to_string(line_no));
        }
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument("trailing");
                rc.vars.push_back(v);
            } catch (const std::exception&) {
                throw DomainError("polynomial: bad variable '" + tok + "' on line " +
                                  std::to_string(line_no));
            }
        }
        raw.push_back(std::move(rc));
    }
    if (n < 0) throw DomainError("polynomial: missing 'poly n=<int>' header");
    return canonicalize(raw, n);
}

std::string format_polynomial(const Polynomial& poly) {
    std::string out = "poly n=" + std::to_string(poly.num_vars) + "\n";
    if (poly.constant_phase != 0.0) out += format_double(poly.constant_phase) + "\n";
    for (const Clause& c : poly.clauses) {
        out += format_double(c.theta);
        for (int v : c.vars) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

}  // namespace permsum
