#include "permsum/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "permsum/detail/parallel.hpp"
#include "permsum/error.hpp"

namespace permsum {

PermanentMethod parse_permanent_method(std::string_view name) {
    if (name == "naive") return PermanentMethod::kNaive;
    if (name == "ryser") return PermanentMethod::kRyser;
    if (name == "cycle_cover") return PermanentMethod::kCycleCover;
    if (name == "block_auto") return PermanentMethod::kBlockAuto;
    throw DomainError("unknown permanent method '" + std::string(name) + "'");
}

std::string_view to_string(PermanentMethod method) {
    switch (method) {
        case PermanentMethod::kNaive: return "naive";
        case PermanentMethod::kRyser: return "ryser";
        case PermanentMethod::kCycleCover: return "cycle_cover";
        case PermanentMethod::kBlockAuto: return "block_auto";
    }
    return "?";
}

namespace {

Complex permanent_naive(const ComplexMatrix& m) {
    const std::size_t n = m.order();
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    Complex total{};
    do {
        Complex term = 1.0;
        for (std::size_t i = 0; i < n; ++i) term *= m(i, sigma[i]);
        total += term;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

// Depth-first walk over rows, skipping zero entries. `visit` receives each
// complete permutation with its weight.
template <class Visit>
void walk_covers(const ComplexMatrix& m, Visit&& visit) {
    const std::size_t n = m.order();
    std::vector<std::size_t> sigma(n);
    std::vector<bool> used(n, false);
    auto rec = [&](auto& self, std::size_t row, Complex weight) -> void {
        if (row == n) {
            visit(sigma, weight);
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || m(row, j) == Complex{}) continue;
            used[j] = true;
            sigma[row] = j;
            self(self, row + 1, weight * m(row, j));
            used[j] = false;
        }
    };
    rec(rec, 0, Complex{1.0, 0.0});
}

Complex permanent_cycle_cover(const ComplexMatrix& m) {
    Complex total{};
    walk_covers(m, [&](const std::vector<std::size_t>&, Complex w) { total += w; });
    return total;
}

Complex permanent_ryser(const ComplexMatrix& m, unsigned threads) {
    const std::size_t n = m.order();
    if (n == 0) return 1.0;
    const std::uint64_t total = std::uint64_t{1} << n;
    const unsigned chunk_bits = static_cast<unsigned>(std::min<std::size_t>(n, 6));
    const std::uint64_t chunks = std::uint64_t{1} << chunk_bits;
    const std::uint64_t per_chunk = total / chunks;

    auto chunk_sum = [&](std::size_t c) {
        const std::uint64_t begin = c * per_chunk;
        const std::uint64_t end = begin + per_chunk;
        std::vector<Complex> row_sum(n, Complex{});
        std::uint64_t gray = begin ^ (begin >> 1);
        for (std::size_t j = 0; j < n; ++j) {
            if ((gray >> j) & 1U) {
                for (std::size_t i = 0; i < n; ++i) row_sum[i] += m(i, j);
            }
        }
        Complex acc{};
        for (std::uint64_t k = begin; k < end; ++k) {
            if (k != begin) {
                const auto j = static_cast<std::size_t>(std::countr_zero(k));
                gray ^= std::uint64_t{1} << j;
                if ((gray >> j) & 1U) {
                    for (std::size_t i = 0; i < n; ++i) row_sum[i] += m(i, j);
                } else {
                    for (std::size_t i = 0; i < n; ++i) row_sum[i] -= m(i, j);
                }
            }
            if (gray == 0) continue;
            Complex prod = 1.0;
            for (std::size_t i = 0; i < n; ++i) prod *= row_sum[i];
            if (std::popcount(gray) % 2 == 1) {
                acc -= prod;
            } else {
                acc += prod;
            }
        }
        return acc;
    };
    Complex sum = detail::chunked_sum<Complex>(static_cast<std::size_t>(chunks), chunk_sum, threads);
    return (n % 2 == 1) ? -sum : sum;
}

}  // namespace

std::vector<std::vector<std::size_t>> support_components(const ComplexMatrix& m) {
    const std::size_t n = m.order();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && m(i, j) != Complex{}) {
                std::size_t a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return groups;
}

Complex permanent(const ComplexMatrix& m, PermanentMethod method, unsigned threads) {
    const std::size_t n = m.order();
    switch (method) {
        case PermanentMethod::kNaive:
            require_within_cap(n, kNaiveCap, "permanent(naive)");
            return permanent_naive(m);
        case PermanentMethod::kCycleCover:
            require_within_cap(n, kNaiveCap, "permanent(cycle_cover)");
            return permanent_cycle_cover(m);
        case PermanentMethod::kRyser:
            require_within_cap(n, kRyserCap, "permanent(ryser)");
            return permanent_ryser(m, threads);
        case PermanentMethod::kBlockAuto: {
            Complex product = 1.0;
            for (const auto& block : support_components(m)) {
                require_within_cap(block.size(), kRyserCap, "permanent(block_auto) component");
                ComplexMatrix sub = m.principal(block);
                product *= block.size() == 1 ? sub(0, 0) : permanent_ryser(sub, threads);
                if (product == Complex{}) break;
            }
            return product;
        }
    }
    throw DomainError("permanent: unknown method");
}

std::vector<std::vector<std::size_t>> CycleCover::cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(successor.size(), false);
    for (std::size_t start = 0; start < successor.size(); ++start) {
        if (seen[start]) continue;
        std::vector<std::size_t> cycle;
        for (std::size_t v = start; !seen[v]; v = successor[v]) {
            seen[v] = true;
            cycle.push_back(v);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

std::vector<CycleCover> enumerate_cycle_covers(const ComplexMatrix& m) {
    require_within_cap(m.order(), kEnumerateCap, "enumerate_cycle_covers");
    std::vector<CycleCover> covers;
    walk_covers(m, [&](const std::vector<std::size_t>& sigma, Complex w) {
        covers.push_back(CycleCover{sigma, w});
    });
    return covers;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Complex gurvits_estimate(const ComplexMatrix& m, std::uint64_t samples, std::uint64_t seed,
                         unsigned threads) {
    if (samples == 0) {
        throw DomainError("gurvits_estimate: need at least one sample");
    }
    const std::size_t n = m.order();
    if (n == 0) return 1.0;
    const std::uint64_t key = mix64(seed);
    const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(samples, 64));

    auto chunk_sum = [&](std::size_t c) {
        const std::uint64_t begin = samples * c / chunks;
        const std::uint64_t end = samples * (c + 1) / chunks;
        std::vector<double> sign(n);
        Complex acc{};
        for (std::uint64_t s = begin; s < end; ++s) {
            const std::uint64_t stream = mix64(key ^ mix64(s));
            double parity = 1.0;
            std::uint64_t bits = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i % 64 == 0) bits = mix64(stream + i / 64);
                sign[i] = ((bits >> (i % 64)) & 1U) ? -1.0 : 1.0;
                parity *= sign[i];
            }
            Complex prod = parity;
            for (std::size_t i = 0; i < n; ++i) {
                Complex dot{};
                for (std::size_t j = 0; j < n; ++j) dot += m(i, j) * sign[j];
                prod *= dot;
            }
            acc += prod;
        }
        return acc;
    };
    Complex sum = detail::chunked_sum<Complex>(chunks, chunk_sum, threads);
    return sum / static_cast<double>(samples);
}

double spectral_norm(const ComplexMatrix& m, double tol, int max_iter) {
    const std::size_t n = m.order();
    if (n == 0) {
        throw DomainError("spectral_norm: empty matrix");
    }
    auto apply_gram = [&](const std::vector<Complex>& v) {
        std::vector<Complex> av(n, Complex{});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) av[i] += m(i, j) * v[j];
        }
        std::vector<Complex> out(n, Complex{});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) out[j] += std::conj(m(i, j)) * av[i];
        }
        return out;
    };
    auto norm = [](const std::vector<Complex>& v) {
        double s = 0.0;
        for (const Complex& z : v) s += std::norm(z);
        return std::sqrt(s);
    };

    std::vector<Complex> v(n, Complex{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
    std::vector<Complex> w = apply_gram(v);
    if (norm(w) == 0.0) {
        // Start vector lies in the kernel of AᴴA; retry from a fixed generic vector.
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = Complex{std::cos(1.0 + static_cast<double>(i)), std::sin(2.0 + 0.5 * static_cast<double>(i))};
        }
        const double nv = norm(v);
        for (auto& z : v) z /= nv;
        w = apply_gram(v);
        if (norm(w) == 0.0) return 0.0;
    }
    double lambda = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        // Rayleigh quotient vᴴ(AᴴA)v with ‖v‖ = 1.
        Complex rq{};
        for (std::size_t i = 0; i < n; ++i) rq += std::conj(v[i]) * w[i];
        const double next = rq.real();
        const double nw = norm(w);
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
        if (iter > 0 && std::abs(next - lambda) <= tol * next) {
            return std::sqrt(std::max(next, nw));
        }
        lambda = next;
        w = apply_gram(v);
    }
    throw NumericError("spectral_norm: no convergence after " + std::to_string(max_iter) +
                       " iterations");
}

}  // namespace permsum
