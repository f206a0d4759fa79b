#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace permsum::detail {

/// Pairwise sum in a fixed tree shape, so the result only depends on the values.
template <class T>
T tree_sum(std::vector<T> values) {
    if (values.empty()) return T{};
    while (values.size() > 1) {
        std::size_t half = (values.size() + 1) / 2;
        for (std::size_t i = 0; i < values.size() / 2; ++i) {
            values[i] = values[2 * i] + values[2 * i + 1];
        }
        if (values.size() % 2 == 1) values[half - 1] = values.back();
        values.resize(half);
    }
    return values.front();
}

/// Evaluates `chunk(c)` for c in [0, chunks) on up to `threads` threads and
/// reduces with tree_sum. Chunk boundaries are chosen by the caller, never by
/// the thread count, so the result is bit-identical for any `threads`.
template <class T, class F>
T chunked_sum(std::size_t chunks, F&& chunk, unsigned threads) {
    std::vector<T> partial(chunks);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    if (threads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) partial[c] = chunk(c);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t c = t; c < chunks; c += threads) partial[c] = chunk(c);
            });
        }
    }
    return tree_sum(std::move(partial));
}

}  // namespace permsum::detail
