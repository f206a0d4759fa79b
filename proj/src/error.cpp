#include "permsum/error.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace permsum {

std::size_t size_cap(std::size_t default_cap) {
    const char* env = std::getenv("PERMSUM_MAX_N");
    if (env == nullptr) {
        return default_cap;
    }
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end) {
        return default_cap;
    }
    return value;
}

void require_within_cap(std::size_t n, std::size_t default_cap, const std::string& what) {
    const std::size_t cap = size_cap(default_cap);
    if (n > cap) {
        throw ResourceError(what + ": size " + std::to_string(n) + " exceeds cap " +
                            std::to_string(cap));
    }
}

}  // namespace permsum
