#pragma once

#include <cstdint>

namespace aberrant {

/// C(n, r) for nonnegative n; zero when r < 0 or r > n. Exact while the result
/// fits in 64 bits.
constexpr std::uint64_t binomial(std::int64_t n, std::int64_t r) noexcept {
    if (r < 0 || n < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    std::uint64_t result = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        result = result * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

}  // namespace aberrant
