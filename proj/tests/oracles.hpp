// Test-only oracles, independent of the sieve and operator code paths.
#ifndef OMEGAERG_TESTS_ORACLES_HPP
#define OMEGAERG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracles {

// Trial-division factor counts.
inline unsigned little_omega(std::uint64_t n) {
    unsigned distinct = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ++distinct;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ++distinct;
    return distinct;
}

inline unsigned big_omega(std::uint64_t n) {
    unsigned total = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++total;
            n /= p;
        }
    }
    if (n > 1) ++total;
    return total;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline bool squarefree(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

// Points covered by an interval family, by brute force.
inline std::vector<std::int64_t> covered_points(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& family) {
    std::vector<std::int64_t> pts;
    for (const auto& [lo, hi] : family)
        for (std::int64_t x = lo; x <= hi; ++x) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace oracles

#endif
