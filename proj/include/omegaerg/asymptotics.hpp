#ifndef OMEGAERG_ASYMPTOTICS_HPP
#define OMEGAERG_ASYMPTOTICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "omegaerg/weights.hpp"

namespace omegaerg {

/// One diagnostic evaluated along an ascending checkpoint grid.
struct RatioSeries {
    std::string label;
    WeightKind kind;
    std::vector<std::uint64_t> checkpoints;
    std::vector<double> ratios;
};

/// A series together with the constant fitted from it (max or min over
/// checkpoints, depending on the diagnostic).
struct FittedSeries {
    RatioSeries series;
    double fitted = 0.0;
};

struct DyadicComparability {
    double c_r = 1.0;          // max of S_{g,2^l(K)} / S_{g,K}
    std::uint64_t argmax_k = 2;
};

/// floor(log log K), natural logs.
unsigned floor_loglog(std::uint64_t k);

/// Default checkpoint grid {16, 10^2, ..., 10^6}.
std::vector<std::uint64_t> default_checkpoints();

/// D(K) = (S_{g,K} - K log log K) / K. Checkpoints must be ascending and
/// >= 16.
RatioSeries hardy_wright_drift(const WeightTable& table,
                               const std::vector<std::uint64_t>& checkpoints);

/// E(K) - log log K per checkpoint; fitted = max E(K)/loglog K.
/// Checkpoints must be >= 4.
FittedSeries mertens_drift(const WeightTable& table,
                           const std::vector<std::uint64_t>& checkpoints);

/// sum_{n<=K} 1.9^{g(n)} / (K exp(0.9 E(K))). Checkpoints must be >= 2.
RatioSeries norton_ratio(const WeightTable& table,
                         const std::vector<std::uint64_t>& checkpoints);

/// With v = floor(loglog K): ((sum g^v / K)^{1/v}) / v; fitted = max.
/// Checkpoints must be >= 16.
FittedSeries power_sum_ratio(const WeightTable& table,
                             const std::vector<std::uint64_t>& checkpoints);

/// sum_{n<=K} g(n)^m / (K (loglog K)^m). Requires 1 <= m <= 6 and
/// checkpoints >= 16.
RatioSeries delange_ratio(const WeightTable& table, unsigned m,
                          const std::vector<std::uint64_t>& checkpoints);

/// With v = floor(loglog K): (S_{g,K} / (K v))^v; fitted = min.
/// Checkpoints must be >= 16.
FittedSeries s_power_lower_constant(const WeightTable& table,
                                    const std::vector<std::uint64_t>& checkpoints);

/// Max over 2 <= K <= k_max of S_{g,2^l} / S_{g,K}, where 2^l is the
/// smallest power of two >= K. Requires the covering power of two for
/// k_max to be within the table.
DyadicComparability dyadic_comparability(const WeightTable& table,
                                         std::uint64_t k_max);

} // namespace omegaerg

#endif
