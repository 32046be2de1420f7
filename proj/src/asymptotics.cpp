#include "omegaerg/asymptotics.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace omegaerg {

namespace {

double loglog(std::uint64_t k) {
    return std::log(std::log(static_cast<double>(k)));
}

void check_checkpoints(const std::vector<std::uint64_t>& cps, std::uint64_t min_k,
                       const WeightTable& table, const char* who) {
    if (cps.empty()) throw std::invalid_argument(std::string(who) + ": empty checkpoint list");
    std::uint64_t prev = 0;
    for (std::uint64_t k : cps) {
        if (k < min_k)
            throw std::invalid_argument(std::string(who) + ": checkpoint below " +
                                        std::to_string(min_k));
        if (k <= prev)
            throw std::invalid_argument(std::string(who) + ": checkpoints must be strictly increasing");
        if (k > table.k_max())
            throw std::out_of_range(std::string(who) + ": checkpoint exceeds table bound");
        prev = k;
    }
}

} // namespace

unsigned floor_loglog(std::uint64_t k) {
    if (k < 3) throw std::invalid_argument("floor_loglog: k too small (loglog undefined)");
    return static_cast<unsigned>(std::floor(loglog(k)));
}

std::vector<std::uint64_t> default_checkpoints() {
    return {16, 100, 1000, 10000, 100000, 1000000};
}

RatioSeries hardy_wright_drift(const WeightTable& table,
                               const std::vector<std::uint64_t>& checkpoints) {
    check_checkpoints(checkpoints, 16, table, "hardy_wright_drift");
    RatioSeries out{"hardy_wright_drift", table.kind(), checkpoints, {}};
    out.ratios.reserve(checkpoints.size());
    for (std::uint64_t k : checkpoints) {
        const double kk = static_cast<double>(k);
        out.ratios.push_back((static_cast<double>(table.prefix_sum(k)) - kk * loglog(k)) / kk);
    }
    return out;
}

FittedSeries mertens_drift(const WeightTable& table,
                           const std::vector<std::uint64_t>& checkpoints) {
    check_checkpoints(checkpoints, 4, table, "mertens_drift");
    FittedSeries out;
    out.series = {"mertens_drift", table.kind(), checkpoints, {}};
    out.fitted = 0.0;
    for (std::uint64_t k : checkpoints) {
        const double e = mertens_sum(k, table);
        out.series.ratios.push_back(e - loglog(k));
        out.fitted = std::max(out.fitted, e / loglog(k));  // empirical C_P
    }
    return out;
}

RatioSeries norton_ratio(const WeightTable& table,
                         const std::vector<std::uint64_t>& checkpoints) {
    check_checkpoints(checkpoints, 2, table, "norton_ratio");
    RatioSeries out{"norton_ratio", table.kind(), checkpoints, {}};
    for (std::uint64_t k : checkpoints) {
        const double num = exp_sum(k, 1.9, table);
        const double den = static_cast<double>(k) * std::exp(0.9 * mertens_sum(k, table));
        out.ratios.push_back(num / den);
    }
    return out;
}

FittedSeries power_sum_ratio(const WeightTable& table,
                             const std::vector<std::uint64_t>& checkpoints) {
    check_checkpoints(checkpoints, 16, table, "power_sum_ratio");
    FittedSeries out;
    out.series = {"power_sum_ratio", table.kind(), checkpoints, {}};
    out.fitted = 0.0;
    for (std::uint64_t k : checkpoints) {
        const unsigned nu = floor_loglog(k);
        const double mean_pow =
            static_cast<double>(power_sum(k, nu, table)) / static_cast<double>(k);
        const double c = std::pow(mean_pow, 1.0 / nu) / nu;
        out.series.ratios.push_back(c);
        out.fitted = std::max(out.fitted, c);
    }
    return out;
}

RatioSeries delange_ratio(const WeightTable& table, unsigned m,
                          const std::vector<std::uint64_t>& checkpoints) {
    if (m < 1 || m > 6)
        throw std::invalid_argument("delange_ratio: m must be in [1, 6]");
    check_checkpoints(checkpoints, 16, table, "delange_ratio");
    RatioSeries out{"delange_ratio_m" + std::to_string(m), table.kind(), checkpoints, {}};
    for (std::uint64_t k : checkpoints) {
        const double den =
            static_cast<double>(k) * std::pow(loglog(k), static_cast<double>(m));
        out.ratios.push_back(static_cast<double>(power_sum(k, m, table)) / den);
    }
    return out;
}

FittedSeries s_power_lower_constant(const WeightTable& table,
                                    const std::vector<std::uint64_t>& checkpoints) {
    check_checkpoints(checkpoints, 16, table, "s_power_lower_constant");
    FittedSeries out;
    out.series = {"s_power_lower_constant", table.kind(), checkpoints, {}};
    out.fitted = std::numeric_limits<double>::infinity();
    for (std::uint64_t k : checkpoints) {
        const unsigned nu = floor_loglog(k);
        const double c = std::pow(
            static_cast<double>(table.prefix_sum(k)) / (static_cast<double>(k) * nu),
            static_cast<double>(nu));
        out.series.ratios.push_back(c);
        out.fitted = std::min(out.fitted, c);
    }
    return out;
}

DyadicComparability dyadic_comparability(const WeightTable& table, std::uint64_t k_max) {
    if (k_max < 2) throw std::invalid_argument("dyadic_comparability: k_max must be >= 2");
    if (k_max > table.k_max())
        throw std::out_of_range("dyadic_comparability: k_max exceeds table bound");
    const std::uint64_t covering = std::bit_ceil(k_max);
    if (covering > table.k_max())
        throw std::out_of_range(
            "dyadic_comparability: table must extend to the covering power of two");

    DyadicComparability best;
    best.c_r = 1.0;
    best.argmax_k = 2;
    const auto& prefix = table.prefix();
    std::uint64_t pow2 = 2;
    for (std::uint64_t k = 2; k <= k_max; ++k) {
        if (k > pow2) pow2 <<= 1;
        const double ratio =
            static_cast<double>(prefix[pow2]) / static_cast<double>(prefix[k]);
        if (ratio > best.c_r) {
            best.c_r = ratio;
            best.argmax_k = k;
        }
    }
    return best;
}

} // namespace omegaerg
