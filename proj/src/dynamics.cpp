#include "omegaerg/dynamics.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "omegaerg/dd.hpp"

namespace omegaerg {

SystemSpec SystemSpec::rotation() {
    SystemSpec s;
    s.kind = Kind::Rotation;
    s.golden_alpha = true;
    return s;
}

SystemSpec SystemSpec::rotation(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("SystemSpec::rotation: alpha must lie in (0,1)");
    SystemSpec s;
    s.kind = Kind::Rotation;
    s.golden_alpha = false;
    s.alpha = alpha;
    return s;
}

SystemSpec SystemSpec::doubling(std::uint64_t seed) {
    SystemSpec s;
    s.kind = Kind::Doubling;
    s.seed = seed;
    return s;
}

SystemSpec SystemSpec::bernoulli(std::vector<double> p, std::uint64_t seed) {
    if (p.empty()) throw std::invalid_argument("SystemSpec::bernoulli: empty probability vector");
    double sum = 0.0;
    for (double v : p) {
        if (!(v > 0.0)) throw std::invalid_argument("SystemSpec::bernoulli: probabilities must be positive");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("SystemSpec::bernoulli: probabilities must sum to 1");
    SystemSpec s;
    s.kind = Kind::BernoulliShift;
    s.p = std::move(p);
    s.seed = seed;
    return s;
}

Observable Observable::interval_indicator(double a, double b) {
    if (!(a >= 0.0 && a < b && b <= 1.0))
        throw std::invalid_argument("Observable::interval_indicator: need 0 <= a < b <= 1");
    Observable o;
    o.kind = Kind::IntervalIndicator;
    o.a = a;
    o.b = b;
    o.known_mean = b - a;
    return o;
}

Observable Observable::exponential(int frequency) {
    Observable o;
    o.kind = Kind::Exponential;
    o.frequency = frequency;
    o.known_mean = (frequency == 0) ? 1.0 : 0.0;
    return o;
}

Observable Observable::cylinder(std::vector<std::uint32_t> word,
                                const std::vector<double>& p) {
    if (word.empty()) throw std::invalid_argument("Observable::cylinder: empty word");
    double mean = 1.0;
    for (std::uint32_t s : word) {
        if (s >= p.size())
            throw std::invalid_argument("Observable::cylinder: symbol outside the alphabet");
        mean *= p[s];
    }
    Observable o;
    o.kind = Kind::CylinderIndicator;
    o.word = std::move(word);
    o.known_mean = mean;
    return o;
}

namespace {

void check_compatible(const SystemSpec& spec, const Observable& obs) {
    const bool interval_system = spec.kind != SystemSpec::Kind::BernoulliShift;
    const bool symbolic_obs = obs.kind == Observable::Kind::CylinderIndicator;
    if (interval_system == symbolic_obs)
        throw std::invalid_argument("orbit_values: observable does not fit the system");
}

double eval_interval_obs(const Observable& obs, double x) {
    if (obs.kind == Observable::Kind::IntervalIndicator)
        return (x >= obs.a && x < obs.b) ? 1.0 : 0.0;
    return std::cos(2.0 * std::numbers::pi * obs.frequency * x);
}

// 53-bit sliding window over a seeded bit reservoir; the shift map never
// collapses because fresh bits keep entering from the right.
std::vector<double> doubling_orbit(const Observable& obs, std::uint64_t seed,
                                   std::uint64_t n_max) {
    const std::uint64_t reservoir_len = n_max + 64;
    std::vector<std::uint8_t> bits(reservoir_len);
    std::mt19937_64 rng(seed);
    std::uint64_t word = 0;
    for (std::uint64_t i = 0; i < reservoir_len; ++i) {
        if (i % 64 == 0) word = rng();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    assert(bits.size() >= n_max + 64);

    constexpr int mantissa = 53;
    constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
    std::uint64_t window = 0;
    for (int i = 0; i < mantissa; ++i) window = (window << 1) | bits[1 + i];

    std::vector<double> out(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        out[n - 1] = eval_interval_obs(obs, static_cast<double>(window) * scale);
        window = ((window << 1) | bits[n + mantissa]) & ((std::uint64_t(1) << mantissa) - 1);
    }
    return out;
}

std::vector<double> bernoulli_orbit(const SystemSpec& spec, const Observable& obs,
                                    std::uint64_t n_max) {
    const std::size_t w = obs.word.size();
    const std::uint64_t len = n_max + w + 1;
    std::vector<std::uint32_t> syms(len);
    std::mt19937_64 rng(spec.seed);
    std::vector<double> cdf(spec.p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.p.size(); ++i) {
        acc += spec.p[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    for (std::uint64_t i = 0; i < len; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
        std::uint32_t s = 0;
        while (u >= cdf[s]) ++s;
        syms[i] = s;
    }

    std::vector<double> out(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        bool hit = true;
        for (std::size_t i = 0; i < w && hit; ++i) hit = (syms[n + i] == obs.word[i]);
        out[n - 1] = hit ? 1.0 : 0.0;
    }
    return out;
}

} // namespace

std::vector<double> orbit_values(const SystemSpec& spec, const Observable& obs,
                                 double x0, std::uint64_t n_max) {
    check_compatible(spec, obs);
    if (n_max == 0) throw std::invalid_argument("orbit_values: n_max must be positive");
    if (n_max >= (std::uint64_t(1) << 53))
        throw std::invalid_argument("orbit_values: n_max too large");

    switch (spec.kind) {
    case SystemSpec::Kind::Rotation: {
        if (!(x0 >= 0.0 && x0 < 1.0))
            throw std::invalid_argument("orbit_values: x0 must lie in [0,1)");
        const dd::Real2 alpha =
            spec.golden_alpha ? dd::golden_ratio_alpha() : dd::Real2{spec.alpha, 0.0};
        const dd::Real2 start{x0, 0.0};
        std::vector<double> out(n_max);
        for (std::uint64_t n = 1; n <= n_max; ++n)
            out[n - 1] = eval_interval_obs(obs, dd::rotation_point(alpha, start, n));
        return out;
    }
    case SystemSpec::Kind::Doubling:
        if (!(x0 >= 0.0 && x0 < 1.0))
            throw std::invalid_argument("orbit_values: x0 must lie in [0,1)");
        // The initial point is the seeded bit string itself.
        return doubling_orbit(obs, spec.seed, n_max);
    case SystemSpec::Kind::BernoulliShift:
        return bernoulli_orbit(spec, obs, n_max);
    }
    throw std::logic_error("orbit_values: unreachable");
}

double weighted_birkhoff(const SystemSpec& spec, const Observable& obs, double x0,
                         std::uint64_t k, const WeightTable& table) {
    if (k < 2) throw std::invalid_argument("weighted_birkhoff: K must be >= 2");
    if (k > table.k_max()) throw std::out_of_range("weighted_birkhoff: K exceeds table bound");

    const std::vector<double> orbit = orbit_values(spec, obs, x0, k);
    const auto& values = table.values();
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t n = 1; n <= k; ++n) {
        const double term = values[n] * orbit[n - 1] - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum / static_cast<double>(table.prefix_sum(k));
}

ConvergenceSeries convergence_report(const SystemSpec& spec, const Observable& obs,
                                     double x0, const std::vector<std::uint64_t>& checkpoints,
                                     const WeightTable& table) {
    if (checkpoints.empty())
        throw std::invalid_argument("convergence_report: empty checkpoint list");
    std::uint64_t prev = 0;
    for (std::uint64_t k : checkpoints) {
        if (k < 2) throw std::invalid_argument("convergence_report: checkpoints must be >= 2");
        if (k <= prev)
            throw std::invalid_argument("convergence_report: checkpoints must be strictly increasing");
        if (k > table.k_max())
            throw std::out_of_range("convergence_report: checkpoint exceeds table bound");
        prev = k;
    }

    const std::uint64_t k_top = checkpoints.back();
    const std::vector<double> orbit = orbit_values(spec, obs, x0, k_top);
    const auto& values = table.values();

    ConvergenceSeries series;
    series.checkpoints = checkpoints;
    double wsum = 0.0, wcomp = 0.0, usum = 0.0, ucomp = 0.0;
    std::size_t next_cp = 0;
    for (std::uint64_t n = 1; n <= k_top; ++n) {
        const double f = orbit[n - 1];
        const double wterm = values[n] * f - wcomp;
        const double wnext = wsum + wterm;
        wcomp = (wnext - wsum) - wterm;
        wsum = wnext;
        const double uterm = f - ucomp;
        const double unext = usum + uterm;
        ucomp = (unext - usum) - uterm;
        usum = unext;
        if (next_cp < checkpoints.size() && n == checkpoints[next_cp]) {
            const double s = static_cast<double>(table.prefix_sum(n));
            series.weighted_error.push_back(std::abs(wsum / s - obs.known_mean));
            series.unweighted_error.push_back(
                std::abs(usum / static_cast<double>(n) - obs.known_mean));
            ++next_cp;
        }
    }
    return series;
}

LatticeFunction transfer_to_lattice(const SystemSpec& spec, const Observable& obs,
                                    double x0, std::uint64_t n_max) {
    if (obs.kind == Observable::Kind::Exponential && obs.frequency != 0)
        throw std::invalid_argument(
            "transfer_to_lattice: signed observable; split into positive and negative parts");
    std::vector<double> values = orbit_values(spec, obs, x0, n_max);
    for (double v : values)
        if (v < 0.0)
            throw std::invalid_argument("transfer_to_lattice: observable must be nonnegative");
    return LatticeFunction(1, std::move(values));
}

} // namespace omegaerg
