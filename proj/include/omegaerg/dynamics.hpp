#ifndef OMEGAERG_DYNAMICS_HPP
#define OMEGAERG_DYNAMICS_HPP

#include <cstdint>
#include <vector>

#include "omegaerg/maximal.hpp"
#include "omegaerg/weights.hpp"

namespace omegaerg {

/// A concrete ergodic system: an irrational rotation of [0,1), the
/// doubling map on a random bit string, or a Bernoulli shift on the
/// symbols {0..|p|-1}. The stochastic variants draw their state from the
/// seed; runs are exactly reproducible.
struct SystemSpec {
    enum class Kind { Rotation, Doubling, BernoulliShift };

    Kind kind = Kind::Rotation;
    bool golden_alpha = true;  // rotation angle defaults to (sqrt5 - 1)/2
    double alpha = 0.0;        // used when golden_alpha is false
    std::vector<double> p;     // Bernoulli symbol probabilities
    std::uint64_t seed = 0;

    static SystemSpec rotation();
    static SystemSpec rotation(double alpha);
    static SystemSpec doubling(std::uint64_t seed);
    static SystemSpec bernoulli(std::vector<double> p, std::uint64_t seed);
};

/// An observable with its exact mean under the invariant measure of the
/// system it is paired with.
struct Observable {
    enum class Kind { IntervalIndicator, Exponential, CylinderIndicator };

    Kind kind = Kind::IntervalIndicator;
    double a = 0.0, b = 1.0;            // interval indicator on [a, b)
    int frequency = 0;                  // cos(2 pi freq x)
    std::vector<std::uint32_t> word;    // cylinder word
    double known_mean = 0.0;

    static Observable interval_indicator(double a, double b);
    static Observable exponential(int frequency);
    static Observable cylinder(std::vector<std::uint32_t> word,
                               const std::vector<double>& p);
};

/// f(T^n x0) for n = 1..n_max. Rotation points are reduced with
/// double-double arithmetic; the doubling map shifts an explicit bit
/// reservoir of length n_max + 64; the Bernoulli shift reads a seeded
/// symbol stream. Throws std::invalid_argument for x0 outside [0,1) on
/// the interval systems or for a system/observable mismatch.
std::vector<double> orbit_values(const SystemSpec& spec, const Observable& obs,
                                 double x0, std::uint64_t n_max);

/// (1/S_{g,K}) sum_{n<=K} g(n) f(T^n x0). Requires 2 <= K <= k_max.
double weighted_birkhoff(const SystemSpec& spec, const Observable& obs, double x0,
                         std::uint64_t k, const WeightTable& table);

struct ConvergenceSeries {
    std::vector<std::uint64_t> checkpoints;
    std::vector<double> weighted_error;    // |A_{g,K} f - mean|
    std::vector<double> unweighted_error;  // |K^{-1} sum f - mean|
};

/// Errors of the weighted and plain Birkhoff averages along checkpoints,
/// one orbit generation per call.
ConvergenceSeries convergence_report(const SystemSpec& spec, const Observable& obs,
                                     double x0, const std::vector<std::uint64_t>& checkpoints,
                                     const WeightTable& table);

/// Packages the orbit sequence as a lattice function with offset 1, so the
/// discrete maximal operators can be compared against Monte Carlo
/// level-set estimates on the measure space. The observable must be
/// nonnegative.
LatticeFunction transfer_to_lattice(const SystemSpec& spec, const Observable& obs,
                                    double x0, std::uint64_t n_max);

} // namespace omegaerg

#endif
