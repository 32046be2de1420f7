#ifndef OMEGAERG_MAXIMAL_HPP
#define OMEGAERG_MAXIMAL_HPP

#include <cstdint>
#include <vector>

#include "omegaerg/weights.hpp"

namespace omegaerg {

/// Finitely supported nonnegative function on the integers.
/// mass[i] is the value at offset + i; zero outside the array.
class LatticeFunction {
public:
    LatticeFunction() = default;
    LatticeFunction(std::int64_t offset, std::vector<double> mass);

    double value(std::int64_t i) const {
        const std::int64_t rel = i - offset_;
        if (rel < 0 || rel >= static_cast<std::int64_t>(mass_.size())) return 0.0;
        return mass_[static_cast<std::size_t>(rel)];
    }

    std::int64_t offset() const { return offset_; }
    const std::vector<double>& mass() const { return mass_; }

    bool is_zero() const { return l1_ == 0.0; }
    double l1_norm() const { return l1_; }
    double linf_norm() const { return linf_; }

    /// First and last strictly positive positions. Only valid when
    /// !is_zero().
    std::int64_t support_min() const { return support_min_; }
    std::int64_t support_max() const { return support_max_; }

    LatticeFunction translated(std::int64_t shift) const;
    LatticeFunction scaled(double c) const;

private:
    std::int64_t offset_ = 0;
    std::vector<double> mass_;
    double l1_ = 0.0;
    double linf_ = 0.0;
    std::int64_t support_min_ = 0;
    std::int64_t support_max_ = -1;
};

/// Closed integer interval [lo, hi].
struct IntegerInterval {
    std::int64_t lo;
    std::int64_t hi;
};

using IntervalFamily = std::vector<IntegerInterval>;

enum class MaximalMode { Full, Dyadic };

struct MaximalReport {
    double lambda = 0.0;
    std::uint64_t level_count = 0;
    double l1_mass = 0.0;
    double ratio = 0.0;        // lambda * level_count / l1_mass
    MaximalMode mode = MaximalMode::Full;
    std::uint64_t max_scale = 0;   // largest K (full) or largest 2^l (dyadic) scanned
    std::int64_t scan_lo = 0;      // j-window actually scanned
    std::int64_t scan_hi = -1;
};

/// M_{g,K} phi(j) = (1/S_{g,K}) sum_{n=1}^{K} g(n) phi(j+n).
/// K = 1 has S_{g,1} = 0 and raises std::domain_error.
double weighted_average(const LatticeFunction& phi, std::int64_t j, std::uint64_t k,
                        const WeightTable& table);

/// sup over K >= 2 of M_{g,K} phi(j). The supremum is attained for
/// K <= max(supp phi) - j: beyond that the numerator is frozen while
/// S_{g,K} keeps growing, so the scan stops there.
double sup_maximal(const LatticeFunction& phi, std::int64_t j, const WeightTable& table);

/// max over 1 <= l <= l_max of M_{g,2^l} phi(j).
double dyadic_maximal(const LatticeFunction& phi, std::int64_t j, const WeightTable& table,
                      unsigned l_max);

/// Same with l_max chosen from the support extent relative to j (first
/// power of two past max(supp) - j); larger l only shrink the average.
double dyadic_maximal(const LatticeFunction& phi, std::int64_t j, const WeightTable& table);

/// Counts j with the selected maximal function > lambda. The scan window
/// is [min(supp) - K_need, max(supp) - 2] where K_need is derived from
/// S_{g,K}: outside it no average can exceed lambda.
MaximalReport level_set_report(const LatticeFunction& phi, double lambda,
                               const WeightTable& table, MaximalMode mode);

struct LocalizedMoment {
    double lhs = 0.0;           // sum_{j=1}^{K} (M_{g,K} phi(k+j))^nu
    double rhs_constant = 0.0;  // smallest c making the window bound hold
    double window_mass = 0.0;   // sum_{j=2}^{2K} phi(k+j)
    unsigned nu = 1;
};

/// Localized moment bound at anchor k and scale K >= 16: reports the
/// moment sum and the smallest constant c with
///   lhs <= W * (c W / K)^{nu-1},  W the window mass, nu = floor(loglog K).
/// For nu = 1 the right side degenerates to W and the constant is 0.
LocalizedMoment localized_moment_check(const LatticeFunction& phi, std::int64_t k_anchor,
                                       std::uint64_t k, const WeightTable& table);

/// Largest rhs_constant over a sweep of scales and test functions;
/// callers multiply by a safety factor before using it as a threshold.
double fit_localized_constant(const std::vector<LatticeFunction>& phis,
                              const std::vector<std::uint64_t>& scales,
                              const WeightTable& table);

/// Subfamily with the same union in which no integer lies in more than
/// two members. Furthest-reach chain selection.
IntervalFamily select_bounded_overlap(const IntervalFamily& family);

struct BlockClassification {
    unsigned l = 0;
    double threshold = 0.0;          // 1 / (100 c_gmax)
    std::int64_t r_lo = 0;           // enumerated block index range
    std::int64_t r_hi = -1;
    std::vector<std::int64_t> r_plus;
    std::vector<std::int64_t> r_minus;
};

/// Splits the dyadic blocks (r 2^l, (r+1) 2^l] near the support into heavy
/// (mean of the doubled window above the threshold) and light ones.
/// Requires l > 4.
BlockClassification classify_blocks(const LatticeFunction& phi, unsigned l,
                                    const WeightTable& table, double c_gmax);

struct CertificateReport {
    double lambda = 1.0;
    double l1_mass = 0.0;
    double c_gmax = 0.0;       // constant used for thresholds and bounds
    unsigned l_max = 0;        // dyadic scales 1..l_max examined

    std::uint64_t direct_count = 0;      // #{j : max_l M_{2^l} phi(j) > 1}

    // Small scales l <= 4: count through the interval covering.
    std::uint64_t small_direct = 0;      // #{j : some l <= 4 exceeds}
    double small_bound = 0.0;            // 16 * sum of selected interval masses

    // Light blocks, l > 4: blockwise moment bound.
    std::uint64_t rminus_direct = 0;     // level-set points counted per (l, block)
    double rminus_bound = 0.0;           // sum of W * (1/100)^{nu-1}
    std::uint64_t rminus_violations = 0; // blocks whose direct count beats the bound

    // Heavy blocks, l > 4: bounded-overlap covering of the doubled blocks.
    std::uint64_t rplus_direct = 0;
    double rplus_bound = 0.0;            // points in the union of doubled blocks
    double rplus_paper_bound = 0.0;      // 800 * c_gmax * l1

    double certificate_bound = 0.0;      // small + rminus + rplus
    bool ok = false;                     // direct_count <= certificate_bound
};

/// Runs the full three-way decomposition of the dyadic level set at
/// lambda = 1 and checks the direct count against the assembled bound.
CertificateReport claim_certificate(const LatticeFunction& phi, const WeightTable& table,
                                    double c_gmax);

} // namespace omegaerg

#endif
