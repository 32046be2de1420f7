#include "omegaerg/maximal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "omegaerg/asymptotics.hpp"

namespace omegaerg {

namespace {

// Inclusive-window prefix sums of the mass array, for O(1) block sums.
struct PhiPrefix {
    std::int64_t lo = 0;
    std::vector<double> pref;  // pref[i] = sum of mass[0..i-1]

    explicit PhiPrefix(const LatticeFunction& phi) : lo(phi.offset()) {
        const auto& m = phi.mass();
        pref.resize(m.size() + 1, 0.0);
        for (std::size_t i = 0; i < m.size(); ++i) pref[i + 1] = pref[i] + m[i];
    }

    double window(std::int64_t a, std::int64_t b) const {
        if (b < a) return 0.0;
        const std::int64_t n = static_cast<std::int64_t>(pref.size()) - 1;
        const std::int64_t ra = std::clamp(a - lo, std::int64_t(0), n);
        const std::int64_t rb = std::clamp(b - lo + 1, std::int64_t(0), n);
        if (rb <= ra) return 0.0;
        return pref[static_cast<std::size_t>(rb)] - pref[static_cast<std::size_t>(ra)];
    }
};

// g(n) never exceeds log2(n); bit_width gives an integer upper bound.
double g_upper_bound(std::uint64_t n) {
    return static_cast<double>(std::bit_width(std::max<std::uint64_t>(n, 2)));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// Smallest K_need such that S_{g,K} >= (l1/lambda) * bitwidth(span + K)
// for every K in [K_need, k_max]: averages at distance > K_need from the
// support then stay <= lambda. Solved segment-by-segment on the ranges
// where the bit width is constant, by binary search in the prefix array.
std::uint64_t k_need_for(const WeightTable& table, double l1, double lambda,
                         std::uint64_t span) {
    const double target = l1 / lambda;
    const auto& prefix = table.prefix();
    const std::uint64_t k_max = table.k_max();
    std::uint64_t last_bad = 1;
    const unsigned max_bits = std::bit_width(span + k_max);
    for (unsigned bits = 1; bits <= max_bits; ++bits) {
        const std::uint64_t lo_raw = std::uint64_t(1) << (bits - 1);
        const std::uint64_t hi_raw = (std::uint64_t(1) << bits) - 1;
        if (hi_raw <= span) continue;
        const std::uint64_t seg_lo =
            std::max<std::uint64_t>(2, lo_raw > span ? lo_raw - span : 2);
        const std::uint64_t seg_hi = std::min<std::uint64_t>(k_max, hi_raw - span);
        if (seg_hi < seg_lo) continue;
        const double need = target * bits;
        const std::uint64_t need_int =
            need >= 9e18 ? ~std::uint64_t(0) : static_cast<std::uint64_t>(std::ceil(need));
        const auto it = std::lower_bound(prefix.begin(), prefix.end(), need_int);
        const std::uint64_t first_good = static_cast<std::uint64_t>(it - prefix.begin());
        if (first_good > seg_hi)
            last_bad = std::max(last_bad, seg_hi);
        else if (first_good > seg_lo)
            last_bad = std::max(last_bad, first_good - 1);
    }
    return last_bad + 1;
}

// Beyond the table, S_{g,K} >= S_{g,k_max} + (K - k_max) since every
// n >= 2 contributes at least 1. Confirms S_{g,K} >= target * bitwidth(span+K)
// for all K > k_max; it is enough to test at the bit-width jumps.
bool far_field_certified(const WeightTable& table, double target, std::uint64_t span) {
    const std::uint64_t k_max = table.k_max();
    const double s_top = static_cast<double>(table.prefix_sum(k_max));
    if (s_top < target * g_upper_bound(span + k_max)) return false;
    for (unsigned b = std::bit_width(span + k_max) + 1; b < 64; ++b) {
        const double k_at_jump = std::ldexp(1.0, static_cast<int>(b - 1)) -
                                 static_cast<double>(span);
        const double lower = s_top + (k_at_jump - static_cast<double>(k_max));
        if (lower >= target * b && lower >= 4 * target * b) return true;  // dominates from here
        if (lower < target * b) return false;
    }
    return true;
}

} // namespace

LatticeFunction::LatticeFunction(std::int64_t offset, std::vector<double> mass)
    : offset_(offset), mass_(std::move(mass)) {
    double sum = 0.0, comp = 0.0;
    std::int64_t first = -1, last = -1;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        const double v = mass_[i];
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("LatticeFunction: mass must be finite and nonnegative");
        if (v > 0.0) {
            if (first < 0) first = static_cast<std::int64_t>(i);
            last = static_cast<std::int64_t>(i);
            linf_ = std::max(linf_, v);
        }
        const double term = v - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    l1_ = sum;
    if (first >= 0) {
        support_min_ = offset_ + first;
        support_max_ = offset_ + last;
    }
}

LatticeFunction LatticeFunction::translated(std::int64_t shift) const {
    return LatticeFunction(offset_ + shift, mass_);
}

LatticeFunction LatticeFunction::scaled(double c) const {
    if (!(c >= 0.0)) throw std::invalid_argument("LatticeFunction::scaled: factor must be >= 0");
    std::vector<double> m = mass_;
    for (double& v : m) v *= c;
    return LatticeFunction(offset_, std::move(m));
}

double weighted_average(const LatticeFunction& phi, std::int64_t j, std::uint64_t k,
                        const WeightTable& table) {
    if (k == 0) throw std::invalid_argument("weighted_average: K must be positive");
    if (k == 1) throw std::domain_error("weighted_average: S_{g,1} = 0, average undefined");
    if (k > table.k_max()) throw std::out_of_range("weighted_average: K exceeds table bound");
    if (phi.is_zero()) return 0.0;

    const std::int64_t n_lo = std::max<std::int64_t>(1, phi.support_min() - j);
    const std::int64_t n_hi =
        std::min<std::int64_t>(static_cast<std::int64_t>(k), phi.support_max() - j);
    if (n_hi < n_lo) return 0.0;

    const auto& values = table.values();
    double num = 0.0;
    for (std::int64_t n = n_lo; n <= n_hi; ++n)
        num += values[static_cast<std::uint64_t>(n)] * phi.value(j + n);
    return num / static_cast<double>(table.prefix_sum(k));
}

double sup_maximal(const LatticeFunction& phi, std::int64_t j, const WeightTable& table) {
    if (phi.is_zero()) return 0.0;
    const std::int64_t k_cut = phi.support_max() - j;
    if (k_cut < 2) return 0.0;
    if (static_cast<std::uint64_t>(k_cut) > table.k_max())
        throw std::out_of_range("sup_maximal: support extends past the table bound");

    const auto& values = table.values();
    const auto& prefix = table.prefix();
    const std::int64_t n_start = std::max<std::int64_t>(2, phi.support_min() - j);
    double num = 0.0, best = 0.0;
    for (std::int64_t n = n_start; n <= k_cut; ++n) {
        num += values[static_cast<std::uint64_t>(n)] * phi.value(j + n);
        const double avg = num / static_cast<double>(prefix[static_cast<std::uint64_t>(n)]);
        if (avg > best) best = avg;
    }
    return best;
}

double dyadic_maximal(const LatticeFunction& phi, std::int64_t j, const WeightTable& table,
                      unsigned l_max) {
    if (l_max == 0 || l_max >= 63)
        throw std::invalid_argument("dyadic_maximal: l_max must be in [1, 62]");
    if ((std::uint64_t(1) << l_max) > table.k_max())
        throw std::out_of_range("dyadic_maximal: 2^l_max exceeds table bound");
    if (phi.is_zero()) return 0.0;
    const std::int64_t k_cut = phi.support_max() - j;
    if (k_cut < 2) return 0.0;

    const auto& values = table.values();
    const auto& prefix = table.prefix();
    double num = 0.0, best = 0.0;
    std::int64_t n = std::max<std::int64_t>(2, phi.support_min() - j);
    for (unsigned l = 1; l <= l_max; ++l) {
        const std::int64_t pow2 = std::int64_t(1) << l;
        const std::int64_t reach = std::min(pow2, k_cut);
        for (; n <= reach; ++n)
            num += values[static_cast<std::uint64_t>(n)] * phi.value(j + n);
        const double avg = num / static_cast<double>(prefix[static_cast<std::uint64_t>(pow2)]);
        if (avg > best) best = avg;
    }
    return best;
}

double dyadic_maximal(const LatticeFunction& phi, std::int64_t j, const WeightTable& table) {
    if (phi.is_zero()) return 0.0;
    const std::int64_t k_cut = phi.support_max() - j;
    if (k_cut < 2) return 0.0;
    // Past the first power of two covering the support extent the
    // numerator is frozen and larger scales only divide by more.
    const unsigned l_max = static_cast<unsigned>(
        std::bit_width(std::bit_ceil(static_cast<std::uint64_t>(k_cut)) >> 1));
    return dyadic_maximal(phi, j, table, std::max(1u, l_max));
}

namespace {

struct LevelSetScan {
    std::int64_t j_lo = 0, j_hi = -1;
    std::uint64_t k_need = 0;      // full mode
    unsigned l_max = 0;            // dyadic mode
    std::uint64_t full_k_max = 0;  // largest K any scanned j can reach
};

LevelSetScan plan_full_scan(const LatticeFunction& phi, double lambda,
                            const WeightTable& table) {
    LevelSetScan plan;
    const std::uint64_t span =
        static_cast<std::uint64_t>(phi.support_max() - phi.support_min() + 1);
    if (!far_field_certified(table, phi.l1_norm() / lambda, span))
        throw std::out_of_range("level set scan: table too small for this mass at this lambda");
    plan.k_need = k_need_for(table, phi.l1_norm(), lambda, span);
    if (span - 1 + plan.k_need > table.k_max())
        throw std::out_of_range("level set scan: table too small for this mass at this lambda");
    plan.j_lo = phi.support_min() - static_cast<std::int64_t>(plan.k_need);
    plan.j_hi = phi.support_max() - 2;
    plan.full_k_max = span - 1 + plan.k_need;
    return plan;
}

LevelSetScan plan_dyadic_scan(const LatticeFunction& phi, double lambda,
                              const WeightTable& table) {
    LevelSetScan plan;
    const double l1 = phi.l1_norm();
    // M_{2^l} phi <= l * l1 / S_{2^l}: scale l is inert once
    // S_{2^l} * lambda >= l * l1. Beyond the table S_{2^l} >= S_top + 2^l - k_max.
    unsigned l_top = 0, l_needed = 1;
    for (unsigned l = 1; l < 63 && (std::uint64_t(1) << l) <= table.k_max(); ++l) {
        l_top = l;
        if (static_cast<double>(table.prefix_sum(std::uint64_t(1) << l)) * lambda <
            static_cast<double>(l) * l1)
            l_needed = l;
    }
    const double s_top = static_cast<double>(table.prefix_sum(table.k_max()));
    for (unsigned l = l_top + 1; l < 63; ++l) {
        const double lower =
            s_top + std::ldexp(1.0, static_cast<int>(l)) - static_cast<double>(table.k_max());
        if (lower * lambda < static_cast<double>(l) * l1)
            throw std::out_of_range(
                "level set scan: table too small for this mass at this lambda");
        if (lower * lambda >= 4.0 * static_cast<double>(l) * l1) break;  // dominates from here
    }
    if (l_needed > l_top)
        throw std::out_of_range("level set scan: table too small for this mass at this lambda");
    plan.l_max = l_needed;
    plan.j_lo = phi.support_min() - (std::int64_t(1) << l_needed);
    plan.j_hi = phi.support_max() - 2;
    return plan;
}

// Bitmask of scales l in [1, l_max] with M_{2^l} phi(j) > lambda. Two
// cheap upper bounds skip positions far from the support:
//   b1 = gbound(k_cut) * l1 / S_{K0},        K0 = first window reaching it,
//   b2 = linf * (1 - S_{K0-1} / S_{2^l_max}).
std::uint32_t dyadic_mask_at(const LatticeFunction& phi, std::int64_t j, double lambda,
                             const WeightTable& table, unsigned l_max) {
    const std::int64_t k_cut = phi.support_max() - j;
    if (k_cut < 2) return 0;
    const auto& values = table.values();
    const auto& prefix = table.prefix();

    const std::int64_t k0 = std::max<std::int64_t>(2, phi.support_min() - j);
    const double s_ref = static_cast<double>(prefix[std::uint64_t(1) << l_max]);
    const double b1 = g_upper_bound(static_cast<std::uint64_t>(k_cut)) * phi.l1_norm() /
                      static_cast<double>(prefix[static_cast<std::uint64_t>(k0)]);
    const double b2 =
        phi.linf_norm() *
        (1.0 - static_cast<double>(prefix[static_cast<std::uint64_t>(k0 - 1)]) / s_ref);
    if (b1 <= lambda || b2 <= lambda) return 0;

    std::uint32_t mask = 0;
    double num = 0.0;
    std::int64_t n = k0;
    for (unsigned l = 1; l <= l_max; ++l) {
        const std::int64_t pow2 = std::int64_t(1) << l;
        const std::int64_t reach = std::min(pow2, k_cut);
        for (; n <= reach; ++n)
            num += values[static_cast<std::uint64_t>(n)] * phi.value(j + n);
        if (num > lambda * static_cast<double>(prefix[static_cast<std::uint64_t>(pow2)]))
            mask |= std::uint32_t(1) << l;
    }
    return mask;
}

double full_sup_at(const LatticeFunction& phi, std::int64_t j, double lambda,
                   const WeightTable& table) {
    const std::int64_t k_cut = phi.support_max() - j;
    if (k_cut < 2) return 0.0;
    const auto& prefix = table.prefix();
    const std::int64_t k0 = std::max<std::int64_t>(2, phi.support_min() - j);
    const double b1 = g_upper_bound(static_cast<std::uint64_t>(k_cut)) * phi.l1_norm() /
                      static_cast<double>(prefix[static_cast<std::uint64_t>(k0)]);
    const double b2 =
        phi.linf_norm() *
        (1.0 -
         static_cast<double>(prefix[static_cast<std::uint64_t>(k0 - 1)]) /
             static_cast<double>(prefix[static_cast<std::uint64_t>(k_cut)]));
    if (b1 <= lambda || b2 <= lambda) return 0.0;
    return sup_maximal(phi, j, table);
}

} // namespace

MaximalReport level_set_report(const LatticeFunction& phi, double lambda,
                               const WeightTable& table, MaximalMode mode) {
    if (!(lambda > 0.0)) throw std::invalid_argument("level_set_report: lambda must be > 0");
    if (phi.is_zero())
        throw std::invalid_argument("level_set_report: degenerate input, ||phi||_1 = 0");

    MaximalReport report;
    report.lambda = lambda;
    report.l1_mass = phi.l1_norm();
    report.mode = mode;

    if (mode == MaximalMode::Full) {
        const LevelSetScan plan = plan_full_scan(phi, lambda, table);
        report.scan_lo = plan.j_lo;
        report.scan_hi = plan.j_hi;
        report.max_scale = plan.full_k_max;
        for (std::int64_t j = plan.j_lo; j <= plan.j_hi; ++j)
            if (full_sup_at(phi, j, lambda, table) > lambda) ++report.level_count;
    } else {
        const LevelSetScan plan = plan_dyadic_scan(phi, lambda, table);
        report.scan_lo = plan.j_lo;
        report.scan_hi = plan.j_hi;
        report.max_scale = std::uint64_t(1) << plan.l_max;
        for (std::int64_t j = plan.j_lo; j <= plan.j_hi; ++j)
            if (dyadic_mask_at(phi, j, lambda, table, plan.l_max) != 0) ++report.level_count;
    }
    report.ratio = lambda * static_cast<double>(report.level_count) / report.l1_mass;
    return report;
}

LocalizedMoment localized_moment_check(const LatticeFunction& phi, std::int64_t k_anchor,
                                       std::uint64_t k, const WeightTable& table) {
    if (k < 16) throw std::invalid_argument("localized_moment_check: K must be >= 16");
    if (k > table.k_max())
        throw std::out_of_range("localized_moment_check: K exceeds table bound");

    LocalizedMoment out;
    out.nu = floor_loglog(k);

    const PhiPrefix pp(phi);
    const std::int64_t kk = static_cast<std::int64_t>(k);
    out.window_mass = pp.window(k_anchor + 2, k_anchor + 2 * kk);

    // window_num[j] = sum_n g(n) phi(k_anchor + j + n), accumulated support
    // point by support point; only (k_anchor+1, k_anchor+2K] can contribute.
    std::vector<double> window_num(k + 1, 0.0);
    if (!phi.is_zero()) {
        const auto& values = table.values();
        const std::int64_t s_lo = std::max(phi.support_min(), k_anchor + 2);
        const std::int64_t s_hi = std::min(phi.support_max(), k_anchor + 2 * kk);
        for (std::int64_t s = s_lo; s <= s_hi; ++s) {
            const double v = phi.value(s);
            if (v == 0.0) continue;
            const std::int64_t rel = s - k_anchor;
            const std::int64_t j_lo = std::max<std::int64_t>(1, rel - kk);
            const std::int64_t j_hi = std::min<std::int64_t>(kk, rel - 1);
            for (std::int64_t j = j_lo; j <= j_hi; ++j)
                window_num[static_cast<std::size_t>(j)] +=
                    v * values[static_cast<std::uint64_t>(rel - j)];
        }
    }

    const double s_k = static_cast<double>(table.prefix_sum(k));
    double lhs = 0.0;
    for (std::uint64_t j = 1; j <= k; ++j) {
        const double m = window_num[j] / s_k;
        double p = m;
        for (unsigned e = 1; e < out.nu; ++e) p *= m;
        lhs += p;
    }
    out.lhs = lhs;

    if (out.window_mass == 0.0) {
        if (lhs > 0.0)
            throw std::runtime_error(
                "localized_moment_check: internal error, empty window with positive moment");
        out.rhs_constant = 0.0;
        return out;
    }
    if (out.nu == 1 || lhs == 0.0) {
        // The bound degenerates to lhs <= W, which mass preservation grants.
        out.rhs_constant = 0.0;
        return out;
    }
    const double w = out.window_mass;
    out.rhs_constant = static_cast<double>(k) / w *
                       std::pow(lhs / w, 1.0 / static_cast<double>(out.nu - 1));
    return out;
}

double fit_localized_constant(const std::vector<LatticeFunction>& phis,
                              const std::vector<std::uint64_t>& scales,
                              const WeightTable& table) {
    double fitted = 0.0;
    for (const auto& phi : phis) {
        if (phi.is_zero()) continue;
        for (std::uint64_t k : scales) {
            const auto m = localized_moment_check(phi, phi.support_min() - 2, k, table);
            fitted = std::max(fitted, m.rhs_constant);
        }
    }
    return fitted;
}

IntervalFamily select_bounded_overlap(const IntervalFamily& family) {
    for (const auto& iv : family)
        if (iv.lo > iv.hi)
            throw std::invalid_argument("select_bounded_overlap: empty interval");
    if (family.empty()) return {};

    IntervalFamily sorted = family;
    std::sort(sorted.begin(), sorted.end(),
              [](const IntegerInterval& a, const IntegerInterval& b) {
                  return a.lo != b.lo ? a.lo < b.lo : a.hi > b.hi;
              });

    // Furthest-reach chain: cover the first uncovered point with the
    // candidate reaching furthest right. Consecutive picks may overlap;
    // picks two apart cannot, so no point lies in more than two.
    IntervalFamily kept;
    std::size_t i = 0;
    bool have_right = false;
    std::int64_t cur_right = 0;
    while (i < sorted.size()) {
        if (have_right && sorted[i].hi <= cur_right) { ++i; continue; }
        const std::int64_t s =
            have_right ? std::max(sorted[i].lo, cur_right + 1) : sorted[i].lo;
        std::size_t best = i;
        for (std::size_t k = i; k < sorted.size() && sorted[k].lo <= s; ++k)
            if (sorted[k].hi > sorted[best].hi) best = k;
        kept.push_back(sorted[best]);
        cur_right = sorted[best].hi;
        have_right = true;
    }
    return kept;
}

BlockClassification classify_blocks(const LatticeFunction& phi, unsigned l,
                                    const WeightTable& table, double c_gmax) {
    if (l <= 4) throw std::invalid_argument("classify_blocks: requires l > 4");
    if (l >= 63) throw std::invalid_argument("classify_blocks: l too large");
    if ((std::uint64_t(1) << l) > table.k_max())
        throw std::out_of_range("classify_blocks: 2^l exceeds table bound");
    if (!(c_gmax > 0.0))
        throw std::invalid_argument("classify_blocks: c_gmax must be positive");

    BlockClassification out;
    out.l = l;
    out.threshold = 1.0 / (100.0 * c_gmax);
    if (phi.is_zero()) return out;

    const std::int64_t block = std::int64_t(1) << l;
    // Blocks whose doubled window (r 2^l, r 2^l + 2^{l+1}] can hold mass;
    // anything further out is light by default.
    out.r_lo = floor_div(phi.support_min() - 2 * block, block);
    while ((out.r_lo + 2) * block < phi.support_min()) ++out.r_lo;
    out.r_hi = floor_div(phi.support_max() - 1, block);

    const PhiPrefix pp(phi);
    for (std::int64_t r = out.r_lo; r <= out.r_hi; ++r) {
        const double w = pp.window(r * block + 1, r * block + 2 * block);
        if (w / static_cast<double>(block) > out.threshold)
            out.r_plus.push_back(r);
        else
            out.r_minus.push_back(r);
    }
    return out;
}

CertificateReport claim_certificate(const LatticeFunction& phi, const WeightTable& table,
                                    double c_gmax) {
    if (phi.is_zero())
        throw std::invalid_argument("claim_certificate: degenerate input, ||phi||_1 = 0");
    if (!(c_gmax > 0.0))
        throw std::invalid_argument("claim_certificate: c_gmax must be positive");

    CertificateReport cert;
    cert.lambda = 1.0;
    cert.l1_mass = phi.l1_norm();
    cert.c_gmax = c_gmax;

    const LevelSetScan plan = plan_dyadic_scan(phi, 1.0, table);
    cert.l_max = plan.l_max;

    const std::size_t window = static_cast<std::size_t>(plan.j_hi - plan.j_lo + 1);
    std::vector<std::uint32_t> masks(window, 0);
    for (std::size_t idx = 0; idx < window; ++idx) {
        const std::int64_t j = plan.j_lo + static_cast<std::int64_t>(idx);
        masks[idx] = dyadic_mask_at(phi, j, 1.0, table, plan.l_max);
        if (masks[idx] != 0) ++cert.direct_count;
    }

    const PhiPrefix pp(phi);

    // (a) Small scales: intervals [j+1, j+2^l] over the exceeding set,
    // thinned to overlap <= 2; each kept interval carries mass >= #I/16.
    const std::uint32_t small_bits = 0x1E;  // l = 1..4
    for (unsigned l = 1; l <= std::min(4u, plan.l_max); ++l) {
        IntervalFamily ivs;
        for (std::size_t idx = 0; idx < window; ++idx) {
            if (masks[idx] & (std::uint32_t(1) << l)) {
                const std::int64_t j = plan.j_lo + static_cast<std::int64_t>(idx);
                ivs.push_back({j + 1, j + (std::int64_t(1) << l)});
            }
        }
        for (const auto& iv : select_bounded_overlap(ivs))
            cert.small_bound += 16.0 * pp.window(iv.lo, iv.hi);
    }
    for (std::size_t idx = 0; idx < window; ++idx)
        if (masks[idx] & small_bits) ++cert.small_direct;

    // (b) Light blocks at l > 4: blockwise moment bound W * (1/100)^{nu-1}.
    // (c) Heavy blocks: doubled intervals collected for the covering count.
    IntervalFamily plus_family;
    std::vector<std::vector<char>> plus_flag(plan.l_max + 1);
    std::vector<std::int64_t> plus_rlo(plan.l_max + 1, 0);
    for (unsigned l = 5; l <= plan.l_max; ++l) {
        const BlockClassification cls = classify_blocks(phi, l, table, c_gmax);
        const std::int64_t block = std::int64_t(1) << l;
        const unsigned nu = floor_loglog(std::uint64_t(1) << l);
        plus_rlo[l] = cls.r_lo;
        if (cls.r_hi >= cls.r_lo)
            plus_flag[l].assign(static_cast<std::size_t>(cls.r_hi - cls.r_lo + 1), 0);
        for (std::int64_t r : cls.r_plus) {
            plus_family.push_back({r * block, (r + 2) * block});
            plus_flag[l][static_cast<std::size_t>(r - cls.r_lo)] = 1;
        }
        for (std::int64_t r : cls.r_minus) {
            const double w = pp.window(r * block + 1, r * block + 2 * block);
            if (w == 0.0) continue;
            double term = w;
            for (unsigned e = 1; e < nu; ++e) term *= 0.01;
            cert.rminus_bound += term;
            std::uint64_t cnt = 0;
            const std::int64_t b_lo = std::max(r * block + 1, plan.j_lo);
            const std::int64_t b_hi = std::min((r + 1) * block, plan.j_hi);
            for (std::int64_t j = b_lo; j <= b_hi; ++j)
                if (masks[static_cast<std::size_t>(j - plan.j_lo)] & (std::uint32_t(1) << l))
                    ++cnt;
            cert.rminus_direct += cnt;
            if (static_cast<double>(cnt) > term * (1.0 + 1e-9)) ++cert.rminus_violations;
        }
    }

    // Point count of the union of the doubled heavy intervals; the thinned
    // family has the same union.
    {
        IntervalFamily merged = select_bounded_overlap(plus_family);
        std::sort(merged.begin(), merged.end(),
                  [](const IntegerInterval& a, const IntegerInterval& b) { return a.lo < b.lo; });
        std::int64_t cur_lo = 0, cur_hi = -1;
        bool open = false;
        std::uint64_t points = 0;
        for (const auto& iv : merged) {
            if (!open) { cur_lo = iv.lo; cur_hi = iv.hi; open = true; continue; }
            if (iv.lo <= cur_hi + 1) { cur_hi = std::max(cur_hi, iv.hi); continue; }
            points += static_cast<std::uint64_t>(cur_hi - cur_lo + 1);
            cur_lo = iv.lo;
            cur_hi = iv.hi;
        }
        if (open) points += static_cast<std::uint64_t>(cur_hi - cur_lo + 1);
        cert.rplus_bound = static_cast<double>(points);
    }
    cert.rplus_paper_bound = 800.0 * c_gmax * cert.l1_mass;

    for (std::size_t idx = 0; idx < window; ++idx) {
        const std::uint32_t mask = masks[idx];
        if (mask == 0) continue;
        const std::int64_t j = plan.j_lo + static_cast<std::int64_t>(idx);
        bool in_plus = false;
        for (unsigned l = 5; l <= plan.l_max && !in_plus; ++l) {
            if (!(mask & (std::uint32_t(1) << l))) continue;
            const std::int64_t block = std::int64_t(1) << l;
            const std::int64_t r = floor_div(j - 1, block);
            const std::int64_t rel = r - plus_rlo[l];
            if (rel >= 0 && rel < static_cast<std::int64_t>(plus_flag[l].size()) &&
                plus_flag[l][static_cast<std::size_t>(rel)])
                in_plus = true;
        }
        if (in_plus) ++cert.rplus_direct;
    }

    cert.certificate_bound = cert.small_bound + cert.rminus_bound + cert.rplus_bound;
    cert.ok = static_cast<double>(cert.direct_count) <= cert.certificate_bound * (1.0 + 1e-12);
    return cert;
}

} // namespace omegaerg
