#ifndef OMEGAERG_DD_HPP
#define OMEGAERG_DD_HPP

#include <cmath>
#include <cstdint>

namespace omegaerg::dd {

/// Unevaluated double-double sum hi + lo with |lo| <= ulp(hi)/2.
/// Carries ~106 significand bits; enough to reduce n*alpha mod 1 with
/// per-step error far below 2^-40 for any n up to 2^53.
struct Real2 {
    double hi = 0.0;
    double lo = 0.0;
};

inline Real2 quick_two_sum(double a, double b) {
    // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline Real2 two_sum(double a, double b) {
    const double s = a + b;
    const double v = s - a;
    return {s, (a - (s - v)) + (b - v)};
}

inline Real2 two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Real2 add(Real2 a, Real2 b) {
    Real2 s = two_sum(a.hi, b.hi);
    const Real2 t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline Real2 mul(Real2 a, double b) {
    Real2 p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

/// (sqrt(5) - 1) / 2 to roughly 2^-105: one double-double Newton step on
/// top of the hardware square root.
inline Real2 golden_ratio_alpha() {
    const double y = std::sqrt(5.0);
    const Real2 y2 = two_prod(y, y);
    // y2.hi is within a few ulps of 5, so the subtraction is exact.
    const double resid = (y2.hi - 5.0) + y2.lo;
    const double corr = resid / (2.0 * y);
    const Real2 sqrt5 = quick_two_sum(y, -corr);
    // sqrt5.hi - 1 is exact (both operands are near 2.236).
    const Real2 shifted = quick_two_sum(sqrt5.hi - 1.0, sqrt5.lo);
    return {shifted.hi * 0.5, shifted.lo * 0.5};
}

/// frac(x0 + n * alpha) in [0, 1). n must be below 2^53 so it converts to
/// double exactly.
inline double rotation_point(Real2 alpha, Real2 x0, std::uint64_t n) {
    const Real2 prod = mul(alpha, static_cast<double>(n));
    Real2 v = add(prod, x0);
    const double fl = std::floor(v.hi);
    // v.hi - floor(v.hi) is exact; renormalize against the low word.
    Real2 r = two_sum(v.hi - fl, v.lo);
    if (r.hi < 0.0) r = two_sum(r.hi, 1.0);
    double out = r.hi + r.lo;
    if (out >= 1.0) out -= 1.0;
    if (out < 0.0) out += 1.0;
    return out;
}

} // namespace omegaerg::dd

#endif
