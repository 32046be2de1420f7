#ifndef OMEGAERG_CSV_HPP
#define OMEGAERG_CSV_HPP

#include <iosfwd>
#include <string>

#include "omegaerg/asymptotics.hpp"

namespace omegaerg::csvio {

/// 12 significant digits, shortest form ("%.12g"); deterministic.
std::string format_real(double v);

/// header label,kind,K,value and one row per checkpoint.
void write_ratio_series(const RatioSeries& series, std::ostream& out);

} // namespace omegaerg::csvio

#endif
