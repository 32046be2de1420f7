#include "omegaerg/csv.hpp"

#include <cstdio>
#include <ostream>

namespace omegaerg::csvio {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_ratio_series(const RatioSeries& series, std::ostream& out) {
    out << "label,kind,K,value\n";
    for (std::size_t i = 0; i < series.checkpoints.size(); ++i)
        out << series.label << ',' << to_string(series.kind) << ','
            << series.checkpoints[i] << ',' << format_real(series.ratios[i]) << '\n';
}

} // namespace omegaerg::csvio
