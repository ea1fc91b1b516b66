#pragma once
// Fast GUE Tracy-Widom CDF: monotone piecewise-cubic interpolation of the
// embedded determinant table (fgue_table.hpp).  Agrees with the direct
// Fredholm evaluation fgue() to interpolation accuracy (a few 1e-6 on the 1/16
// grid); clamps to 0/1 outside the tabulated range, where the true CDF
// differs from those limits by less than 1e-9.

#include <betalab/fgue_table.hpp>
#include <betalab/stats.hpp>

#include <algorithm>
#include <vector>

namespace betalab {

inline double fgue_cdf(double y) {
  static const pchip interp = [] {
    std::vector<double> xs(static_cast<std::size_t>(detail::fgue_table_count));
    std::vector<double> ys(static_cast<std::size_t>(detail::fgue_table_count));
    for (int k = 0; k < detail::fgue_table_count; ++k) {
      xs[static_cast<std::size_t>(k)] = detail::fgue_table_ymin + k * detail::fgue_table_step;
      ys[static_cast<std::size_t>(k)] = detail::fgue_table[k];
    }
    return pchip(std::move(xs), std::move(ys));
  }();
  if (y <= detail::fgue_table_ymin) return 0.0;
  if (y >= detail::fgue_table_ymax) return 1.0;
  return std::min(1.0, std::max(0.0, interp(y)));
}

}  // namespace betalab
