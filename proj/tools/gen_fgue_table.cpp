// Regenerates include/betalab/fgue_table.hpp: GUE Tracy-Widom CDF values on
// the uniform grid y = -10(1/16)6 computed by Fredholm determinant.
//
// Usage: gen_fgue_table <output-header-path>
//
// The raw determinant values are sanitized into a valid CDF table: clamped
// to [0,1] and made nondecreasing (this only touches values at the noise
// floor far in the left tail, where the true CDF is ~1e-19).

#include <betalab/airy.hpp>

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-header-path>\n", argv[0]);
    return 2;
  }
  const double ymin = -10.0, ymax = 6.0, step = 0.0625;
  const int count = static_cast<int>((ymax - ymin) / step + 0.5) + 1;
  std::vector<double> val(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double y = ymin + k * step;
    val[static_cast<std::size_t>(k)] = betalab::fgue(y);
    if (k % 16 == 0) {
      std::fprintf(stderr, "y = %6.2f  F = %.12f\n", y, val[static_cast<std::size_t>(k)]);
    }
  }
  for (int k = 0; k < count; ++k) {
    auto& v = val[static_cast<std::size_t>(k)];
    v = std::min(1.0, std::max(0.0, v));
    if (k > 0) v = std::max(v, val[static_cast<std::size_t>(k - 1)]);
  }
  std::FILE* out = std::fopen(argv[1], "w");
  if (!out) {
    std::fprintf(stderr, "cannot open %s\n", argv[1]);
    return 4;
  }
  std::fprintf(out,
               "#pragma once\n"
               "// GUE Tracy-Widom CDF values F_GUE(y) on the uniform grid\n"
               "// y = -10 + k/16, k = 0..%d, computed by the Fredholm determinant in\n"
               "// airy.hpp (successive-doubling tolerance 1e-8) and sanitized into a\n"
               "// valid CDF (clamped to [0,1], nondecreasing).  Generated by\n"
               "// tools/gen_fgue_table.cpp; do not edit by hand.\n"
               "\n"
               "namespace betalab::detail {\n"
               "\n"
               "inline constexpr double fgue_table_ymin = %.1f;\n"
               "inline constexpr double fgue_table_ymax = %.1f;\n"
               "inline constexpr double fgue_table_step = %.6f;\n"
               "inline constexpr int fgue_table_count = %d;\n"
               "\n"
               "inline constexpr double fgue_table[%d] = {\n",
               count - 1, ymin, ymax, step, count, count);
  for (int k = 0; k < count; ++k) {
    std::fprintf(out, "    %.17g,\n", val[static_cast<std::size_t>(k)]);
  }
  std::fprintf(out, "};\n\n}  // namespace betalab::detail\n");
  std::fclose(out);
  return 0;
}
