#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "cornerlab/set_file.hpp"

namespace cornerlab {

// Finite-size target sqrt(d) * (3/4)^d * n^(2 - 2/d) against which achieved
// sizes are reported.
inline double size_bound(int n, int d) {
  return std::sqrt(static_cast<double>(d)) * std::pow(0.75, d) *
         std::pow(static_cast<double>(n), 2.0 - 2.0 / static_cast<double>(d));
}

inline constexpr const char* kSweepHeader = "n,d,r,delta,size,density,bound,ratio,seed,verified";

struct SweepRow {
  int n = 0;
  int d = 0;
  double r = 0.0;
  double delta = 0.0;
  std::uint64_t size = 0;
  double density = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  std::uint64_t seed = 0;
  bool verified = false;
};

inline std::string to_csv_row(const SweepRow& row) {
  std::ostringstream out;
  out << row.n << ',' << row.d << ',' << fmt17(row.r) << ',' << fmt17(row.delta) << ','
      << row.size << ',' << fmt17(row.density) << ',' << fmt17(row.bound) << ','
      << fmt17(row.ratio) << ',' << row.seed << ',' << (row.verified ? "true" : "false");
  return out.str();
}

}  // namespace cornerlab
