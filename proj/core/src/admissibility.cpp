#include "ifs/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ifs {

AdmissibilityReport check_admissible(const IfsSystem& system,
                                     std::size_t grid_points) {
  AdmissibilityReport r;

  std::vector<double> xs;
  xs.reserve(grid_points + 8);
  for (std::size_t g = 1; g + 1 <= grid_points; ++g)
    xs.push_back(static_cast<double>(g) / static_cast<double>(grid_points + 1));
  for (const auto& m : system.maps())
    for (double b : m.interior_breakpoints()) xs.push_back(b);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  r.crossing_ok = true;
  r.worst_crossing_margin = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    if (!(x > 0.0 && x < 1.0)) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& m : system.maps()) {
      const double v = m.eval(x);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    // Need f_i(x) < x < f_j(x) strictly; margin is the weaker of the two gaps.
    const double margin = std::min(x - lo, hi - x);
    if (margin < r.worst_crossing_margin) {
      r.worst_crossing_margin = margin;
      r.worst_crossing_point = x;
    }
    if (!(lo < x && x < hi)) r.crossing_ok = false;
  }

  r.endpoint_slopes_ok = true;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto [s0, s1] = system.map(i).endpoint_slopes();
    if (!(s0 > 0.0 && s1 > 0.0)) r.endpoint_slopes_ok = false;
    r.lyap0 += system.probs()[i] * std::log(s0);
    r.lyap1 += system.probs()[i] * std::log(s1);
  }

  r.admissible = r.crossing_ok && r.endpoint_slopes_ok && r.lyap0 > 0.0 &&
                 r.lyap1 > 0.0;
  return r;
}

}  // namespace ifs
