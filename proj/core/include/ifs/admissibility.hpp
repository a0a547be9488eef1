#pragma once

#include "ifs/system.hpp"

namespace ifs {

struct AdmissibilityReport {
  bool crossing_ok = false;
  double worst_crossing_point = 0.0;  // grid point with the smallest margin
  double worst_crossing_margin = 0.0; // min over x of max(x - min f, max f - x)
  double lyap0 = 0.0;                 // sum p_i log f_i'(0), nats
  double lyap1 = 0.0;                 // sum p_i log f_i'(1), nats
  bool endpoint_slopes_ok = false;
  bool admissible = false;
};

// Checks the crossing condition (some map strictly below and some strictly
// above the diagonal at every interior point) and the endpoint Lyapunov
// exponents. The crossing test runs over `grid_points` equally spaced
// interior points plus every interior breakpoint of every map; for
// piecewise-linear maps min_i f_i - id and max_j f_j - id are piecewise
// linear, so breakpoints + any grid decide the condition exactly.
AdmissibilityReport check_admissible(const IfsSystem& system,
                                     std::size_t grid_points = 10001);

}  // namespace ifs
