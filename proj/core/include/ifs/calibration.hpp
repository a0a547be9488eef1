#pragma once

#include <vector>

#include "ifs/system.hpp"

namespace ifs {

// Constants realizing the tail-class invariance: endpoint linearization
// slopes, a linearization radius epsilon in (0, 1/2), a contraction margin
// delta in (0, 1) and the tail constant M = epsilon^-alpha. The raw fields
// hold the geometric maxima before the strictness margins (0.999 on epsilon,
// 0.99 on delta) are applied.
struct CalibrationConstants {
  double alpha = 0.0;
  std::vector<double> lambda_lo;  // per-map slope at 0
  std::vector<double> lambda_hi;  // per-map slope at 1
  double epsilon_raw = 0.0;
  double epsilon = 0.0;
  double delta_raw = 0.0;
  double delta = 0.0;
  double M = 0.0;  // epsilon^-alpha, so M * epsilon^alpha == 1
};

// Per-horizon quantities: k = floor(n^(1/4)), eps_n = (1-delta)^(k/2) and
// gamma_n = (1-delta)^(alpha k / 2).
struct BoundRegime {
  unsigned n = 0;
  unsigned k = 0;
  double eps_n = 1.0;
  double gamma_n = 1.0;
};

// Takes lambda as the exact endpoint slopes and derives the largest feasible
// epsilon and delta, then applies the strictness margins. Throws
// ValidationError if the system is not admissible or alpha is outside (0,1);
// throws ValidationError naming the violated inequality when
// sum p_i lambda^-alpha >= 1 (no feasible delta).
CalibrationConstants calibrate(const IfsSystem& system, double alpha);

BoundRegime regime(const CalibrationConstants& consts, unsigned n);

// floor(n^(1/4)) computed by integer search, immune to pow() rounding.
unsigned fourth_root_floor(unsigned n);

}  // namespace ifs
