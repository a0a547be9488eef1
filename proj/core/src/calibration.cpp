#include "ifs/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ifs/admissibility.hpp"
#include "ifs/errors.hpp"

namespace ifs {

namespace {

constexpr double kNegTol = 1e-14;

// First x in (0, cap] where the piecewise-linear g drops below zero, or cap if
// it never does. `breaks` must contain every breakpoint of g in (0, cap).
double first_negative(const std::function<double(double)>& g,
                      std::vector<double> breaks, double cap) {
  breaks.push_back(cap);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [cap](double b) { return b <= 0.0 || b > cap; }),
               breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double a = 0.0, ga = g(0.0);
  for (double b : breaks) {
    const double gb = g(b);
    if (gb < -kNegTol) {
      // Linear crossing inside [a, b].
      if (ga <= 0.0) return a;
      return a + ga * (b - a) / (ga - gb);
    }
    a = b;
    ga = gb;
  }
  return cap;
}

}  // namespace

unsigned fourth_root_floor(unsigned n) {
  unsigned k = 0;
  while (static_cast<std::uint64_t>(k + 1) * (k + 1) * (k + 1) * (k + 1) <=
         static_cast<std::uint64_t>(n))
    ++k;
  return k;
}

CalibrationConstants calibrate(const IfsSystem& system, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("calibrate: alpha must lie in (0,1)");
  const AdmissibilityReport adm = check_admissible(system);
  if (!adm.admissible)
    throw ValidationError("calibrate: system is not admissible");

  CalibrationConstants c;
  c.alpha = alpha;
  for (const auto& m : system.maps()) {
    const auto [s0, s1] = m.endpoint_slopes();
    c.lambda_lo.push_back(s0);
    c.lambda_hi.push_back(s1);
  }

  // Largest epsilon <= 1/2 keeping, for every map and x <= epsilon:
  //   f(x) >= lo*x,  1 - f(1-x) >= hi*x,
  //   f^-1(x) <= x/lo,  f^-1(1-x) >= 1 - x/hi.
  // Each left-minus-right side is piecewise linear with value 0 at x = 0.
  double eps = 0.5;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const PiecewiseLinearMap& f = system.map(i);
    const double lo = c.lambda_lo[i];
    const double hi = c.lambda_hi[i];
    std::vector<double> bx, by, rbx, rby;
    for (const auto& n : f.nodes()) {
      bx.push_back(n.x);
      by.push_back(n.y);
      rbx.push_back(1.0 - n.x);
      rby.push_back(1.0 - n.y);
    }
    eps = std::min(eps, first_negative(
                            [&](double x) { return f.eval(x) - lo * x; }, bx,
                            eps));
    eps = std::min(eps, first_negative(
                            [&](double x) {
                              return 1.0 - f.eval(1.0 - x) - hi * x;
                            },
                            rbx, eps));
    eps = std::min(eps, first_negative(
                            [&](double x) {
                              return x / lo - f.eval_inverse(x);
                            },
                            by, eps));
    eps = std::min(eps, first_negative(
                            [&](double x) {
                              return f.eval_inverse(1.0 - x) -
                                     (1.0 - x / hi);
                            },
                            rby, eps));
  }
  c.epsilon_raw = eps;
  c.epsilon = 0.999 * eps;

  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    s0 += system.probs()[i] * std::pow(c.lambda_lo[i], -alpha);
    s1 += system.probs()[i] * std::pow(c.lambda_hi[i], -alpha);
  }
  const double s = std::max(s0, s1);
  if (s >= 1.0) {
    const char* side = (s0 >= s1) ? "sum p_i * lambda_lo_i^-alpha"
                                  : "sum p_i * lambda_hi_i^-alpha";
    throw ValidationError(
        "calibrate: infeasible at alpha = " + std::to_string(alpha) + ": " +
        side + " = " + std::to_string(s) +
        " >= 1, so no delta in (0,1) satisfies sum <= (1-delta)^alpha");
  }
  c.delta_raw = 1.0 - std::pow(s, 1.0 / alpha);
  c.delta = 0.99 * c.delta_raw;
  c.M = std::pow(c.epsilon, -alpha);
  return c;
}

BoundRegime regime(const CalibrationConstants& consts, unsigned n) {
  if (n < 1) throw ValidationError("regime: n must be >= 1");
  BoundRegime r;
  r.n = n;
  r.k = fourth_root_floor(n);
  r.eps_n = std::pow(1.0 - consts.delta, r.k / 2.0);
  r.gamma_n = std::pow(1.0 - consts.delta, consts.alpha * r.k / 2.0);
  return r;
}

}  // namespace ifs
