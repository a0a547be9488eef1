#pragma once

#include <cstdint>
#include <string>

#include "ifs/calibration.hpp"
#include "ifs/measure.hpp"
#include "ifs/system.hpp"
#include "ifs/words.hpp"

namespace ifs {

enum class Mode { kExact, kMonteCarlo, kAuto };

Mode parse_mode(const std::string& text);
std::string mode_name(Mode mode);

// Result of comparing an estimated probability against a theoretical bound.
// `vacuous` is set when the bound is >= 1 or the admitted start region is
// empty, so satisfaction carries no information. Monte Carlo comparisons get
// a 3-standard-error allowance; exact comparisons get none.
struct BoundCheck {
  std::string name;  // escape_lower | escape_upper | boundary_mass | return_probability
  unsigned n = 0;
  unsigned k = 0;
  std::string mode;  // "exact" | "mc"
  double estimate = 0.0;
  double stderr_est = 0.0;  // 0 in exact mode
  double bound = 0.0;
  bool lower_bound = false;  // true when the claim is estimate >= bound
  bool satisfied = false;
  bool vacuous = false;

  std::string to_json() const;
};

struct BoundOptions {
  Mode mode = Mode::kAuto;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::size_t mc_replicas = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

enum class Side { kLower, kUpper };

// Probability of staying below epsilon (resp. above 1-epsilon) for each of
// the first k = floor(n^(1/4)) steps, started from the worst admitted point
// eps*(1-delta)^(k/2) and from eps itself; compared against (1-delta)^(alpha k/2).
BoundCheck verify_escape_bound(const IfsSystem& system,
                               const CalibrationConstants& consts, unsigned n,
                               Side side, const BoundOptions& opts = {});

// Probability that the k-step image of x falls below eps_n, for x >= eps_n
// and k >= floor(n^(1/4)); compared against 2*M*gamma_n.
BoundCheck verify_boundary_mass(const IfsSystem& system,
                                const CalibrationConstants& consts, unsigned n,
                                unsigned k, double x,
                                const BoundOptions& opts = {});

// Probability that the floor(n^(1/4))-step image of [eps_n, 1-eps_n] lands
// inside J = [a, 1-a]; the claim is probability >= 1/5. Requires
// M < a^-alpha / 6.
BoundCheck verify_return_probability(const IfsSystem& system,
                                     const CalibrationConstants& consts,
                                     double a, unsigned n,
                                     const BoundOptions& opts = {});

// Applies markov_step_atoms `steps` times and re-checks P_{M,alpha}
// membership exactly after every step; true iff membership never fails.
bool class_invariance_test(const IfsSystem& system,
                           const CalibrationConstants& consts,
                           const EmpiricalMeasure& mu, unsigned steps);

}  // namespace ifs
