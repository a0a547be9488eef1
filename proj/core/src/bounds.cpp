#include "ifs/bounds.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "ifs/chain.hpp"
#include "ifs/errors.hpp"
#include "ifs/parallel.hpp"

namespace ifs {

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::kExact;
  if (text == "mc") return Mode::kMonteCarlo;
  if (text == "auto") return Mode::kAuto;
  throw ValidationError("unknown mode: " + text + " (expected exact|mc|auto)");
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::kExact: return "exact";
    case Mode::kMonteCarlo: return "mc";
    default: return "auto";
  }
}

std::string BoundCheck::to_json() const {
  nlohmann::json j;
  j["schema"] = "ifs-ergodic/1";
  j["check"] = name;
  j["n"] = n;
  j["k"] = k;
  j["mode"] = mode;
  j["estimate"] = estimate;
  j["stderr"] = stderr_est;
  j["bound"] = bound;
  j["lower_bound"] = lower_bound;
  j["satisfied"] = satisfied;
  j["vacuous"] = vacuous;
  return j.dump();
}

namespace {

bool fits_budget(const IfsSystem& system, unsigned k, std::uint64_t budget) {
  try {
    enumeration_cost(system, k, budget);
    return true;
  } catch (const BudgetError&) {
    return false;
  }
}

Mode resolve(const IfsSystem& system, unsigned k, const BoundOptions& opts) {
  if (opts.mode != Mode::kAuto) return opts.mode;
  return fits_budget(system, k, opts.budget) ? Mode::kExact : Mode::kMonteCarlo;
}

// P(all of the first k images of x stay strictly inside the boundary strip).
// DFS with pruning: a branch that leaves the strip contributes nothing.
double stay_prob_exact(const IfsSystem& system, double x, double eps, Side side,
                       unsigned k) {
  if (k == 0) return 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const double nx = system.map(i).eval(x);
    const bool inside = (side == Side::kLower) ? (nx < eps) : (nx > 1.0 - eps);
    if (!inside) continue;
    acc += system.probs()[i] * stay_prob_exact(system, nx, eps, side, k - 1);
  }
  return acc;
}

struct McEstimate {
  double p = 0.0;
  double se = 0.0;
};

McEstimate mc_probability(std::size_t R, unsigned threads,
                          const std::function<bool(std::size_t)>& event) {
  std::vector<char> hits(R);
  parallel_for(R, threads,
               [&](std::size_t r) { hits[r] = event(r) ? 1 : 0; });
  std::size_t count = 0;
  for (char h : hits) count += h;
  McEstimate e;
  e.p = static_cast<double>(count) / static_cast<double>(R);
  e.se = std::sqrt(e.p * (1.0 - e.p) / static_cast<double>(R));
  return e;
}

}  // namespace

BoundCheck verify_escape_bound(const IfsSystem& system,
                               const CalibrationConstants& consts, unsigned n,
                               Side side, const BoundOptions& opts) {
  const BoundRegime r = regime(consts, n);
  const double eps = consts.epsilon;

  BoundCheck c;
  c.name = (side == Side::kLower) ? "escape_lower" : "escape_upper";
  c.n = n;
  c.k = r.k;
  c.bound = r.gamma_n;
  c.vacuous = c.bound >= 1.0;

  // Worst admitted start and the strip edge itself.
  double starts[2] = {eps * r.eps_n, eps};
  if (side == Side::kUpper) {
    starts[0] = 1.0 - starts[0];
    starts[1] = 1.0 - starts[1];
  }

  const Mode mode = resolve(system, r.k, opts);
  c.mode = mode_name(mode);
  if (mode == Mode::kExact) {
    for (double x : starts)
      c.estimate = std::max(c.estimate, stay_prob_exact(system, x, eps, side, r.k));
    c.satisfied = c.estimate <= c.bound;
  } else {
    double worst_p = -1.0, worst_se = 0.0;
    for (std::size_t s = 0; s < 2; ++s) {
      const double x0 = starts[s];
      const auto est = mc_probability(
          opts.mc_replicas, opts.threads, [&](std::size_t rep) {
            Trajectory t = run_trajectory(
                system, x0, r.k,
                StreamSpec{opts.seed, rep + s * opts.mc_replicas});
            for (double st : t.states) {
              const bool inside =
                  (side == Side::kLower) ? (st < eps) : (st > 1.0 - eps);
              if (!inside) return false;
            }
            return true;
          });
      if (est.p > worst_p) {
        worst_p = est.p;
        worst_se = est.se;
      }
    }
    c.estimate = worst_p;
    c.stderr_est = worst_se;
    c.satisfied = c.estimate <= c.bound + 3.0 * c.stderr_est;
  }
  return c;
}

BoundCheck verify_boundary_mass(const IfsSystem& system,
                                const CalibrationConstants& consts, unsigned n,
                                unsigned k, double x, const BoundOptions& opts) {
  const BoundRegime r = regime(consts, n);
  if (k < r.k)
    throw ValidationError("verify_boundary_mass: k must be >= floor(n^(1/4))");
  if (!(x >= r.eps_n))
    throw ValidationError("verify_boundary_mass: x must be >= eps_n");

  BoundCheck c;
  c.name = "boundary_mass";
  c.n = n;
  c.k = k;
  c.bound = 2.0 * consts.M * r.gamma_n;
  c.vacuous = c.bound >= 1.0;

  const Mode mode = resolve(system, k, opts);
  c.mode = mode_name(mode);
  if (mode == Mode::kExact) {
    double acc = 0.0;
    enumerate_paths(system, k, x,
                    [&](double w, std::span<const double> states) {
                      if (states.back() < r.eps_n) acc += w;
                    },
                    opts.budget);
    c.estimate = acc;
    c.satisfied = c.estimate <= c.bound;
  } else {
    const auto est =
        mc_probability(opts.mc_replicas, opts.threads, [&](std::size_t rep) {
          return run_trajectory(system, x, k, StreamSpec{opts.seed, rep})
                     .terminal() < r.eps_n;
        });
    c.estimate = est.p;
    c.stderr_est = est.se;
    c.satisfied = c.estimate <= c.bound + 3.0 * c.stderr_est;
  }
  return c;
}

namespace {

// P(both endpoint images land in [a, 1-a]) over words of length k; increasing
// maps carry [u, v] between its endpoint images, so endpoints decide it.
double both_in_J_exact(const IfsSystem& system, double u, double v, double a,
                       unsigned k) {
  if (k == 0) return (u >= a && v <= 1.0 - a) ? 1.0 : 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i)
    acc += system.probs()[i] * both_in_J_exact(system, system.map(i).eval(u),
                                               system.map(i).eval(v), a, k - 1);
  return acc;
}

}  // namespace

BoundCheck verify_return_probability(const IfsSystem& system,
                                     const CalibrationConstants& consts,
                                     double a, unsigned n,
                                     const BoundOptions& opts) {
  if (!(a > 0.0 && a < 0.5))
    throw ValidationError("verify_return_probability: a must be in (0, 1/2)");
  if (!(consts.M < std::pow(a, -consts.alpha) / 6.0))
    throw ValidationError(
        "verify_return_probability: requires M < a^-alpha / 6 (M = " +
        std::to_string(consts.M) + ")");
  const BoundRegime r = regime(consts, n);

  BoundCheck c;
  c.name = "return_probability";
  c.n = n;
  c.k = r.k;
  c.bound = 0.2;
  c.lower_bound = true;
  if (r.eps_n >= 0.5) {
    c.vacuous = true;
    c.mode = mode_name(resolve(system, r.k, opts));
    return c;
  }

  const double u0 = r.eps_n, v0 = 1.0 - r.eps_n;
  const Mode mode = resolve(system, r.k, opts);
  c.mode = mode_name(mode);
  if (mode == Mode::kExact) {
    enumeration_cost(system, r.k, opts.budget);
    c.estimate = both_in_J_exact(system, u0, v0, a, r.k);
    c.satisfied = c.estimate >= c.bound;
  } else {
    const auto est =
        mc_probability(opts.mc_replicas, opts.threads, [&](std::size_t rep) {
          auto [tu, tv] = run_coupled_pair(system, u0, v0, r.k,
                                           StreamSpec{opts.seed, rep});
          return tu.terminal() >= a && tv.terminal() <= 1.0 - a;
        });
    c.estimate = est.p;
    c.stderr_est = est.se;
    c.satisfied = c.estimate >= c.bound - 3.0 * c.stderr_est;
  }
  return c;
}

bool class_invariance_test(const IfsSystem& system,
                           const CalibrationConstants& consts,
                           const EmpiricalMeasure& mu, unsigned steps) {
  EmpiricalMeasure m = mu;
  {
    const auto r = class_membership(m, consts.M, consts.alpha);
    if (!r.member_minus || !r.member_plus) return false;
  }
  for (unsigned s = 0; s < steps; ++s) {
    m = markov_step_atoms(system, m);
    const auto r = class_membership(m, consts.M, consts.alpha);
    if (!r.member_minus || !r.member_plus) return false;
  }
  return true;
}

}  // namespace ifs
