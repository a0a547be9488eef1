#include "ifs/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ifs/chain.hpp"
#include "ifs/errors.hpp"
#include "ifs/parallel.hpp"
#include "ifs/stats.hpp"
#include "ifs/words.hpp"

namespace ifs {

namespace {

bool fits_budget(const IfsSystem& system, unsigned n, std::uint64_t budget) {
  try {
    enumeration_cost(system, n, budget);
    return true;
  } catch (const BudgetError&) {
    return false;
  }
}

Mode resolve(const IfsSystem& system, unsigned n, const BoundOptions& opts) {
  if (opts.mode != Mode::kAuto) return opts.mode;
  return fits_budget(system, n, opts.budget) ? Mode::kExact : Mode::kMonteCarlo;
}

EmpiricalMeasure push_n(const IfsSystem& system, double x, unsigned n) {
  EmpiricalMeasure m = EmpiricalMeasure::dirac(x);
  for (unsigned s = 0; s < n; ++s) m = markov_step_atoms(system, m);
  return m;
}

}  // namespace

double birkhoff_average(const IfsSystem& system, const ScalarFn& phi, double x,
                        std::size_t n, StreamSpec stream) {
  if (n < 1) throw ValidationError("birkhoff_average: n must be >= 1");
  SplitMix64 rng(stream);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    x = system.map(system.symbol_for(rng.next_unit())).eval(x);
    acc += phi(x);
  }
  return acc / static_cast<double>(n);
}

Estimate stability_gap(const IfsSystem& system, double x, double y, unsigned n,
                       const BoundOptions& opts) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
    throw ValidationError("stability_gap: start points must be interior");
  Estimate e;
  const Mode mode = resolve(system, n, opts);
  e.mode = mode_name(mode);
  if (mode == Mode::kExact) {
    enumeration_cost(system, n, opts.budget);
    e.value = wasserstein1(push_n(system, x, n), push_n(system, y, n));
  } else {
    std::vector<double> gaps(opts.mc_replicas);
    parallel_for(opts.mc_replicas, opts.threads, [&](std::size_t r) {
      auto [tx, ty] =
          run_coupled_pair(system, x, y, n, StreamSpec{opts.seed, r});
      gaps[r] = std::abs(tx.terminal() - ty.terminal());
    });
    const auto [mean, se] = mean_with_stderr(gaps);
    e.value = mean;
    e.stderr_est = se;
  }
  return e;
}

namespace {

void gap_rec(const IfsSystem& system, double u, double v, double w,
             unsigned depth, unsigned n_max, std::vector<double>& acc) {
  if (depth == n_max) return;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const double nu = system.map(i).eval(u);
    const double nv = system.map(i).eval(v);
    const double nw = w * system.probs()[i];
    acc[depth] += nw * std::abs(nu - nv);
    gap_rec(system, nu, nv, nw, depth + 1, n_max, acc);
  }
}

}  // namespace

SyncProfile sync_gap_profile(const IfsSystem& system, double x, double y,
                             unsigned n_max, const BoundOptions& opts,
                             unsigned fit_window) {
  if (n_max < 1) throw ValidationError("sync_gap_profile: n_max must be >= 1");
  SyncProfile p;
  if (x == y) {
    p.degenerate = true;
    p.gap.assign(n_max, 0.0);
    p.gap_stderr.assign(n_max, 0.0);
    p.mode = mode_name(resolve(system, n_max, opts));
    return p;
  }
  const Mode mode = resolve(system, n_max, opts);
  p.mode = mode_name(mode);
  p.gap.assign(n_max, 0.0);
  p.gap_stderr.assign(n_max, 0.0);
  if (mode == Mode::kExact) {
    enumeration_cost(system, n_max, opts.budget);
    gap_rec(system, x, y, 1.0, 0, n_max, p.gap);
  } else {
    // Per-replica rows, then a sequential reduction in replica order.
    std::vector<double> rows(opts.mc_replicas * n_max);
    parallel_for(opts.mc_replicas, opts.threads, [&](std::size_t r) {
      auto [tx, ty] =
          run_coupled_pair(system, x, y, n_max, StreamSpec{opts.seed, r});
      for (unsigned k = 0; k < n_max; ++k)
        rows[r * n_max + k] = std::abs(tx.states[k] - ty.states[k]);
    });
    const double R = static_cast<double>(opts.mc_replicas);
    for (unsigned k = 0; k < n_max; ++k) {
      double s = 0.0;
      for (std::size_t r = 0; r < opts.mc_replicas; ++r) s += rows[r * n_max + k];
      const double mean = s / R;
      double ss = 0.0;
      for (std::size_t r = 0; r < opts.mc_replicas; ++r) {
        const double d = rows[r * n_max + k] - mean;
        ss += d * d;
      }
      p.gap[k] = mean;
      p.gap_stderr[k] = opts.mc_replicas > 1 ? std::sqrt(ss / (R - 1.0) / R) : 0.0;
    }
  }

  const unsigned window = fit_window == 0 ? std::max(2u, n_max / 2) : fit_window;
  std::vector<double> ks, logs;
  for (unsigned k = n_max - std::min(window, n_max); k < n_max; ++k) {
    if (!(p.gap[k] > 0.0)) {
      p.degenerate = true;
      return p;
    }
    ks.push_back(static_cast<double>(k + 1));
    logs.push_back(std::log(p.gap[k]));
  }
  if (ks.size() < 2) {
    p.degenerate = true;
    return p;
  }
  p.q_hat = std::exp(linear_fit(ks, logs).first);
  return p;
}

std::size_t monotone_occupation_check(const IfsSystem& system, double x,
                                      double y, double xi, std::size_t n,
                                      std::size_t streams, std::uint64_t seed,
                                      unsigned threads) {
  if (!(x < y)) throw ValidationError("monotone_occupation_check: needs x < y");
  std::vector<char> violated(streams);
  parallel_for(streams, threads, [&](std::size_t s) {
    auto [tx, ty] = run_coupled_pair(system, x, y, n, StreamSpec{seed, s});
    std::size_t cx = 0, cy = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (tx.states[k] > 0.0 && tx.states[k] < xi) ++cx;
      if (ty.states[k] > 0.0 && ty.states[k] < xi) ++cy;
    }
    violated[s] = cx < cy ? 1 : 0;
  });
  std::size_t total = 0;
  for (char v : violated) total += v;
  return total;
}

Estimate dual_value(const IfsSystem& system, const ScalarFn& phi, unsigned n,
                    double x, const BoundOptions& opts) {
  Estimate e;
  const Mode mode = resolve(system, n, opts);
  e.mode = mode_name(mode);
  if (mode == Mode::kExact) {
    enumeration_cost(system, n, opts.budget);
    e.value = push_n(system, x, n).integrate(phi);
  } else {
    std::vector<double> vals(opts.mc_replicas);
    parallel_for(opts.mc_replicas, opts.threads, [&](std::size_t r) {
      vals[r] =
          phi(run_trajectory(system, x, n, StreamSpec{opts.seed, r}).terminal());
    });
    const auto [mean, se] = mean_with_stderr(vals);
    e.value = mean;
    e.stderr_est = se;
  }
  return e;
}

Estimate cesaro_norm(const IfsSystem& system, const ScalarFn& phi, unsigned n,
                     const std::vector<double>& grid,
                     const BoundOptions& opts) {
  if (n < 1) throw ValidationError("cesaro_norm: n must be >= 1");
  if (grid.empty()) throw ValidationError("cesaro_norm: empty grid");
  Estimate best;
  const Mode mode = resolve(system, n, opts);
  best.mode = mode_name(mode);
  for (double x : grid) {
    double value = 0.0, se = 0.0;
    if (mode == Mode::kExact) {
      enumeration_cost(system, n, opts.budget);
      EmpiricalMeasure m = EmpiricalMeasure::dirac(x);
      double acc = 0.0;
      for (unsigned k = 1; k <= n; ++k) {
        m = markov_step_atoms(system, m);
        acc += m.integrate(phi);
      }
      value = acc / static_cast<double>(n);
    } else {
      std::vector<double> vals(opts.mc_replicas);
      parallel_for(opts.mc_replicas, opts.threads, [&](std::size_t r) {
        // Per-trajectory Cesaro sum; its replica mean estimates the target.
        SplitMix64 rng(StreamSpec{opts.seed, r});
        double xx = x, acc = 0.0;
        for (unsigned k = 0; k < n; ++k) {
          xx = system.map(system.symbol_for(rng.next_unit())).eval(xx);
          acc += phi(xx);
        }
        vals[r] = acc / static_cast<double>(n);
      });
      const auto [mean, serr] = mean_with_stderr(vals);
      value = mean;
      se = serr;
    }
    if (std::abs(value) > std::abs(best.value)) {
      best.value = value;
      best.stderr_est = se;
    }
  }
  best.value = std::abs(best.value);
  return best;
}

DualConvergence dual_convergence_check(const IfsSystem& system,
                                       const ScalarFn& f,
                                       const std::vector<double>& x_grid,
                                       unsigned n,
                                       const EmpiricalMeasure& mustar,
                                       const BoundOptions& opts) {
  if (x_grid.empty())
    throw ValidationError("dual_convergence_check: empty grid");
  for (double x : x_grid)
    if (!(x > 0.0 && x < 1.0))
      throw ValidationError(
          "dual_convergence_check: grid must be interior (0,1); endpoints are "
          "absorbing");
  if (mustar.empty())
    throw ValidationError("dual_convergence_check: empty reference measure");

  const double mref = mustar.integrate(f);
  DualConvergence out;
  for (double x : x_grid) {
    const Estimate e = dual_value(system, f, n, x, opts);
    out.mode = e.mode;
    out.sup_gap = std::max(out.sup_gap, std::abs(e.value - mref));
  }

  // L2(mu_hat) discrepancy over equally spaced quantiles of the reference
  // sample (32 points keeps the exact mode affordable).
  const std::size_t q = 32;
  double acc = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    const double level = (static_cast<double>(i) + 0.5) / static_cast<double>(q);
    double cum = 0.0, point = mustar.atoms().back().point;
    for (const auto& a : mustar.atoms()) {
      cum += a.weight;
      if (cum >= level) {
        point = a.point;
        break;
      }
    }
    point = std::clamp(point, 1e-12, 1.0 - 1e-12);
    const Estimate e = dual_value(system, f, n, point, opts);
    acc += (e.value - mref) * (e.value - mref);
  }
  out.l2_gap = std::sqrt(acc / static_cast<double>(q));
  return out;
}

}  // namespace ifs
