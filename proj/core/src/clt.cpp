#include "ifs/clt.hpp"

#include <cmath>
#include <string>

#include "ifs/chain.hpp"
#include "ifs/errors.hpp"
#include "ifs/parallel.hpp"
#include "ifs/stats.hpp"

namespace ifs {

std::string StartSpec::describe() const {
  return stationary ? std::string("stationary") : "x0=" + std::to_string(x);
}

double path_phi_sum(const IfsSystem& system, const ScalarFn& phi, double x0,
                    std::size_t n, StreamSpec stream) {
  SplitMix64 rng(stream);
  double x = x0, acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    x = system.map(system.symbol_for(rng.next_unit())).eval(x);
    acc += phi(x);
  }
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw InternalError("chain state escaped [0,1]: " + std::to_string(x));
  return acc;
}

namespace {

// Derived seeds keep the stationary-start draws and the centering burn-in
// independent of the replica streams without extra configuration.
constexpr std::uint64_t kStartSalt = UINT64_C(0x9E3779B97F4A7C15);

std::vector<double> draw_starts(const IfsSystem& system, StartSpec start,
                                std::size_t R, std::uint64_t seed,
                                const CltOptions& opts) {
  if (!start.stationary) return std::vector<double>(R, start.x);
  return burn_in_points(system, opts.center_burn_n, R, seed ^ kStartSalt,
                        opts.threads);
}

}  // namespace

NormalizedSums normalized_sums(const IfsSystem& system, const ScalarFn& phi,
                               StartSpec start, std::size_t n, std::size_t R,
                               std::uint64_t seed, std::optional<double> center,
                               const CltOptions& opts) {
  if (n < 1) throw ValidationError("normalized_sums: n must be >= 1");
  if (R < 1) throw ValidationError("normalized_sums: R must be >= 1");
  NormalizedSums out;
  if (center.has_value()) {
    out.m_hat = *center;
  } else {
    std::vector<double> vals =
        burn_in_points(system, opts.center_burn_n, opts.center_burn_R,
                       opts.center_seed, opts.threads);
    for (double& v : vals) v = phi(v);
    const auto [m, se] = mean_with_stderr(vals);
    out.m_hat = m;
    out.m_stderr = se;
  }
  const double m = out.m_hat;
  const ScalarFn centered = [&phi, m](double x) { return phi(x) - m; };

  const std::vector<double> starts = draw_starts(system, start, R, seed, opts);
  const double root_n = std::sqrt(static_cast<double>(n));
  out.samples.resize(R);
  parallel_for(R, opts.threads, [&](std::size_t r) {
    out.samples[r] =
        path_phi_sum(system, centered, starts[r], n, StreamSpec{seed, r}) /
        root_n;
  });
  return out;
}

std::pair<double, double> estimate_sigma2(const std::vector<double>& samples) {
  if (samples.size() < 30)
    throw ValidationError("estimate_sigma2 needs R >= 30 samples");
  std::vector<double> squares;
  squares.reserve(samples.size());
  for (double s : samples) squares.push_back(s * s);
  return mean_with_stderr(squares);
}

CharFnTable char_fn(const IfsSystem& system, const ScalarFn& phi,
                    StartSpec start, unsigned n,
                    const std::vector<double>& t_grid, std::size_t R,
                    std::uint64_t seed, const CltOptions& opts) {
  if (t_grid.empty()) throw ValidationError("char_fn: empty t grid");
  if (n < 1) throw ValidationError("char_fn: n must be >= 1");
  CharFnTable tab;
  tab.t = t_grid;
  tab.n = n;
  tab.start = start.describe();
  const double root_n = std::sqrt(static_cast<double>(n));

  Mode mode = opts.mode;
  if (mode == Mode::kAuto) {
    bool fits = !start.stationary;
    if (fits) {
      try {
        enumeration_cost(system, n, opts.budget);
      } catch (const BudgetError&) {
        fits = false;
      }
    }
    mode = fits ? Mode::kExact : Mode::kMonteCarlo;
  }
  tab.mode = mode_name(mode);

  const std::size_t T = t_grid.size();
  tab.re.assign(T, 0.0);
  tab.im.assign(T, 0.0);
  tab.se_re.assign(T, 0.0);
  tab.se_im.assign(T, 0.0);

  if (mode == Mode::kExact) {
    if (start.stationary)
      throw ValidationError(
          "char_fn: exact mode needs a point start (the invariant measure has "
          "no finite support)");
    // Collect (weight, normalized path sum) once, then sweep the t grid.
    std::vector<std::pair<double, double>> leaves;
    enumerate_paths(system, n, start.x,
                    [&](double w, std::span<const double> states) {
                      double s = 0.0;
                      for (double st : states) s += phi(st);
                      leaves.emplace_back(w, s / root_n);
                    },
                    opts.budget);
    for (std::size_t j = 0; j < T; ++j) {
      const double t = std::abs(t_grid[j]);
      double re = 0.0, im = 0.0;
      for (const auto& [w, z] : leaves) {
        re += w * std::cos(t * z);
        im += w * std::sin(t * z);
      }
      tab.re[j] = re;
      tab.im[j] = t_grid[j] < 0.0 ? -im : im;
    }
    return tab;
  }

  const std::vector<double> starts = draw_starts(system, start, R, seed, opts);
  std::vector<double> zs(R);
  parallel_for(R, opts.threads, [&](std::size_t r) {
    zs[r] = path_phi_sum(system, phi, starts[r], n, StreamSpec{seed, r}) / root_n;
  });
  const double Rd = static_cast<double>(R);
  for (std::size_t j = 0; j < T; ++j) {
    const double t = std::abs(t_grid[j]);
    double sre = 0.0, sim = 0.0;
    for (double z : zs) {
      sre += std::cos(t * z);
      sim += std::sin(t * z);
    }
    const double mre = sre / Rd, mim = sim / Rd;
    double vre = 0.0, vim = 0.0;
    for (double z : zs) {
      const double dre = std::cos(t * z) - mre;
      const double dim = std::sin(t * z) - mim;
      vre += dre * dre;
      vim += dim * dim;
    }
    tab.re[j] = mre;
    tab.im[j] = t_grid[j] < 0.0 ? -mim : mim;
    if (R > 1) {
      tab.se_re[j] = std::sqrt(vre / (Rd - 1.0) / Rd);
      tab.se_im[j] = std::sqrt(vim / (Rd - 1.0) / Rd);
    }
  }
  return tab;
}

CharFnGap char_fn_gap(const CharFnTable& a, const CharFnTable& b) {
  if (a.t != b.t || a.n != b.n)
    throw ValidationError("char_fn_gap: tables must share t grid and n");
  CharFnGap g;
  for (std::size_t j = 0; j < a.t.size(); ++j) {
    const double dre = a.re[j] - b.re[j];
    const double dim = a.im[j] - b.im[j];
    const double gap = std::hypot(dre, dim);
    if (gap > g.sup) {
      g.sup = gap;
      g.t_at_sup = a.t[j];
      g.stderr_est =
          std::sqrt(a.se_re[j] * a.se_re[j] + a.se_im[j] * a.se_im[j] +
                    b.se_re[j] * b.se_re[j] + b.se_im[j] * b.se_im[j]);
    }
  }
  return g;
}

MwGrowth mw_growth(const IfsSystem& system, const ScalarFn& phi,
                   const std::vector<unsigned>& n_list,
                   const std::vector<double>& y_samples, std::size_t inner_R,
                   std::uint64_t seed, const CltOptions& opts) {
  if (n_list.empty()) throw ValidationError("mw_growth: empty n list");
  if (y_samples.empty()) throw ValidationError("mw_growth: empty y sample");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw ValidationError("mw_growth: n_list must be ascending");

  MwGrowth out;
  out.n_list = n_list;
  out.norms.reserve(n_list.size());

  for (unsigned n : n_list) {
    Mode mode = opts.mode;
    if (mode == Mode::kAuto) {
      try {
        enumeration_cost(system, n, opts.budget);
        mode = Mode::kExact;
      } catch (const BudgetError&) {
        mode = Mode::kMonteCarlo;
      }
    }
    out.mode = mode_name(mode);
    double sq_acc = 0.0;
    if (mode == Mode::kExact) {
      enumeration_cost(system, n, opts.budget);
      for (double y : y_samples) {
        EmpiricalMeasure m = EmpiricalMeasure::dirac(y);
        double s = 0.0;
        for (unsigned j = 0; j < n; ++j) {
          m = markov_step_atoms(system, m);
          s += m.integrate(phi);
        }
        sq_acc += s * s;
      }
    } else {
      std::vector<double> sq(y_samples.size());
      parallel_for(y_samples.size(), opts.threads, [&](std::size_t o) {
        std::vector<double> sums(inner_R);
        for (std::size_t i = 0; i < inner_R; ++i)
          sums[i] = path_phi_sum(
              system, phi, y_samples[o], n,
              StreamSpec{seed, (static_cast<std::uint64_t>(o) << 32) | i});
        const auto [m, se] = mean_with_stderr(sums);
        // E[m^2] = S^2 + Var(m); subtract the estimated variance so the
        // norm is not inflated by inner-MC noise.
        sq[o] = m * m - se * se;
      });
      for (double s : sq) sq_acc += s;
    }
    const double msq = sq_acc / static_cast<double>(y_samples.size());
    out.norms.push_back(std::sqrt(std::max(0.0, msq)));
  }

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (!(out.norms[i] > 0.0)) continue;
    lx.push_back(std::log(static_cast<double>(n_list[i])));
    ly.push_back(std::log(out.norms[i]));
  }
  out.exponent = lx.size() >= 2 ? linear_fit(lx, ly).first : 0.0;
  return out;
}

}  // namespace ifs
