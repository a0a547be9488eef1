#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ifs/bounds.hpp"
#include "ifs/measure.hpp"
#include "ifs/rng.hpp"
#include "ifs/system.hpp"

namespace ifs {

using ScalarFn = std::function<double(double)>;

struct Estimate {
  double value = 0.0;
  double stderr_est = 0.0;  // 0 in exact mode
  std::string mode;
};

// Time average (1/n) sum_{k=1..n} phi(X_k) along one quenched trajectory.
double birkhoff_average(const IfsSystem& system, const ScalarFn& phi, double x,
                        std::size_t n, StreamSpec stream);

// W1 distance between P^n delta_x and P^n delta_y. Exact mode iterates the
// atom pushforward (N^n atoms); MC mode averages |x_n - y_n| over coupled
// pairs, which upper-bounds W1 by the synchronous coupling.
Estimate stability_gap(const IfsSystem& system, double x, double y, unsigned n,
                       const BoundOptions& opts = {});

// Expected coupled gap E|f^k(x) - f^k(y)| for k = 1..n_max plus the decay
// rate fitted on the tail half of the log-gap sequence (q_hat = exp(slope)).
struct SyncProfile {
  std::vector<double> gap;         // index k-1
  std::vector<double> gap_stderr;  // zeros in exact mode
  double q_hat = 0.0;
  bool degenerate = false;  // x == y or gaps identically zero
  std::string mode;
};

SyncProfile sync_gap_profile(const IfsSystem& system, double x, double y,
                             unsigned n_max, const BoundOptions& opts = {},
                             unsigned fit_window = 0);

// Counts streams in which the orbit of the lower start visits (0, xi) fewer
// times than the orbit of the upper start. Under shared words and increasing
// maps this must be zero; any violation is an implementation bug.
std::size_t monotone_occupation_check(const IfsSystem& system, double x,
                                      double y, double xi, std::size_t n,
                                      std::size_t streams, std::uint64_t seed,
                                      unsigned threads = 1);

// sup over the grid of |(1/n) sum_{k=1..n} U^k phi|. phi should vanish at the
// endpoints and be centered against the invariant measure.
Estimate cesaro_norm(const IfsSystem& system, const ScalarFn& phi, unsigned n,
                     const std::vector<double>& grid,
                     const BoundOptions& opts = {});

// max over the interior grid of |U^n f(x) - mustar_f| plus the L2(mu_hat)
// discrepancy for the operator-convergence corollary. `mustar` supplies both
// the reference value <mu*, f> and the L2 weighting sample.
struct DualConvergence {
  double sup_gap = 0.0;
  double l2_gap = 0.0;
  std::string mode;
};

DualConvergence dual_convergence_check(const IfsSystem& system,
                                       const ScalarFn& f,
                                       const std::vector<double>& x_grid,
                                       unsigned n,
                                       const EmpiricalMeasure& mustar,
                                       const BoundOptions& opts = {});

// U^n phi at one point: exact atom pushforward if N^n fits the budget, else
// an MC average of phi(X_n). Shared by the convergence checks above.
Estimate dual_value(const IfsSystem& system, const ScalarFn& phi, unsigned n,
                    double x, const BoundOptions& opts = {});

}  // namespace ifs
