#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifs/bounds.hpp"
#include "ifs/ergodic.hpp"
#include "ifs/system.hpp"

namespace ifs {

// Chain start: a fixed point or a draw from the burn-in estimate of the
// invariant measure (one independent draw per replica).
struct StartSpec {
  bool stationary = false;
  double x = 0.5;

  static StartSpec at(double x0) { return {false, x0}; }
  static StartSpec invariant() { return {true, 0.5}; }
  std::string describe() const;
};

struct CltOptions {
  Mode mode = Mode::kAuto;
  std::uint64_t budget = kDefaultEnumerationBudget;
  unsigned threads = 1;
  // Centering burn-in (phi is replaced by phi - m_hat when no exact center
  // is supplied) and the stationary-start sampler share these settings.
  std::size_t center_burn_n = 1000;
  std::size_t center_burn_R = 100000;
  std::uint64_t center_seed = UINT64_C(0xC3A5C85C97CB3127);
};

// S_n/sqrt(n) samples with the centering actually used and its error bar.
struct NormalizedSums {
  std::vector<double> samples;
  double m_hat = 0.0;        // subtracted mean of phi under mu_hat
  double m_stderr = 0.0;     // 0 when an exact center was supplied
};

// Per replica r: (phi_c(X_1) + ... + phi_c(X_n)) / sqrt(n) with
// phi_c = phi - center. When `center` is not supplied it is estimated by a
// dedicated burn-in run with a fixed centering seed.
NormalizedSums normalized_sums(const IfsSystem& system, const ScalarFn& phi,
                               StartSpec start, std::size_t n, std::size_t R,
                               std::uint64_t seed,
                               std::optional<double> center = std::nullopt,
                               const CltOptions& opts = {});

// Sample second moment about 0 (phi is centered) with jackknife stderr.
std::pair<double, double> estimate_sigma2(const std::vector<double>& samples);

// Characteristic-function table Phi(t) = E exp(i t S_n / sqrt(n)) on a fixed
// t grid. Negative t values are evaluated by conjugate reflection of |t|.
struct CharFnTable {
  std::vector<double> t;
  std::vector<double> re, im;
  std::vector<double> se_re, se_im;  // zeros in exact mode
  unsigned n = 0;
  std::string start;
  std::string mode;
};

CharFnTable char_fn(const IfsSystem& system, const ScalarFn& phi,
                    StartSpec start, unsigned n,
                    const std::vector<double>& t_grid, std::size_t R,
                    std::uint64_t seed, const CltOptions& opts = {});

// sup over shared t of |Phi_A(t) - Phi_B(t)| with propagated stderr.
struct CharFnGap {
  double sup = 0.0;
  double stderr_est = 0.0;
  double t_at_sup = 0.0;
};

CharFnGap char_fn_gap(const CharFnTable& a, const CharFnTable& b);

// ||sum_{j=1..n} U^j phi||_{L2} over the supplied y sample, for each n in
// n_list, plus the fitted growth exponent (slope of log norm vs log n).
// Exact mode accumulates the atom pushforward; MC mode uses nested replicas
// with stream_index = y_index * 2^32 + inner, and debiases the squared inner
// mean by its sampling variance.
struct MwGrowth {
  std::vector<unsigned> n_list;
  std::vector<double> norms;
  double exponent = 0.0;
  std::string mode;
};

MwGrowth mw_growth(const IfsSystem& system, const ScalarFn& phi,
                   const std::vector<unsigned>& n_list,
                   const std::vector<double>& y_samples, std::size_t inner_R,
                   std::uint64_t seed, const CltOptions& opts = {});

// Sum of phi over the first n states of one stream (the MC path workhorse).
double path_phi_sum(const IfsSystem& system, const ScalarFn& phi, double x0,
                    std::size_t n, StreamSpec stream);

}  // namespace ifs
