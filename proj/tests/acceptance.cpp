// Acceptance gate: runs the twelve release criteria against the two-map
// fixture and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria. Invoked as:
//   acceptance <path-to-cli-binary> <path-to-system-json>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ifs/admissibility.hpp"
#include "ifs/bounds.hpp"
#include "ifs/calibration.hpp"
#include "ifs/chain.hpp"
#include "ifs/clt.hpp"
#include "ifs/ergodic.hpp"
#include "ifs/stats.hpp"
#include "ifs/system.hpp"
#include "ifs/words.hpp"

namespace fs = std::filesystem;
using ifs::IfsSystem;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id,
              what.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

const ifs::ScalarFn kPhi = [](double x) { return x - 0.5; };

ifs::BoundOptions exact_opts() {
  ifs::BoundOptions o;
  o.mode = ifs::Mode::kExact;
  return o;
}

// ---- criteria ----

void c1_admissibility(const IfsSystem& sys) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = ifs::check_admissible(sys);
  const double lyap = 0.5 * std::log(1.5);
  const bool pass = r.admissible && std::abs(r.lyap0 - lyap) <= 1e-12 &&
                    std::abs(r.lyap1 - lyap) <= 1e-12 && seconds_since(t0) < 1.0;
  report(1, pass, "admissibility: lyap0 = lyap1 = (1/2)ln(3/2) within 1e-12");
}

void c2_calibration(const IfsSystem& sys) {
  bool pass = true;
  const auto c5 = ifs::calibrate(sys, 0.5);
  const double s5 = 0.5 * (std::sqrt(2.0) + 1.0 / std::sqrt(3.0));
  pass &= std::abs(c5.delta_raw - (1.0 - s5 * s5)) <= 1e-10;
  const auto c1 = ifs::calibrate(sys, 0.1);
  const double s1 = 0.5 * (std::pow(2.0, 0.1) + std::pow(3.0, -0.1));
  pass &= std::abs(c1.delta_raw - (1.0 - std::pow(s1, 10.0))) <= 1e-10;
  // Brute-force scan of the linearization inequalities on [0, epsilon].
  for (const auto& c : {c5, c1}) {
    for (std::size_t i = 0; i < sys.size() && pass; ++i) {
      const auto& f = sys.map(i);
      for (int g = 0; g <= 100000; ++g) {
        const double x = c.epsilon * g / 100000.0;
        if (f.eval(x) < c.lambda_lo[i] * x - 1e-12 ||
            1.0 - f.eval(1.0 - x) < c.lambda_hi[i] * x - 1e-12 ||
            f.eval_inverse(x) > x / c.lambda_lo[i] + 1e-12 ||
            f.eval_inverse(1.0 - x) < 1.0 - x / c.lambda_hi[i] - 1e-12) {
          pass = false;
          break;
        }
      }
    }
  }
  report(2, pass, "calibration closed forms within 1e-10 + brute-force scan");
}

void c3_dual_oracle(const IfsSystem& sys) {
  bool pass = true;
  const auto id = [](double x) { return x; };
  for (unsigned n = 1; n <= 12; ++n)
    pass &= std::abs(ifs::dual_apply_exact(sys, id, n, 0.5) - 0.5) <= 1e-12;
  pass &= std::abs(ifs::dual_apply_exact(sys, [](double) { return 0.3; }, 10,
                                         0.2) -
                   0.3) <= 1e-15;
  report(3, pass, "dual operator: U^n id at 1/2 = 1/2 (n=1..12), constants exact");
}

void c4_class_invariance(const IfsSystem& sys) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = ifs::calibrate(sys, 0.5);
  const bool member = ifs::class_invariance_test(
      sys, c, ifs::EmpiricalMeasure::dirac(0.5), 10);
  report(4, member && seconds_since(t0) < 1.0,
         "class invariance: 10 exact pushforward steps stay in the tail class");
}

void c5_escape_bound(const IfsSystem& sys) {
  const auto c = ifs::calibrate(sys, 0.5);
  bool pass = true;
  const auto r16 =
      ifs::verify_escape_bound(sys, c, 16, ifs::Side::kLower, exact_opts());
  pass &= std::abs(r16.estimate - 0.25) <= 1e-12 && r16.satisfied &&
          !r16.vacuous && r16.bound < 1.0;
  for (unsigned k = 1; k <= 12 && pass; ++k) {
    const unsigned n = k * k * k * k;
    for (ifs::Side side : {ifs::Side::kLower, ifs::Side::kUpper}) {
      const auto r = ifs::verify_escape_bound(sys, c, n, side, exact_opts());
      if (!r.vacuous && !r.satisfied) pass = false;
    }
  }
  report(5, pass, "escape bound: exact 0.25 at n=16; no violations for k <= 12");
}

void c6_stability(const IfsSystem& sys) {
  bool pass = true;
  const auto n1 = ifs::stability_gap(sys, 0.3, 0.7, 1, exact_opts());
  pass &= std::abs(n1.value - 0.2) <= 1e-12;
  const auto n12 = ifs::stability_gap(sys, 0.3, 0.7, 12, exact_opts());
  pass &= n12.value < n1.value;
  // Golden number frozen from the first enumeration run of this gate.
  pass &= std::abs(n12.value - 0.040978038311004536) <= 1e-12;
  std::printf("       stability golden number: exact W1 at n=12 is %.17g\n",
              n12.value);
  for (unsigned n : {2u, 6u, 10u}) {
    const auto exact = ifs::stability_gap(sys, 0.3, 0.7, n, exact_opts());
    ifs::BoundOptions mc;
    mc.mode = ifs::Mode::kMonteCarlo;
    mc.mc_replicas = 100000;
    mc.seed = 100 + n;
    mc.threads = 4;
    const auto est = ifs::stability_gap(sys, 0.3, 0.7, n, mc);
    if (est.value + 3.0 * est.stderr_est < exact.value) pass = false;
  }
  report(6, pass, "stability: W1 = 0.2 at n=1, decays by n=12, MC upper bound");
}

void c7_synchronization(const IfsSystem& sys) {
  const auto exact = ifs::sync_gap_profile(sys, 0.3, 0.7, 10, exact_opts());
  bool pass = !exact.degenerate && exact.q_hat > 0.0 && exact.q_hat < 1.0;
  for (std::size_t k = 1; k < exact.gap.size(); ++k)
    if (exact.gap[k] > exact.gap[k - 1]) pass = false;
  ifs::BoundOptions mc;
  mc.mode = ifs::Mode::kMonteCarlo;
  mc.mc_replicas = 1000000;
  mc.seed = 7;
  mc.threads = 4;
  const auto est = ifs::sync_gap_profile(sys, 0.3, 0.7, 10, mc);
  for (std::size_t k = 0; k < exact.gap.size(); ++k)
    if (std::abs(est.gap[k] - exact.gap[k]) > 3.0 * est.gap_stderr[k] + 1e-9)
      pass = false;
  report(7, pass, "synchronization: nonincreasing exact gaps, q in (0,1), MC match");
}

void c8_monotone_occupation(const IfsSystem& sys) {
  bool pass = true;
  const double triples[3][3] = {
      {0.2, 0.8, 0.5}, {0.3, 0.7, 0.3}, {0.1, 0.9, 0.7}};
  for (const auto& t : triples)
    pass &= ifs::monotone_occupation_check(sys, t[0], t[1], t[2], 1000, 1000,
                                           8, 4) == 0;
  report(8, pass, "monotone occupation: 0 violations over 3 triples x 10^3 streams");
}

void c9_clt(const IfsSystem& sys) {
  ifs::CltOptions opts;
  opts.threads = 4;
  const std::size_t n = 10000, R = 10000;
  const auto s3 = ifs::normalized_sums(sys, kPhi, ifs::StartSpec::at(0.3), n, R,
                                       901, 0.0, opts);
  const auto s7 = ifs::normalized_sums(sys, kPhi, ifs::StartSpec::at(0.7), n, R,
                                       902, 0.0, opts);
  const auto ss = ifs::normalized_sums(sys, kPhi, ifs::StartSpec::invariant(),
                                       n, R, 903, 0.0, opts);
  const double d = ifs::ks_two_sample(s3.samples, s7.samples);
  const bool a = d <= 0.03;

  const auto [v3, e3] = ifs::estimate_sigma2(s3.samples);
  const auto [v7, e7] = ifs::estimate_sigma2(s7.samples);
  const auto [vs, es] = ifs::estimate_sigma2(ss.samples);
  const auto ks = ifs::ks_one_sample_normal(s3.samples, std::sqrt(v3));
  const bool b = ks.p_value >= 0.01;
  const auto close = [](double u, double v) {
    return std::abs(u - v) <= 0.10 * std::max(std::abs(u), std::abs(v));
  };
  const bool c = close(v3, v7) && close(v3, vs) && close(v7, vs);
  std::printf(
      "       clt detail: two-sample D=%.4f, one-sample p=%.3f, sigma2 = "
      "%.5f / %.5f / %.5f\n",
      d, ks.p_value, v3, v7, vs);
  report(9, a && b && c,
         "quenched CLT: two-sample D <= 0.03, KS p >= 0.01, sigma2 within 10%");
}

void c10_charfn_gap(const IfsSystem& sys) {
  ifs::CltOptions exact;
  exact.mode = ifs::Mode::kExact;
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.5 * i);

  // Phi_1 at 1/2 is cos(t/4) under enumeration.
  const auto t1 =
      ifs::char_fn(sys, kPhi, ifs::StartSpec::at(0.5), 1, grid, 0, 1, exact);
  bool pass = true;
  for (std::size_t j = 0; j < grid.size(); ++j)
    if (std::abs(t1.re[j] - std::cos(grid[j] / 4.0)) > 1e-12 ||
        std::abs(t1.im[j]) > 1e-12)
      pass = false;

  ifs::CltOptions mc;
  mc.mode = ifs::Mode::kMonteCarlo;
  mc.threads = 4;
  const std::size_t R = 100000;
  double prev_gap = 1e300;
  double last_gap = 0.0, last_se = 0.0;
  for (unsigned n : {100u, 1000u, 10000u}) {
    const auto ta = ifs::char_fn(sys, kPhi, ifs::StartSpec::at(0.3), n, grid, R,
                                 1000 + n, mc);
    const auto tb = ifs::char_fn(sys, kPhi, ifs::StartSpec::at(0.7), n, grid, R,
                                 2000 + n, mc);
    const auto gap = ifs::char_fn_gap(ta, tb);
    std::printf("       charfn gap at n=%u: %.5f (se %.5f)\n", n, gap.sup,
                gap.stderr_est);
    if (gap.sup >= prev_gap + 3.0 * gap.stderr_est) pass = false;
    prev_gap = gap.sup;
    last_gap = gap.sup;
    last_se = gap.stderr_est;
  }
  pass &= last_gap <= 0.05 + 3.0 * last_se;
  report(10, pass,
         "characteristic-function gap decreases in n and is <= 0.05 at n=10^4");
}

void c11_mw_growth(const IfsSystem& sys) {
  ifs::CltOptions exact;
  exact.mode = ifs::Mode::kExact;
  const std::vector<double> ys = {0.2, 0.5, 0.8};
  const std::vector<unsigned> small_ns = {2, 4, 6, 8, 10};
  const auto mw = ifs::mw_growth(sys, kPhi, small_ns, ys, 1, 1, exact);
  bool pass = true;
  for (std::size_t i = 0; i < small_ns.size(); ++i) {
    double acc = 0.0;
    for (double y : ys) {
      double s = 0.0;
      for (unsigned j = 1; j <= small_ns[i]; ++j)
        s += ifs::dual_apply_exact(sys, kPhi, j, y);
      acc += s * s;
    }
    if (std::abs(mw.norms[i] - std::sqrt(acc / ys.size())) > 1e-12) pass = false;
  }

  ifs::CltOptions mc;
  mc.mode = ifs::Mode::kMonteCarlo;
  mc.threads = 4;
  const auto y_sample = ifs::burn_in_points(sys, 1000, 64, 11, 4);
  const auto grown =
      ifs::mw_growth(sys, kPhi, {64, 128, 256, 512}, y_sample, 2048, 12, mc);
  std::printf("       mw growth exponent over {64..512}: %.4f\n",
              grown.exponent);
  pass &= grown.exponent <= 0.5;
  report(11, pass, "maxwell-woodroofe: exact norms match oracle; exponent <= 0.5");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void c12_determinism(const std::string& cli, const std::string& system_path) {
  bool pass = true;
  int run_id = 0;
  const auto run = [&](const std::string& threads,
                       const std::string& args) -> fs::path {
    const fs::path out = fs::temp_directory_path() /
                         ("ifs_acceptance_" + std::to_string(run_id++));
    fs::remove_all(out);
    const std::string cmd = cli + " --system " + system_path + " --out " +
                            out.string() + " --threads " + threads + " " +
                            args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) pass = false;
    return out;
  };
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"--seed 42 clt sums --start 0.3 --n 200 --R 1000",
       {"result.json", "samples.csv", "manifest.json"}},
      {"--seed 9 sync --x 0.3 --y 0.7 --n 10 --R 20000",
       {"result.json", "sync_profile.csv", "manifest.json"}},
      {"--seed 3 simulate --x0 0.4 --n 50 --R 500",
       {"result.json", "ensemble.csv", "manifest.json"}},
  };
  for (const auto& [args, files] : cases) {
    const fs::path a = run("1", args);
    const fs::path b = run("4", args);
    for (const auto& f : files)
      if (slurp(a / f) != slurp(b / f)) pass = false;
  }
  report(12, pass, "determinism: CLI output byte-identical across thread counts");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <cli-binary> <system-json>\n");
    return 64;
  }
  const IfsSystem sys = IfsSystem::from_json_file(argv[2]);

  c1_admissibility(sys);
  c2_calibration(sys);
  c3_dual_oracle(sys);
  c4_class_invariance(sys);
  c5_escape_bound(sys);
  c6_stability(sys);
  c7_synchronization(sys);
  c8_monotone_occupation(sys);
  c9_clt(sys);
  c10_charfn_gap(sys);
  c11_mw_growth(sys);
  c12_determinism(argv[1], argv[2]);

  if (g_failures == 0)
    std::printf("all 12 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures;
}
