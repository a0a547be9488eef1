// Batch front door for the IFS ergodicity / CLT toolkit: parses a config,
// dispatches subcommands, manages seeds and budgets, and writes
// machine-readable reports (JSON + CSV) into a per-run output directory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ifs/admissibility.hpp"
#include "ifs/bounds.hpp"
#include "ifs/calibration.hpp"
#include "ifs/chain.hpp"
#include "ifs/clt.hpp"
#include "ifs/ergodic.hpp"
#include "ifs/errors.hpp"
#include "ifs/stats.hpp"
#include "ifs/system.hpp"
#include "ifs/words.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "ifs-ergodic/1";
constexpr const char* kVersion = "0.1.0";

struct GlobalConfig {
  std::string config_path;
  std::string system_path;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string mode = "auto";
  std::uint64_t budget = ifs::kDefaultEnumerationBudget;
  std::string out_dir = "out";
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);  // LF endings on every platform
  if (!out) throw ifs::ValidationError("cannot write " + path.string());
  out << text;
}

// Loads the optional config file, then lets explicit flags win.
void apply_config_file(GlobalConfig& cfg) {
  if (cfg.config_path.empty()) return;
  std::ifstream in(cfg.config_path);
  if (!in)
    throw ifs::ValidationError("cannot open config: " + cfg.config_path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ifs::ValidationError(std::string("config is not valid JSON: ") +
                               e.what());
  }
  if (cfg.system_path.empty() && j.contains("system"))
    cfg.system_path = j["system"].get<std::string>();
  if (j.contains("seed") && cfg.seed == 1) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("threads") && cfg.threads == 1)
    cfg.threads = j["threads"].get<unsigned>();
  if (j.contains("mode") && cfg.mode == "auto")
    cfg.mode = j["mode"].get<std::string>();
  if (j.contains("budget") && cfg.budget == ifs::kDefaultEnumerationBudget)
    cfg.budget = j["budget"].get<std::uint64_t>();
  if (j.contains("out") && cfg.out_dir == "out")
    cfg.out_dir = j["out"].get<std::string>();
}

json config_json(const GlobalConfig& cfg, const std::string& command) {
  json j;
  j["command"] = command;
  j["system"] = cfg.system_path;
  j["seed"] = cfg.seed;
  // Thread count is omitted: results are contractually identical across
  // thread counts, so it is not part of the reproducibility fingerprint.
  j["mode"] = cfg.mode;
  j["budget"] = cfg.budget;
  return j;
}

void write_manifest(const GlobalConfig& cfg, const std::string& command) {
  const json cj = config_json(cfg, command);
  json m;
  m["schema"] = kSchema;
  m["version"] = kVersion;
  m["config"] = cj;
  m["config_hash"] = std::hash<std::string>{}(cj.dump());
  m["seed"] = cfg.seed;
  write_text(fs::path(cfg.out_dir) / "manifest.json", m.dump(2) + "\n");
  // Timestamp lives in its own file so data files stay byte-reproducible.
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now);
  write_text(fs::path(cfg.out_dir) / "timestamp.txt",
             std::to_string(secs.count()) + "\n");
}

ifs::BoundOptions bound_options(const GlobalConfig& cfg, std::size_t mc_R) {
  ifs::BoundOptions o;
  o.mode = ifs::parse_mode(cfg.mode);
  o.budget = cfg.budget;
  o.mc_replicas = mc_R;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  return o;
}

ifs::ScalarFn named_phi(const std::string& name) {
  if (name == "id") return [](double x) { return x; };
  if (name == "id_centered") return [](double x) { return x - 0.5; };
  if (name == "quadratic") return [](double x) { return x * (1.0 - x); };
  if (name == "tent") return [](double x) { return std::min(x, 1.0 - x); };
  throw ifs::ValidationError(
      "unknown test function: " + name +
      " (expected id|id_centered|quadratic|tent)");
}

ifs::StartSpec parse_start(const std::string& s) {
  if (s == "stationary") return ifs::StartSpec::invariant();
  return ifs::StartSpec::at(std::stod(s));
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw ifs::ValidationError("empty numeric list");
  return out;
}

std::vector<unsigned> parse_unsigned(const std::string& s) {
  std::vector<unsigned> out;
  for (double v : parse_doubles(s)) out.push_back(static_cast<unsigned>(v));
  return out;
}

void emit(const GlobalConfig& cfg, const std::string& command, json result) {
  fs::create_directories(cfg.out_dir);
  result["schema"] = kSchema;
  write_text(fs::path(cfg.out_dir) / "result.json", result.dump(2) + "\n");
  write_manifest(cfg, command);
  std::cout << result.dump(2) << "\n";
}

void write_csv(const GlobalConfig& cfg, const std::string& name,
               const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream ss;
  ss << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) ss << ",";
      ss << format_double(row[i]);
    }
    ss << "\n";
  }
  fs::create_directories(cfg.out_dir);
  write_text(fs::path(cfg.out_dir) / name, ss.str());
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Markov chains from iterated systems of increasing interval "
               "homeomorphisms: simulation and desk-scale verification"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalConfig cfg;
  app.add_option("--config", cfg.config_path, "JSON config file");
  app.add_option("--system", cfg.system_path, "system definition JSON");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--threads", cfg.threads, "worker threads (results identical)");
  app.add_option("--mode", cfg.mode, "exact|mc|auto");
  app.add_option("--budget", cfg.budget, "exact-enumeration budget (words)");
  app.add_option("--out", cfg.out_dir, "output directory");

  // admissible
  auto* cmd_adm = app.add_subcommand("admissible", "crossing + Lyapunov check");
  std::size_t adm_grid = 10001;
  cmd_adm->add_option("--grid", adm_grid, "crossing grid points");

  // calibrate
  auto* cmd_cal = app.add_subcommand("calibrate", "tail-class constants");
  double cal_alpha = 0.5;
  std::string cal_alpha_grid;
  cmd_cal->add_option("--alpha", cal_alpha, "tail exponent in (0,1)");
  cmd_cal->add_option("--alpha-grid", cal_alpha_grid,
                      "comma list; reports the alpha maximizing delta");

  // simulate
  auto* cmd_sim = app.add_subcommand("simulate", "trajectories / ensembles");
  double sim_x0 = 0.5;
  std::size_t sim_n = 100, sim_R = 1;
  cmd_sim->add_option("--x0", sim_x0);
  cmd_sim->add_option("--n", sim_n);
  cmd_sim->add_option("--R", sim_R);

  // stability
  auto* cmd_stab = app.add_subcommand("stability", "W1(P^n dx, P^n dy)");
  double st_x = 0.3, st_y = 0.7;
  unsigned st_n = 12;
  std::size_t st_R = 100000;
  cmd_stab->add_option("--x", st_x);
  cmd_stab->add_option("--y", st_y);
  cmd_stab->add_option("--n", st_n);
  cmd_stab->add_option("--R", st_R);

  // sync
  auto* cmd_sync = app.add_subcommand("sync", "coupled gap decay profile");
  double sy_x = 0.3, sy_y = 0.7;
  unsigned sy_n = 10, sy_window = 0;
  std::size_t sy_R = 100000;
  cmd_sync->add_option("--x", sy_x);
  cmd_sync->add_option("--y", sy_y);
  cmd_sync->add_option("--n", sy_n);
  cmd_sync->add_option("--R", sy_R);
  cmd_sync->add_option("--fit-window", sy_window, "trailing points for q-hat");

  // bounds
  auto* cmd_bounds = app.add_subcommand("bounds", "probability-bound checks");
  cmd_bounds->require_subcommand(1);
  double bd_alpha = 0.5, bd_x = 0.5, bd_a = 1e-9;
  unsigned bd_n = 16, bd_k = 0;
  std::size_t bd_R = 100000;
  std::string bd_side = "lower";
  auto* bd_escape = cmd_bounds->add_subcommand("escape", "boundary escape");
  bd_escape->add_option("--alpha", bd_alpha);
  bd_escape->add_option("--n", bd_n);
  bd_escape->add_option("--side", bd_side, "lower|upper");
  bd_escape->add_option("--R", bd_R);
  auto* bd_boundary = cmd_bounds->add_subcommand("boundary", "boundary mass");
  bd_boundary->add_option("--alpha", bd_alpha);
  bd_boundary->add_option("--n", bd_n);
  bd_boundary->add_option("--k", bd_k, "steps (default floor(n^1/4))");
  bd_boundary->add_option("--x", bd_x);
  bd_boundary->add_option("--R", bd_R);
  auto* bd_return = cmd_bounds->add_subcommand("return", "return to J");
  bd_return->add_option("--alpha", bd_alpha);
  bd_return->add_option("--n", bd_n);
  bd_return->add_option("--a", bd_a, "J = [a, 1-a]");
  bd_return->add_option("--R", bd_R);

  // ergodic
  auto* cmd_erg = app.add_subcommand("ergodic", "ergodicity diagnostics");
  cmd_erg->require_subcommand(1);
  double er_x = 0.5;
  std::size_t er_n = 10000, er_R = 1000;
  std::string er_phi = "id";
  std::string er_nlist = "2,4,8,12";
  std::string er_grid = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  auto* er_birk = cmd_erg->add_subcommand("birkhoff", "time averages");
  er_birk->add_option("--x", er_x);
  er_birk->add_option("--n", er_n);
  er_birk->add_option("--R", er_R);
  er_birk->add_option("--phi", er_phi);
  auto* er_cesaro = cmd_erg->add_subcommand("cesaro", "Cesaro mean sup norm");
  er_cesaro->add_option("--n-list", er_nlist);
  er_cesaro->add_option("--grid", er_grid);
  er_cesaro->add_option("--R", er_R);
  auto* er_dual = cmd_erg->add_subcommand("dual", "U^n f convergence");
  er_dual->add_option("--n-list", er_nlist);
  er_dual->add_option("--grid", er_grid);
  er_dual->add_option("--phi", er_phi);
  er_dual->add_option("--R", er_R);

  // clt
  auto* cmd_clt = app.add_subcommand("clt", "central limit theorem checks");
  cmd_clt->require_subcommand(1);
  std::string clt_start = "0.5", clt_phi = "id_centered";
  std::size_t clt_n = 10000, clt_R = 10000, clt_inner = 2048, clt_y = 128;
  std::string clt_nlist = "64,128,256,512";
  double clt_tmax = 5.0;
  unsigned clt_tpoints = 11;
  std::string clt_start_b;
  auto* clt_sums = cmd_clt->add_subcommand("sums", "normalized Birkhoff sums");
  clt_sums->add_option("--start", clt_start, "x0 or 'stationary'");
  clt_sums->add_option("--phi", clt_phi);
  clt_sums->add_option("--n", clt_n);
  clt_sums->add_option("--R", clt_R);
  auto* clt_ks = cmd_clt->add_subcommand("ks", "KS against N(0, sigma-hat)");
  clt_ks->add_option("--start", clt_start);
  clt_ks->add_option("--phi", clt_phi);
  clt_ks->add_option("--n", clt_n);
  clt_ks->add_option("--R", clt_R);
  auto* clt_mw = cmd_clt->add_subcommand("mw", "Maxwell-Woodroofe norm growth");
  clt_mw->add_option("--phi", clt_phi);
  clt_mw->add_option("--n-list", clt_nlist);
  clt_mw->add_option("--inner-R", clt_inner);
  clt_mw->add_option("--y-samples", clt_y);
  auto* clt_cf = cmd_clt->add_subcommand("charfn", "characteristic functions");
  clt_cf->add_option("--start", clt_start);
  clt_cf->add_option("--start-b", clt_start_b, "optional second start for gap");
  clt_cf->add_option("--phi", clt_phi);
  clt_cf->add_option("--n", clt_n);
  clt_cf->add_option("--R", clt_R);
  clt_cf->add_option("--t-max", clt_tmax);
  clt_cf->add_option("--t-points", clt_tpoints);

  CLI11_PARSE(app, argc, argv);
  apply_config_file(cfg);
  if (cfg.system_path.empty())
    throw ifs::ValidationError("no system file given (--system or config)");
  const ifs::IfsSystem system = ifs::IfsSystem::from_json_file(cfg.system_path);

  ifs::CltOptions clt_opts;
  clt_opts.mode = ifs::parse_mode(cfg.mode);
  clt_opts.budget = cfg.budget;
  clt_opts.threads = cfg.threads;

  if (*cmd_adm) {
    const auto r = ifs::check_admissible(system, adm_grid);
    json j;
    j["admissible"] = r.admissible;
    j["crossing_ok"] = r.crossing_ok;
    j["worst_crossing_point"] = r.worst_crossing_point;
    j["worst_crossing_margin"] = r.worst_crossing_margin;
    j["lyap0"] = r.lyap0;
    j["lyap1"] = r.lyap1;
    emit(cfg, "admissible", j);
    return 0;
  }

  if (*cmd_cal) {
    json j;
    if (!cal_alpha_grid.empty()) {
      double best_alpha = 0.0, best_delta = -1.0;
      json sweep = json::array();
      for (double a : parse_doubles(cal_alpha_grid)) {
        json row;
        row["alpha"] = a;
        try {
          const auto c = ifs::calibrate(system, a);
          row["delta"] = c.delta;
          row["delta_raw"] = c.delta_raw;
          row["epsilon"] = c.epsilon;
          row["M"] = c.M;
          if (c.delta > best_delta) {
            best_delta = c.delta;
            best_alpha = a;
          }
        } catch (const ifs::ValidationError& e) {
          row["infeasible"] = e.what();
        }
        sweep.push_back(row);
      }
      j["sweep"] = sweep;
      j["best_alpha"] = best_alpha;
      j["best_delta"] = best_delta;
    }
    const auto c = ifs::calibrate(system, cal_alpha);
    j["alpha"] = c.alpha;
    j["lambda_lo"] = c.lambda_lo;
    j["lambda_hi"] = c.lambda_hi;
    j["epsilon_raw"] = c.epsilon_raw;
    j["epsilon"] = c.epsilon;
    j["delta_raw"] = c.delta_raw;
    j["delta"] = c.delta;
    j["M"] = c.M;
    emit(cfg, "calibrate", j);
    return 0;
  }

  if (*cmd_sim) {
    if (sim_R == 1) {
      const auto t = ifs::run_trajectory(system, sim_x0, sim_n,
                                         ifs::StreamSpec{cfg.seed, 0});
      std::vector<std::vector<double>> rows;
      for (std::size_t k = 0; k < t.states.size(); ++k)
        rows.push_back({static_cast<double>(k + 1),
                        static_cast<double>(t.symbols[k] + 1), t.states[k]});
      write_csv(cfg, "trajectory.csv", "step,symbol,state", rows);
      json j;
      j["x0"] = sim_x0;
      j["n"] = sim_n;
      j["terminal"] = t.terminal();
      emit(cfg, "simulate", j);
    } else {
      const auto terminals = ifs::run_ensemble(
          system, sim_x0, sim_n, sim_R, cfg.seed,
          [](const ifs::Trajectory& t) { return t.terminal(); }, cfg.threads);
      std::vector<std::vector<double>> rows;
      for (std::size_t r = 0; r < terminals.size(); ++r)
        rows.push_back({static_cast<double>(r), terminals[r]});
      write_csv(cfg, "ensemble.csv", "replica,terminal", rows);
      const auto [mean, se] = ifs::mean_with_stderr(terminals);
      json j;
      j["x0"] = sim_x0;
      j["n"] = sim_n;
      j["R"] = sim_R;
      j["terminal_mean"] = mean;
      j["terminal_stderr"] = se;
      emit(cfg, "simulate", j);
    }
    return 0;
  }

  if (*cmd_stab) {
    const auto e = ifs::stability_gap(system, st_x, st_y, st_n,
                                      bound_options(cfg, st_R));
    json j;
    j["x"] = st_x;
    j["y"] = st_y;
    j["n"] = st_n;
    j["w1"] = e.value;
    j["stderr"] = e.stderr_est;
    j["mode"] = e.mode;
    emit(cfg, "stability", j);
    return 0;
  }

  if (*cmd_sync) {
    const auto p = ifs::sync_gap_profile(system, sy_x, sy_y, sy_n,
                                         bound_options(cfg, sy_R), sy_window);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < p.gap.size(); ++k)
      rows.push_back({static_cast<double>(k + 1), p.gap[k], p.gap_stderr[k]});
    write_csv(cfg, "sync_profile.csv", "k,gap,stderr", rows);
    json j;
    j["q_hat"] = p.q_hat;
    j["degenerate"] = p.degenerate;
    j["mode"] = p.mode;
    emit(cfg, "sync", j);
    return 0;
  }

  if (*cmd_bounds) {
    const auto consts = ifs::calibrate(system, bd_alpha);
    ifs::BoundCheck check;
    std::string sub;
    if (*bd_escape) {
      sub = "bounds escape";
      check = ifs::verify_escape_bound(
          system, consts, bd_n,
          bd_side == "upper" ? ifs::Side::kUpper : ifs::Side::kLower,
          bound_options(cfg, bd_R));
    } else if (*bd_boundary) {
      sub = "bounds boundary";
      const unsigned k = bd_k ? bd_k : ifs::fourth_root_floor(bd_n);
      check = ifs::verify_boundary_mass(system, consts, bd_n, k, bd_x,
                                        bound_options(cfg, bd_R));
    } else {
      sub = "bounds return";
      check = ifs::verify_return_probability(system, consts, bd_a, bd_n,
                                             bound_options(cfg, bd_R));
    }
    emit(cfg, sub, json::parse(check.to_json()));
    return 0;
  }

  if (*cmd_erg) {
    const ifs::ScalarFn phi = named_phi(er_phi);
    if (*er_birk) {
      std::vector<double> vals(er_R);
      for (std::size_t r = 0; r < er_R; ++r)
        vals[r] = ifs::birkhoff_average(system, phi, er_x, er_n,
                                        ifs::StreamSpec{cfg.seed, r});
      const auto [mean, se] = ifs::mean_with_stderr(vals);
      json j;
      j["x"] = er_x;
      j["n"] = er_n;
      j["R"] = er_R;
      j["mean"] = mean;
      j["stderr"] = se;
      emit(cfg, "ergodic birkhoff", j);
      return 0;
    }
    const auto grid = parse_doubles(er_grid);
    const auto mustar = ifs::burn_in_sample(system, 1000, 100000, cfg.seed + 7,
                                            cfg.threads);
    std::vector<std::vector<double>> rows;
    json j;
    if (*er_cesaro) {
      // Center against mu-hat and pin the endpoints to zero with a tent term.
      const ifs::ScalarFn g = [](double x) { return x * (1.0 - x); };
      const ifs::ScalarFn s = [](double x) { return std::min(x, 1.0 - x); };
      const double c = mustar.integrate(g) / mustar.integrate(s);
      const ifs::ScalarFn centered = [g, s, c](double x) {
        return g(x) - c * s(x);
      };
      for (unsigned n : parse_unsigned(er_nlist)) {
        const auto e = ifs::cesaro_norm(system, centered, n, grid,
                                        bound_options(cfg, er_R));
        rows.push_back({static_cast<double>(n), e.value, e.stderr_est});
      }
      write_csv(cfg, "cesaro.csv", "n_or_k,value,stderr", rows);
      j["phi"] = "x(1-x) - c*tent, centered against mu-hat";
      emit(cfg, "ergodic cesaro", j);
    } else {
      for (unsigned n : parse_unsigned(er_nlist)) {
        const auto d = ifs::dual_convergence_check(system, phi, grid, n, mustar,
                                                   bound_options(cfg, er_R));
        rows.push_back({static_cast<double>(n), d.sup_gap, d.l2_gap});
      }
      write_csv(cfg, "dual_convergence.csv", "n_or_k,sup_gap,l2_gap", rows);
      j["phi"] = er_phi;
      emit(cfg, "ergodic dual", j);
    }
    return 0;
  }

  if (*cmd_clt) {
    const ifs::ScalarFn phi = named_phi(clt_phi);
    if (*clt_sums || *clt_ks) {
      const auto start = parse_start(clt_start);
      // id_centered is exactly centered for reflection-symmetric systems;
      // other functions get the burn-in centering.
      std::optional<double> center;
      if (clt_phi == "id_centered") center = 0.0;
      const auto sums = ifs::normalized_sums(system, phi, start, clt_n, clt_R,
                                             cfg.seed, center, clt_opts);
      const auto [sigma2, sigma2_se] = ifs::estimate_sigma2(sums.samples);
      json j;
      j["start"] = start.describe();
      j["n"] = clt_n;
      j["R"] = clt_R;
      j["m_hat"] = sums.m_hat;
      j["m_stderr"] = sums.m_stderr;
      j["sigma2_hat"] = sigma2;
      j["sigma2_stderr"] = sigma2_se;
      if (sigma2 > 0.0) {
        const auto ks =
            ifs::ks_one_sample_normal(sums.samples, std::sqrt(sigma2));
        j["ks_statistic"] = ks.statistic;
        j["ks_pvalue"] = ks.p_value;
        j["ks_note"] = "plug-in sigma-hat; test is approximate";
      } else {
        j["ks_note"] = "sigma2 = 0: coboundary-like degenerate case, KS skipped";
      }
      if (*clt_sums) {
        std::vector<std::vector<double>> rows;
        for (std::size_t r = 0; r < sums.samples.size(); ++r)
          rows.push_back({static_cast<double>(r), sums.samples[r]});
        write_csv(cfg, "samples.csv", "replica,normalized_sum", rows);
        j["samples"] = "samples.csv";
      }
      emit(cfg, *clt_sums ? "clt sums" : "clt ks", j);
      return 0;
    }
    if (*clt_mw) {
      const auto ys = ifs::burn_in_points(system, 1000, clt_y, cfg.seed + 11,
                                          cfg.threads);
      const auto mw = ifs::mw_growth(system, phi, parse_unsigned(clt_nlist), ys,
                                     clt_inner, cfg.seed, clt_opts);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < mw.n_list.size(); ++i)
        rows.push_back({static_cast<double>(mw.n_list[i]), mw.norms[i]});
      write_csv(cfg, "mw_norms.csv", "n,norm", rows);
      json j;
      j["exponent"] = mw.exponent;
      j["mode"] = mw.mode;
      emit(cfg, "clt mw", j);
      return 0;
    }
    // charfn
    std::vector<double> t_grid;
    for (unsigned i = 0; i < clt_tpoints; ++i)
      t_grid.push_back(clt_tmax * i / std::max(1u, clt_tpoints - 1));
    const auto ta = ifs::char_fn(system, phi, parse_start(clt_start), clt_n,
                                 t_grid, clt_R, cfg.seed, clt_opts);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < t_grid.size(); ++i)
      rows.push_back({ta.t[i], ta.re[i], ta.im[i], ta.se_re[i], ta.se_im[i]});
    write_csv(cfg, "charfn_a.csv", "t,re,im,se_re,se_im", rows);
    json j;
    j["start_a"] = ta.start;
    j["n"] = clt_n;
    j["mode"] = ta.mode;
    if (!clt_start_b.empty()) {
      const auto tb = ifs::char_fn(system, phi, parse_start(clt_start_b), clt_n,
                                   t_grid, clt_R, cfg.seed + 1, clt_opts);
      rows.clear();
      for (std::size_t i = 0; i < t_grid.size(); ++i)
        rows.push_back({tb.t[i], tb.re[i], tb.im[i], tb.se_re[i], tb.se_im[i]});
      write_csv(cfg, "charfn_b.csv", "t,re,im,se_re,se_im", rows);
      const auto gap = ifs::char_fn_gap(ta, tb);
      j["start_b"] = tb.start;
      j["gap_sup"] = gap.sup;
      j["gap_stderr"] = gap.stderr_est;
      j["gap_t"] = gap.t_at_sup;
    }
    emit(cfg, "clt charfn", j);
    return 0;
  }

  throw ifs::ValidationError("no subcommand handled");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ifs::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const ifs::InternalError& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return 3;
  } catch (const ifs::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
