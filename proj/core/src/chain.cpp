#include "ifs/chain.hpp"

#include <cmath>
#include <string>

#include "ifs/errors.hpp"
#include "ifs/parallel.hpp"

namespace ifs {

namespace {

void check_state(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw InternalError("chain state escaped [0,1]: " + std::to_string(x));
}

}  // namespace

Word sample_symbols(const IfsSystem& system, std::size_t n, StreamSpec stream) {
  SplitMix64 rng(stream);
  Word word;
  word.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    word.push_back(static_cast<std::uint32_t>(system.symbol_for(rng.next_unit())));
  return word;
}

Trajectory run_forced(const IfsSystem& system, double x0, const Word& word) {
  if (!(x0 >= 0.0 && x0 <= 1.0))
    throw ValidationError("run_trajectory: x0 outside [0,1]");
  Trajectory t;
  t.x0 = x0;
  t.symbols = word;
  t.states.reserve(word.size());
  double x = x0;
  for (std::uint32_t s : word) {
    x = system.map(s).eval(x);
    check_state(x);
    t.states.push_back(x);
  }
  return t;
}

Trajectory run_trajectory(const IfsSystem& system, double x0, std::size_t n,
                          StreamSpec stream) {
  return run_forced(system, x0, sample_symbols(system, n, stream));
}

std::pair<Trajectory, Trajectory> run_coupled_pair(const IfsSystem& system,
                                                   double x0, double y0,
                                                   std::size_t n,
                                                   StreamSpec stream) {
  const Word word = sample_symbols(system, n, stream);
  return {run_forced(system, x0, word), run_forced(system, y0, word)};
}

std::vector<double> run_ensemble(
    const IfsSystem& system, double x0, std::size_t n, std::size_t R,
    std::uint64_t seed, const std::function<double(const Trajectory&)>& reduce,
    unsigned threads) {
  std::vector<double> out(R);
  parallel_for(R, threads, [&](std::size_t r) {
    out[r] = reduce(run_trajectory(system, x0, n, StreamSpec{seed, r}));
  });
  return out;
}

std::vector<double> run_ensemble_from(
    const IfsSystem& system, const std::vector<double>& starts, std::size_t n,
    std::uint64_t seed, const std::function<double(const Trajectory&)>& reduce,
    unsigned threads) {
  std::vector<double> out(starts.size());
  parallel_for(starts.size(), threads, [&](std::size_t r) {
    out[r] = reduce(run_trajectory(system, starts[r], n, StreamSpec{seed, r}));
  });
  return out;
}

std::vector<double> burn_in_points(const IfsSystem& system, std::size_t n_burn,
                                   std::size_t R, std::uint64_t seed,
                                   unsigned threads) {
  return run_ensemble(
      system, 0.5, n_burn, R, seed,
      [](const Trajectory& t) { return t.terminal(); }, threads);
}

EmpiricalMeasure burn_in_sample(const IfsSystem& system, std::size_t n_burn,
                                std::size_t R, std::uint64_t seed,
                                unsigned threads) {
  if (R < 1) throw ValidationError("burn_in_sample: R must be >= 1");
  return EmpiricalMeasure::from_points(
      burn_in_points(system, n_burn, R, seed, threads));
}

}  // namespace ifs
