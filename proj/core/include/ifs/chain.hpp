#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ifs/measure.hpp"
#include "ifs/rng.hpp"
#include "ifs/system.hpp"
#include "ifs/words.hpp"

namespace ifs {

// One chain realization: states[k-1] = f_{symbols[k-1]} o ... o f_{symbols[0]}(x0).
struct Trajectory {
  double x0 = 0.0;
  Word symbols;
  std::vector<double> states;  // x_1..x_n

  double terminal() const { return states.empty() ? x0 : states.back(); }
};

// Draws n i.i.d. symbols from the probability vector: symbol k is the
// smallest index i with cumulative probability C_i > u_k.
Word sample_symbols(const IfsSystem& system, std::size_t n, StreamSpec stream);

Trajectory run_trajectory(const IfsSystem& system, double x0, std::size_t n,
                          StreamSpec stream);

// Trajectory along a caller-supplied word (the exactness link to word_apply).
Trajectory run_forced(const IfsSystem& system, double x0, const Word& word);

// Synchronous coupling: both trajectories consume the identical word.
std::pair<Trajectory, Trajectory> run_coupled_pair(const IfsSystem& system,
                                                   double x0, double y0,
                                                   std::size_t n,
                                                   StreamSpec stream);

// Runs R independent trajectories (stream_index = replica index) and stores
// per-replica reductions by index, so any thread count yields identical
// output. `reduce` maps a finished trajectory to the stored value.
std::vector<double> run_ensemble(
    const IfsSystem& system, double x0, std::size_t n, std::size_t R,
    std::uint64_t seed, const std::function<double(const Trajectory&)>& reduce,
    unsigned threads = 1);

// Ensemble with per-replica start points (used for stationary starts).
std::vector<double> run_ensemble_from(
    const IfsSystem& system, const std::vector<double>& starts, std::size_t n,
    std::uint64_t seed, const std::function<double(const Trajectory&)>& reduce,
    unsigned threads = 1);

// Terminal states of R trajectories of length n_burn started at 1/2, as an
// equal-weight measure: the workhorse estimate of the invariant measure.
EmpiricalMeasure burn_in_sample(const IfsSystem& system, std::size_t n_burn,
                                std::size_t R, std::uint64_t seed,
                                unsigned threads = 1);

// Raw terminal states (same draws as burn_in_sample, unsorted, by replica).
std::vector<double> burn_in_points(const IfsSystem& system, std::size_t n_burn,
                                   std::size_t R, std::uint64_t seed,
                                   unsigned threads = 1);

}  // namespace ifs
