#pragma once

#include <string>
#include <vector>

#include "ifs/pl_map.hpp"

namespace ifs {

// An iterated function system (f_1,...,f_N; p_1,...,p_N): N increasing
// piecewise-linear homeomorphisms together with a strictly positive
// probability vector. N >= 2 and the probabilities sum to 1 within 1e-12.
class IfsSystem {
 public:
  IfsSystem(std::vector<PiecewiseLinearMap> maps, std::vector<double> probs);

  std::size_t size() const { return maps_.size(); }
  const PiecewiseLinearMap& map(std::size_t i) const { return maps_[i]; }
  const std::vector<PiecewiseLinearMap>& maps() const { return maps_; }
  const std::vector<double>& probs() const { return probs_; }

  // Cumulative probabilities C_1..C_N (C_N == 1 exactly).
  const std::vector<double>& cum_probs() const { return cum_probs_; }

  // Symbol for a uniform draw u in [0,1): the smallest index i (0-based)
  // with C_{i+1} > u; ties at an exact boundary go to the lower index.
  std::size_t symbol_for(double u) const;

  // The canonical two-map fixture: f1 has slope 1/2 up to (4/5, 2/5) then
  // slope 3; f2 is its reflection, slope 3 up to (1/5, 3/5) then slope 1/2;
  // p = (1/2, 1/2). Admissible, with reflection symmetry f2(x) = 1 - f1(1-x).
  static IfsSystem am2();

  // Parses { "maps": [ { "nodes": [[x,y],...] }, ... ], "probs": [...] }.
  // Throws ValidationError with an element-level diagnostic on violation.
  static IfsSystem from_json_text(const std::string& text);
  static IfsSystem from_json_file(const std::string& path);

  std::string to_json_text() const;

 private:
  std::vector<PiecewiseLinearMap> maps_;
  std::vector<double> probs_;
  std::vector<double> cum_probs_;
};

}  // namespace ifs
