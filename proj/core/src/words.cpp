#include "ifs/words.hpp"

#include <cmath>
#include <string>

#include "ifs/errors.hpp"

namespace ifs {

double word_apply(const IfsSystem& system, std::span<const std::uint32_t> word,
                  double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw ValidationError("word_apply: x outside [0,1]");
  for (std::uint32_t s : word) {
    if (s >= system.size())
      throw ValidationError("word_apply: symbol " + std::to_string(s) +
                            " out of range for N=" +
                            std::to_string(system.size()));
    x = system.map(s).eval(x);
  }
  return x;
}

std::uint64_t enumeration_cost(const IfsSystem& system, unsigned n,
                               std::uint64_t budget) {
  std::uint64_t cost = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (cost > budget / system.size())
      throw BudgetError("enumeration of N^n = " + std::to_string(system.size()) +
                        "^" + std::to_string(n) + " words exceeds budget " +
                        std::to_string(budget));
    cost *= system.size();
  }
  return cost;
}

namespace {

double dual_rec(const IfsSystem& system,
                const std::function<double(double)>& phi, unsigned depth,
                double x) {
  if (depth == 0) return phi(x);
  double acc = 0.0;
  // Fixed symbol order makes the reduction deterministic.
  for (std::size_t i = 0; i < system.size(); ++i)
    acc += system.probs()[i] *
           dual_rec(system, phi, depth - 1, system.map(i).eval(x));
  return acc;
}

void paths_rec(const IfsSystem& system, unsigned n, double x, double weight,
               std::vector<double>& states,
               const std::function<void(double, std::span<const double>)>& cb) {
  if (states.size() == n) {
    cb(weight, std::span<const double>(states));
    return;
  }
  for (std::size_t i = 0; i < system.size(); ++i) {
    const double nx = system.map(i).eval(x);
    states.push_back(nx);
    paths_rec(system, n, nx, weight * system.probs()[i], states, cb);
    states.pop_back();
  }
}

}  // namespace

double dual_apply_exact(const IfsSystem& system,
                        const std::function<double(double)>& phi, unsigned n,
                        double x, std::uint64_t budget) {
  if (!(x >= 0.0 && x <= 1.0))
    throw ValidationError("dual_apply_exact: x outside [0,1]");
  enumeration_cost(system, n, budget);
  return dual_rec(system, phi, n, x);
}

void enumerate_paths(
    const IfsSystem& system, unsigned n, double x,
    const std::function<void(double, std::span<const double>)>& callback,
    std::uint64_t budget) {
  if (!(x >= 0.0 && x <= 1.0))
    throw ValidationError("enumerate_paths: x outside [0,1]");
  enumeration_cost(system, n, budget);
  std::vector<double> states;
  states.reserve(n);
  paths_rec(system, n, x, 1.0, states, callback);
}

EmpiricalMeasure markov_step_atoms(const IfsSystem& system,
                                   const EmpiricalMeasure& mu) {
  if (mu.empty()) return EmpiricalMeasure();
  std::vector<EmpiricalMeasure::Atom> out;
  out.reserve(mu.size() * system.size());
  for (const auto& a : mu.atoms())
    for (std::size_t i = 0; i < system.size(); ++i)
      out.push_back({system.map(i).eval(a.point), system.probs()[i] * a.weight});
  return EmpiricalMeasure(std::move(out));
}

}  // namespace ifs
