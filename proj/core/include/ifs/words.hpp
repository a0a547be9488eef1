#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ifs/measure.hpp"
#include "ifs/system.hpp"

namespace ifs {

using Word = std::vector<std::uint32_t>;  // symbols are 0-based indices

// f_w(x) = f_{w_n} o ... o f_{w_1}(x): symbols applied in word order, first
// symbol first. The empty word is the identity.
double word_apply(const IfsSystem& system, std::span<const std::uint32_t> word,
                  double x);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1u << 20;

// Number of words of length n, or throws BudgetError with the cost estimate
// when N^n exceeds the budget.
std::uint64_t enumeration_cost(const IfsSystem& system, unsigned n,
                               std::uint64_t budget = kDefaultEnumerationBudget);

// Exact U^n phi(x): the weighted sum of phi over all N^n words of length n.
// n = 0 returns phi(x). Enumeration is depth-first in symbol order, so the
// reduction order is fixed and results are bit-identical run to run.
double dual_apply_exact(const IfsSystem& system,
                        const std::function<double(double)>& phi, unsigned n,
                        double x,
                        std::uint64_t budget = kDefaultEnumerationBudget);

// Visits every word of length n: callback(weight, states) where states holds
// the n successive images of x (states[j-1] = f^j_w(x)). Shared by the exact
// oracles that need whole trajectories rather than terminal values.
void enumerate_paths(
    const IfsSystem& system, unsigned n, double x,
    const std::function<void(double weight, std::span<const double> states)>&
        callback,
    std::uint64_t budget = kDefaultEnumerationBudget);

// One exact Markov step on an atom measure: P mu = sum_i p_i mu o f_i^{-1},
// i.e. each atom (x, w) maps to the N atoms (f_i(x), p_i w). Mass is
// conserved; the atom count is multiplied by N (minus merges).
EmpiricalMeasure markov_step_atoms(const IfsSystem& system,
                                   const EmpiricalMeasure& mu);

}  // namespace ifs
