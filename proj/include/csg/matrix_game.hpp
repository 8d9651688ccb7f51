#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "csg/game.hpp"

namespace csg {

struct MatrixGame {
  std::vector<std::vector<Rational>> payoff;  // [row][col], row player maximises

  std::size_t rows() const { return payoff.size(); }
  std::size_t cols() const { return payoff.empty() ? 0 : payoff.front().size(); }
};

struct MatrixSolution {
  Rational value;
  std::vector<Rational> row_strategy;
  std::vector<Rational> col_strategy;
};

// Entry (i, j) is the expectation of v after the local move pair (i, j) at s.
MatrixGame one_step_matrix(const GameStructure& g, const Valuation& v, StateId s);

// Exact value and optimal strategies for both players.
MatrixSolution solve_matrix_game(const MatrixGame& m);

Rational column_payoff(const MatrixGame& m, const std::vector<Rational>& row_mix, std::size_t j);
// min over pure columns
Rational guaranteed_payoff(const MatrixGame& m, const std::vector<Rational>& row_mix);

Rational pre_sel_sel(const GameStructure& g, const Valuation& v, StateId s,
                     const std::vector<Rational>& xi1, const std::vector<Rational>& xi2);
Rational pre1_sel(const GameStructure& g, const Valuation& v, StateId s, const std::vector<Rational>& xi1);
Valuation pre1_sel(const GameStructure& g, const Valuation& v, const Selector& xi1);

struct Pre1Result {
  Valuation values;
  Selector witness;
};

Pre1Result pre1(const GameStructure& g, const Valuation& v);

class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEnumerationBudget = 2'000'000;

// Distributions over m moves whose probabilities are multiples of 1/l for a
// common l <= k, ordered by l and then lexicographically, duplicates removed.
std::vector<std::vector<Rational>> k_uniform_distributions(std::size_t m, std::size_t k,
                                                           std::size_t budget = kDefaultEnumerationBudget);

struct KUniformChoice {
  Rational value;
  std::vector<Rational> distribution;  // first maximiser in enumeration order
};

KUniformChoice pre1_k_at(const GameStructure& g, const Valuation& v, StateId s, std::size_t k,
                         std::size_t budget = kDefaultEnumerationBudget);
Pre1Result pre1_k(const GameStructure& g, const Valuation& v, std::size_t k,
                  std::size_t budget = kDefaultEnumerationBudget);

}  // namespace csg
