#include <doctest.h>

#include "csg/matrix_game.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace csg;
using fixture::vals;

namespace {

MatrixGame mat(const std::vector<std::vector<std::string>>& rows) {
  MatrixGame m;
  for (const auto& r : rows) m.payoff.push_back(vals(r));
  return m;
}

Rational row_payoff(const MatrixGame& m, const std::vector<Rational>& col_mix, std::size_t i) {
  Rational s = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) s += m.payoff[i][j] * col_mix[j];
  return s;
}

void check_optimal(const MatrixGame& m, const MatrixSolution& sol) {
  Rational rows = 0, cols = 0;
  for (const auto& x : sol.row_strategy) {
    CHECK(sgn(x) >= 0);
    rows += x;
  }
  for (const auto& y : sol.col_strategy) {
    CHECK(sgn(y) >= 0);
    cols += y;
  }
  CHECK(rows == 1);
  CHECK(cols == 1);
  CHECK(guaranteed_payoff(m, sol.row_strategy) == sol.value);
  for (std::size_t i = 0; i < m.rows(); ++i) CHECK(row_payoff(m, sol.col_strategy, i) <= sol.value);
}

}  // namespace

TEST_CASE("two-by-two game with a fully mixed solution") {
  auto m = mat({{"1", "0"}, {"1/4", "1"}});
  auto sol = solve_matrix_game(m);
  CHECK(sol.value == Rational(4, 7));
  CHECK(sol.row_strategy == vals({"3/7", "4/7"}));
  CHECK(sol.col_strategy == vals({"4/7", "3/7"}));
  check_optimal(m, sol);
}

TEST_CASE("saddle points, dominated rows and single rows or columns") {
  auto saddle = mat({{"1/2", "1"}, {"0", "1/3"}});
  CHECK(solve_matrix_game(saddle).value == Rational(1, 2));
  check_optimal(saddle, solve_matrix_game(saddle));

  auto row = mat({{"1/3", "1/5", "1"}});
  auto sol = solve_matrix_game(row);
  CHECK(sol.value == Rational(1, 5));
  CHECK(sol.col_strategy == vals({"0", "1", "0"}));

  auto col = mat({{"1/3"}, {"2/3"}, {"2/3"}});
  sol = solve_matrix_game(col);
  CHECK(sol.value == Rational(2, 3));
  CHECK(sol.row_strategy == vals({"0", "1", "0"}));

  auto constant = mat({{"1/2", "1/2"}, {"1/2", "1/2"}});
  CHECK(solve_matrix_game(constant).value == Rational(1, 2));
  check_optimal(constant, solve_matrix_game(constant));
}

TEST_CASE("matching pennies") {
  auto m = mat({{"1", "0"}, {"0", "1"}});
  auto sol = solve_matrix_game(m);
  CHECK(sol.value == Rational(1, 2));
  CHECK(sol.row_strategy == vals({"1/2", "1/2"}));
}

TEST_CASE("random matrices agree with support enumeration") {
  fixture::Random rnd(5);
  for (int round = 0; round < 200; ++round) {
    auto m = rnd.matrix(3);
    auto sol = solve_matrix_game(m);
    CHECK(sol.value == oracle::matrix_value(m));
    check_optimal(m, sol);
  }
}

TEST_CASE("one-step matrices and Pre1 on the concurrent example") {
  auto g = fixture::bundled("ex3step1").game;
  Valuation v = vals({"1/2", "1", "0"});
  auto m = one_step_matrix(g, v, 0);
  CHECK(m.payoff == std::vector<std::vector<Rational>>{vals({"1", "0"}), vals({"1/4", "1"})});
  auto p = pre1(g, v);
  CHECK(p.values[0] == Rational(4, 7));
  CHECK(p.values[1] == 1);
  CHECK(p.witness.prob[0] == vals({"3/7", "4/7"}));
  CHECK(pre1_sel(g, v, 0, vals({"1/2", "1/2"})) == Rational(1, 2));
  CHECK(pre_sel_sel(g, v, 0, vals({"1/2", "1/2"}), vals({"1", "0"})) == Rational(5, 8));
}

TEST_CASE("k-uniform distributions") {
  auto d2 = k_uniform_distributions(2, 2);
  CHECK(d2 == std::vector<std::vector<Rational>>{vals({"0", "1"}), vals({"1", "0"}), vals({"1/2", "1/2"})});
  // 3 + 3 + 7 new compositions for l = 1, 2, 3
  CHECK(k_uniform_distributions(3, 3).size() == 13);
  CHECK(k_uniform_distributions(3, 4).size() == oracle::k_uniform(3, 4).size());
  CHECK_THROWS_AS(k_uniform_distributions(6, 30, 1000), EnumerationBudgetExceeded);
}

TEST_CASE("Pre1 restricted to k-uniform selectors") {
  auto g = fixture::bundled("ex3step1").game;
  Valuation v = vals({"1/2", "1", "0"});
  auto c2 = pre1_k_at(g, v, 0, 2);
  CHECK(c2.value == Rational(1, 2));
  CHECK(c2.distribution == vals({"1/2", "1/2"}));
  // 4/7 needs sevenths
  CHECK(pre1_k_at(g, v, 0, 6).value < Rational(4, 7));
  CHECK(pre1_k_at(g, v, 0, 7).value == Rational(4, 7));
  auto all = pre1_k(g, v, 7);
  CHECK(all.values == pre1(g, v).values);
}
