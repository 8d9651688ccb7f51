#include "csg/matrix_game.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "csg/lp.hpp"

namespace csg {

MatrixGame one_step_matrix(const GameStructure& g, const Valuation& v, StateId s) {
  MatrixGame m;
  m.payoff.assign(g.num_moves1(s), std::vector<Rational>(g.num_moves2(s), Rational(0)));
  for (std::size_t i = 0; i < g.num_moves1(s); ++i)
    for (std::size_t j = 0; j < g.num_moves2(s); ++j)
      for (const auto& t : g.delta[s][i][j]) m.payoff[i][j] += t.prob * v[t.target];
  return m;
}

MatrixSolution solve_matrix_game(const MatrixGame& m) {
  const std::size_t r = m.rows(), c = m.cols();
  MatrixSolution out;
  out.row_strategy.assign(r, Rational(0));
  out.col_strategy.assign(c, Rational(0));
  if (r == 1 || c == 1) {
    // one player has a single move: a pure optimum, first in move order
    std::size_t best = 0;
    if (r == 1) {
      for (std::size_t j = 1; j < c; ++j)
        if (m.payoff[0][j] < m.payoff[0][best]) best = j;
      out.value = m.payoff[0][best];
      out.row_strategy[0] = 1;
      out.col_strategy[best] = 1;
    } else {
      for (std::size_t i = 1; i < r; ++i)
        if (m.payoff[i][0] > m.payoff[best][0]) best = i;
      out.value = m.payoff[best][0];
      out.row_strategy[best] = 1;
      out.col_strategy[0] = 1;
    }
    return out;
  }

  Rational lo = m.payoff[0][0];
  for (const auto& row : m.payoff)
    for (const auto& x : row) lo = std::min(lo, x);
  const Rational shift = 1 - lo;  // shifted payoffs are >= 1

  // column player: max sum y s.t. M' y <= 1; the row strategy is the dual
  lp::Problem p;
  p.num_vars = c;
  p.objective.assign(c, Rational(1));
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rational> coeffs(c);
    for (std::size_t j = 0; j < c; ++j) coeffs[j] = m.payoff[i][j] + shift;
    p.add(std::move(coeffs), lp::Sense::LessEq, Rational(1));
  }
  lp::Solution sol = lp::solve(p);
  const Rational shifted_value = 1 / sol.value;
  out.value = shifted_value - shift;
  for (std::size_t j = 0; j < c; ++j) out.col_strategy[j] = sol.x[j] * shifted_value;
  for (std::size_t i = 0; i < r; ++i) out.row_strategy[i] = sol.duals[i] * shifted_value;
  return out;
}

Rational column_payoff(const MatrixGame& m, const std::vector<Rational>& row_mix, std::size_t j) {
  Rational acc = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (sgn(row_mix[i]) != 0) acc += row_mix[i] * m.payoff[i][j];
  return acc;
}

Rational guaranteed_payoff(const MatrixGame& m, const std::vector<Rational>& row_mix) {
  Rational best = column_payoff(m, row_mix, 0);
  for (std::size_t j = 1; j < m.cols(); ++j) best = std::min(best, column_payoff(m, row_mix, j));
  return best;
}

Rational pre_sel_sel(const GameStructure& g, const Valuation& v, StateId s,
                     const std::vector<Rational>& xi1, const std::vector<Rational>& xi2) {
  Rational acc = 0;
  for (std::size_t i = 0; i < g.num_moves1(s); ++i) {
    if (sgn(xi1[i]) == 0) continue;
    for (std::size_t j = 0; j < g.num_moves2(s); ++j) {
      if (sgn(xi2[j]) == 0) continue;
      Rational w = xi1[i] * xi2[j];
      for (const auto& t : g.delta[s][i][j]) acc += w * t.prob * v[t.target];
    }
  }
  return acc;
}

Rational pre1_sel(const GameStructure& g, const Valuation& v, StateId s, const std::vector<Rational>& xi1) {
  return guaranteed_payoff(one_step_matrix(g, v, s), xi1);
}

Valuation pre1_sel(const GameStructure& g, const Valuation& v, const Selector& xi1) {
  Valuation out(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s) out[s] = pre1_sel(g, v, s, xi1.prob[s]);
  return out;
}

Pre1Result pre1(const GameStructure& g, const Valuation& v) {
  Pre1Result out;
  out.values.resize(g.num_states());
  out.witness.player = 1;
  out.witness.prob.resize(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s) {
    MatrixSolution sol = solve_matrix_game(one_step_matrix(g, v, s));
    out.values[s] = sol.value;
    out.witness.prob[s] = std::move(sol.row_strategy);
  }
  return out;
}

namespace {

void compositions(std::size_t parts, std::size_t total, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t x = 0; x <= total; ++x) {
    cur.push_back(x);
    compositions(parts, total - x, cur, out);
    cur.pop_back();
  }
}

// binomial(n + m - 1, m - 1) capped at `cap`
std::size_t count_compositions(std::size_t m, std::size_t n, std::size_t cap) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n + m - 1, m - 1);
  return c > cap ? cap + 1 : c.get_ui();
}

}  // namespace

std::vector<std::vector<Rational>> k_uniform_distributions(std::size_t m, std::size_t k, std::size_t budget) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<Rational>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({m, k});
    if (it != cache.end()) {
      if (it->second.size() > budget) throw EnumerationBudgetExceeded("k-uniform enumeration budget exceeded");
      return it->second;
    }
  }
  std::size_t estimate = 0;
  for (std::size_t l = 1; l <= k; ++l) {
    estimate += count_compositions(m, l, budget);
    if (estimate > budget)
      throw EnumerationBudgetExceeded("k-uniform enumeration over " + std::to_string(m) + " moves with k=" +
                                      std::to_string(k) + " exceeds budget " + std::to_string(budget));
  }
  std::vector<std::vector<Rational>> out;
  std::set<std::vector<Rational>> seen;
  for (std::size_t l = 1; l <= k; ++l) {
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> cur;
    compositions(m, l, cur, comps);
    for (const auto& c : comps) {
      std::vector<Rational> d(m);
      for (std::size_t i = 0; i < m; ++i) d[i] = Rational(c[i], l), d[i].canonicalize();
      if (seen.insert(d).second) out.push_back(std::move(d));
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(m, k), out);
  return out;
}

KUniformChoice pre1_k_at(const GameStructure& g, const Valuation& v, StateId s, std::size_t k, std::size_t budget) {
  const MatrixGame m = one_step_matrix(g, v, s);
  KUniformChoice best;
  bool have = false;
  for (const auto& d : k_uniform_distributions(g.num_moves1(s), k, budget)) {
    Rational val = guaranteed_payoff(m, d);
    if (!have || val > best.value) {
      best.value = val;
      best.distribution = d;
      have = true;
    }
  }
  return best;
}

Pre1Result pre1_k(const GameStructure& g, const Valuation& v, std::size_t k, std::size_t budget) {
  Pre1Result out;
  out.values.resize(g.num_states());
  out.witness.player = 1;
  out.witness.prob.resize(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s) {
    KUniformChoice c = pre1_k_at(g, v, s, k, budget);
    out.values[s] = c.value;
    out.witness.prob[s] = std::move(c.distribution);
  }
  return out;
}

}  // namespace csg
