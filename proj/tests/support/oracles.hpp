#pragma once

// Reference implementations used only by the tests. They share the data
// types with the library but none of its algorithms: no simplex, no
// fixpoint iteration, just enumeration and Gaussian elimination.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "csg/game.hpp"
#include "csg/matrix_game.hpp"

namespace oracle {

using csg::Distribution;
using csg::GameStructure;
using csg::Rational;
using csg::Selector;
using csg::StateId;
using csg::StateSet;
using csg::Valuation;

using Chain = std::vector<Distribution>;
using Mdp = std::vector<std::vector<Distribution>>;

inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Probability of eventually visiting `target` in a Markov chain.
inline Valuation chain_reach(const Chain& chain, const StateSet& target) {
  const std::size_t n = chain.size();
  std::vector<bool> reach(n, false);
  for (StateId s = 0; s < n; ++s) reach[s] = target.contains(s);
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < n; ++s) {
      if (reach[s]) continue;
      for (const auto& t : chain[s])
        if (reach[t.target]) {
          reach[s] = changed = true;
          break;
        }
    }
  }
  std::vector<StateId> unknown;
  std::vector<std::size_t> col(n, 0);
  for (StateId s = 0; s < n; ++s)
    if (reach[s] && !target.contains(s)) col[s] = unknown.size(), unknown.push_back(s);
  Valuation out(n, Rational(0));
  for (StateId s = 0; s < n; ++s)
    if (target.contains(s)) out[s] = 1;
  if (unknown.empty()) return out;
  std::vector<std::vector<Rational>> a(unknown.size(), std::vector<Rational>(unknown.size(), Rational(0)));
  std::vector<Rational> b(unknown.size(), Rational(0));
  for (std::size_t i = 0; i < unknown.size(); ++i) {
    a[i][i] += 1;
    for (const auto& t : chain[unknown[i]]) {
      if (target.contains(t.target))
        b[i] += t.prob;
      else if (reach[t.target])
        a[i][col[t.target]] -= t.prob;
    }
  }
  auto x = solve_linear(a, b);
  if (!x) throw std::logic_error("oracle: singular chain system");
  for (std::size_t i = 0; i < unknown.size(); ++i) out[unknown[i]] = (*x)[i];
  return out;
}

// Calls f with every choice vector c where c[i] < sizes[i].
inline void for_each_profile(const std::vector<std::size_t>& sizes,
                             const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> c(sizes.size(), 0);
  for (;;) {
    f(c);
    std::size_t i = 0;
    while (i < sizes.size() && ++c[i] == sizes[i]) c[i++] = 0;
    if (i == sizes.size()) return;
  }
}

// Pointwise best over all pure memoryless policies.
inline Valuation mdp_reach_bruteforce(const Mdp& mdp, const StateSet& target, bool maximise) {
  std::vector<std::size_t> sizes;
  for (const auto& acts : mdp) sizes.push_back(acts.size());
  std::optional<Valuation> best;
  for_each_profile(sizes, [&](const std::vector<std::size_t>& c) {
    Chain chain;
    for (StateId s = 0; s < mdp.size(); ++s) chain.push_back(mdp[s][c[s]]);
    Valuation v = chain_reach(chain, target);
    if (!best) {
      best = v;
      return;
    }
    for (StateId s = 0; s < v.size(); ++s)
      (*best)[s] = maximise ? std::max((*best)[s], v[s]) : std::min((*best)[s], v[s]);
  });
  return *best;
}

inline Distribution mix(const std::vector<std::pair<Rational, const Distribution*>>& parts, std::size_t n) {
  std::vector<Rational> acc(n, Rational(0));
  for (const auto& [w, d] : parts)
    for (const auto& t : *d) acc[t.target] += w * t.prob;
  Distribution out;
  for (StateId t = 0; t < n; ++t)
    if (sgn(acc[t]) > 0) out.push_back({t, acc[t]});
  return out;
}

// Player-2 MDP for a fixed player-1 selector.
inline Mdp induced(const GameStructure& g, const Selector& xi1) {
  Mdp out(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s)
    for (std::size_t j = 0; j < g.num_moves2(s); ++j) {
      std::vector<std::pair<Rational, const Distribution*>> parts;
      for (std::size_t i = 0; i < g.num_moves1(s); ++i)
        if (sgn(xi1.prob[s][i]) > 0) parts.push_back({xi1.prob[s][i], &g.delta[s][i][j]});
      out[s].push_back(mix(parts, g.num_states()));
    }
  return out;
}

// Player-1 MDP for a fixed player-2 selector.
inline Mdp induced_by_player2(const GameStructure& g, const Selector& xi2) {
  Mdp out(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s)
    for (std::size_t i = 0; i < g.num_moves1(s); ++i) {
      std::vector<std::pair<Rational, const Distribution*>> parts;
      for (std::size_t j = 0; j < g.num_moves2(s); ++j)
        if (sgn(xi2.prob[s][j]) > 0) parts.push_back({xi2.prob[s][j], &g.delta[s][i][j]});
      out[s].push_back(mix(parts, g.num_states()));
    }
  return out;
}

inline Valuation complement_value(Valuation v) {
  for (auto& x : v) x = 1 - x;
  return v;
}

// Value of a player-1 selector for reaching `target` (player 2 minimises).
inline Valuation reach_value_of(const GameStructure& g, const Selector& xi1, const StateSet& target) {
  return mdp_reach_bruteforce(induced(g, xi1), target, false);
}

// Value of a player-1 selector for staying in `safe`.
inline Valuation safety_value_of(const GameStructure& g, const Selector& xi1, const StateSet& safe) {
  Mdp m = induced(g, xi1);
  // leaving F ends the play for the purpose of the objective
  for (StateId s : safe.complement().members())
    for (auto& d : m[s]) d = Distribution{{s, Rational(1)}};
  return complement_value(mdp_reach_bruteforce(m, safe.complement(), true));
}

// Maximin by support enumeration: every vertex of {(x, g) : x in simplex,
// g <= x.M[:,j]} is fixed by `rows` tight constraints among x_i >= 0 and
// g <= column j; the value is the largest g over feasible vertices.
inline Rational matrix_value(const csg::MatrixGame& m) {
  const std::size_t r = m.rows(), c = m.cols();
  std::optional<Rational> best;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (pick.size() == r) {
      // unknowns x_0..x_{r-1}, g
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      std::vector<Rational> ones(r + 1, Rational(1));
      ones[r] = 0;
      a.push_back(ones);
      b.push_back(1);
      for (std::size_t k : pick) {
        std::vector<Rational> row(r + 1, Rational(0));
        if (k < r) {
          row[k] = 1;
        } else {
          for (std::size_t i = 0; i < r; ++i) row[i] = m.payoff[i][k - r];
          row[r] = -1;
        }
        a.push_back(row);
        b.push_back(0);
      }
      auto sol = solve_linear(a, b);
      if (!sol) return;
      for (std::size_t i = 0; i < r; ++i)
        if (sgn((*sol)[i]) < 0) return;
      std::vector<Rational> x(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(r));
      const Rational& g = (*sol)[r];
      for (std::size_t j = 0; j < c; ++j)
        if (csg::column_payoff(m, x, j) < g) return;
      if (!best || g > *best) best = g;
      return;
    }
    for (std::size_t k = start; k < r + c; ++k) {
      pick.push_back(k);
      choose(k + 1);
      pick.pop_back();
    }
  };
  choose(0);
  return *best;
}

// Maximal end components by subset enumeration (small MDPs only).
inline std::vector<std::vector<StateId>> mecs_bruteforce(const Mdp& mdp) {
  const std::size_t n = mdp.size();
  std::vector<unsigned> ecs;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    auto in = [&](StateId s) { return (mask >> s) & 1u; };
    std::vector<std::vector<StateId>> succ(n);
    bool ok = true;
    for (StateId s = 0; s < n && ok; ++s) {
      if (!in(s)) continue;
      bool any = false;
      for (const auto& d : mdp[s]) {
        bool stays = std::all_of(d.begin(), d.end(), [&](const csg::Transition& t) { return in(t.target); });
        if (!stays) continue;
        any = true;
        for (const auto& t : d) succ[s].push_back(t.target);
      }
      ok = any;
    }
    if (!ok) continue;
    // strongly connected: every member reaches every member
    for (StateId s = 0; s < n && ok; ++s) {
      if (!in(s)) continue;
      std::vector<bool> seen(n, false);
      std::vector<StateId> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        StateId x = stack.back();
        stack.pop_back();
        for (StateId y : succ[x])
          if (!seen[y]) seen[y] = true, stack.push_back(y);
      }
      for (StateId t = 0; t < n; ++t)
        if (in(t) && !seen[t]) ok = false;
    }
    if (ok) ecs.push_back(mask);
  }
  std::vector<std::vector<StateId>> out;
  for (unsigned a : ecs) {
    bool maximal = std::none_of(ecs.begin(), ecs.end(), [&](unsigned b) { return b != a && (a & b) == a; });
    if (!maximal) continue;
    std::vector<StateId> states;
    for (StateId s = 0; s < n; ++s)
      if ((a >> s) & 1u) states.push_back(s);
    out.push_back(states);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct TurnBasedOracle {
  Valuation value;
  std::size_t player1_strategies = 0;
};

// max over pure player-1 strategies of the pointwise min over pure player-2
// strategies, each pair evaluated as a Markov chain.
inline TurnBasedOracle tb_reach_bruteforce(const csg::TurnBasedGame& tb, const StateSet& target) {
  const std::size_t n = tb.num_states();
  std::vector<std::size_t> p1_sizes(n, 1), p2_sizes(n, 1);
  for (StateId s = 0; s < n; ++s) {
    if (tb.owner[s] == csg::Owner::Player1) p1_sizes[s] = tb.edges[s].size();
    if (tb.owner[s] == csg::Owner::Player2) p2_sizes[s] = tb.edges[s].size();
  }
  TurnBasedOracle out;
  std::optional<Valuation> best;
  for_each_profile(p1_sizes, [&](const std::vector<std::size_t>& c1) {
    ++out.player1_strategies;
    std::optional<Valuation> worst;
    for_each_profile(p2_sizes, [&](const std::vector<std::size_t>& c2) {
      Chain chain(n);
      for (StateId s = 0; s < n; ++s) {
        switch (tb.owner[s]) {
          case csg::Owner::Player1:
            chain[s] = {{tb.edges[s][c1[s]], Rational(1)}};
            break;
          case csg::Owner::Player2:
            chain[s] = {{tb.edges[s][c2[s]], Rational(1)}};
            break;
          case csg::Owner::Random: {
            std::vector<Rational> acc(n, Rational(0));
            for (std::size_t k = 0; k < tb.edges[s].size(); ++k) acc[tb.edges[s][k]] += tb.prob[s][k];
            for (StateId t = 0; t < n; ++t)
              if (sgn(acc[t]) > 0) chain[s].push_back({t, acc[t]});
            break;
          }
        }
      }
      Valuation v = chain_reach(chain, target);
      if (!worst) {
        worst = v;
      } else {
        for (StateId s = 0; s < n; ++s) (*worst)[s] = std::min((*worst)[s], v[s]);
      }
    });
    if (!best) {
      best = worst;
    } else {
      for (StateId s = 0; s < n; ++s) (*best)[s] = std::max((*best)[s], (*worst)[s]);
    }
  });
  out.value = *best;
  return out;
}

// Distributions over m moves with all entries multiples of 1/l, l <= k.
inline std::vector<std::vector<Rational>> k_uniform(std::size_t m, std::size_t k) {
  std::set<std::vector<Rational>> seen;
  for (std::size_t l = 1; l <= k; ++l) {
    std::vector<std::size_t> sizes(m, l + 1);
    for_each_profile(sizes, [&](const std::vector<std::size_t>& c) {
      std::size_t sum = 0;
      for (auto x : c) sum += x;
      if (sum != l) return;
      std::vector<Rational> d;
      for (auto x : c) {
        Rational q(x, l);
        q.canonicalize();
        d.push_back(q);
      }
      seen.insert(d);
    });
  }
  return {seen.begin(), seen.end()};
}

// Pointwise best safety value over every k-uniform memoryless selector.
inline Valuation k_uniform_safety_bruteforce(const GameStructure& g, const StateSet& safe, std::size_t k) {
  const std::size_t n = g.num_states();
  std::vector<std::vector<std::vector<Rational>>> per_state(n);
  std::vector<std::size_t> sizes(n);
  for (StateId s = 0; s < n; ++s) {
    per_state[s] = k_uniform(g.num_moves1(s), k);
    sizes[s] = per_state[s].size();
  }
  std::optional<Valuation> best;
  for_each_profile(sizes, [&](const std::vector<std::size_t>& c) {
    Selector xi;
    xi.prob.resize(n);
    for (StateId s = 0; s < n; ++s) xi.prob[s] = per_state[s][c[s]];
    Valuation v = safety_value_of(g, xi, safe);
    if (!best) {
      best = v;
      return;
    }
    for (StateId s = 0; s < n; ++s) (*best)[s] = std::max((*best)[s], v[s]);
  });
  return *best;
}

// States where the uniform selector reaches `target` with probability 0
// against some pure player-2 selector.
inline StateSet zero_reach_under_uniform(const GameStructure& g, const StateSet& target) {
  Selector uni = csg::uniform_selector(g, 1);
  Valuation v = reach_value_of(g, uni, target);
  StateSet out(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s)
    if (sgn(v[s]) == 0) out.insert(s);
  return out;
}

}  // namespace oracle
