#include "csg/mdp.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "csg/lp.hpp"

namespace csg {

InducedMDP induce_mdp(const GameStructure& g, const Selector& xi1) {
  InducedMDP mdp;
  mdp.delta.resize(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s) {
    for (std::size_t j = 0; j < g.num_moves2(s); ++j) {
      std::map<StateId, Rational> acc;
      for (std::size_t i = 0; i < g.num_moves1(s); ++i) {
        const Rational& w = xi1.prob[s][i];
        if (sgn(w) == 0) continue;
        for (const auto& t : g.delta[s][i][j]) acc[t.target] += w * t.prob;
      }
      Distribution d;
      for (auto& [t, p] : acc) d.push_back({t, p});
      mdp.delta[s].push_back(std::move(d));
    }
  }
  return mdp;
}

namespace {

bool support_within(const Distribution& d, const StateSet& set) {
  return std::all_of(d.begin(), d.end(), [&](const Transition& t) { return set.contains(t.target); });
}

// Tarjan over the graph given by `succ`; returns component id per vertex
// (only for vertices in `active`).
std::vector<std::size_t> scc_ids(std::size_t n, const StateSet& active,
                                 const std::function<void(StateId, std::vector<StateId>&)>& succ) {
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, none), low(n, 0), comp(n, none);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::size_t counter = 0, comps = 0;
  std::function<void(StateId)> visit = [&](StateId v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    std::vector<StateId> next;
    succ(v, next);
    for (StateId w : next) {
      if (!active.contains(w)) continue;
      if (index[w] == none) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      for (;;) {
        StateId w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
        if (w == v) break;
      }
      ++comps;
    }
  };
  for (StateId v = 0; v < n; ++v)
    if (active.contains(v) && index[v] == none) visit(v);
  return comp;
}

}  // namespace

std::vector<EndComponent> mec_decomposition(const InducedMDP& mdp) {
  return mec_decomposition(mdp, StateSet(mdp.num_states(), true));
}

std::vector<EndComponent> mec_decomposition(const InducedMDP& mdp, const StateSet& within) {
  const std::size_t n = mdp.num_states();
  StateSet active = within;
  std::vector<std::vector<std::size_t>> actions(n);
  for (StateId s : active.members())
    for (std::size_t j = 0; j < mdp.delta[s].size(); ++j)
      if (support_within(mdp.delta[s][j], active)) actions[s].push_back(j);

  std::vector<std::size_t> comp;
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s : active.members())
      if (actions[s].empty()) {
        active.erase(s);
        changed = true;
      }
    comp = scc_ids(n, active, [&](StateId s, std::vector<StateId>& out) {
      for (std::size_t j : actions[s])
        for (const auto& t : mdp.delta[s][j]) out.push_back(t.target);
    });
    for (StateId s : active.members()) {
      auto& acts = actions[s];
      auto keep = [&](std::size_t j) {
        return std::all_of(mdp.delta[s][j].begin(), mdp.delta[s][j].end(), [&](const Transition& t) {
          return active.contains(t.target) && comp[t.target] == comp[s];
        });
      };
      auto it = std::stable_partition(acts.begin(), acts.end(), keep);
      if (it != acts.end()) {
        acts.erase(it, acts.end());
        changed = true;
      }
    }
  }

  std::map<std::size_t, EndComponent> by_comp;
  for (StateId s : active.members()) {
    EndComponent& ec = by_comp[comp[s]];
    ec.states.push_back(s);
    ec.actions.push_back(actions[s]);
  }
  std::vector<EndComponent> out;
  for (auto& [_, ec] : by_comp) out.push_back(std::move(ec));
  std::sort(out.begin(), out.end(),
            [](const EndComponent& a, const EndComponent& b) { return a.states.front() < b.states.front(); });
  return out;
}

namespace {

// States with a path to `target` under some action choice.
StateSet can_reach(const InducedMDP& mdp, const StateSet& target) {
  StateSet reach = target;
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < mdp.num_states(); ++s) {
      if (reach.contains(s)) continue;
      for (const auto& d : mdp.delta[s]) {
        if (std::any_of(d.begin(), d.end(), [&](const Transition& t) { return reach.contains(t.target); })) {
          reach.insert(s);
          changed = true;
          break;
        }
      }
    }
  }
  return reach;
}

// Solves the reachability LP over the unknown states. `maximise_reach`
// selects least super-solution (max reach) or greatest sub-solution (min reach).
Valuation reach_lp(const InducedMDP& mdp, const StateSet& target, const StateSet& unknown, bool maximise_reach) {
  const std::size_t n = mdp.num_states();
  Valuation out = indicator(target);
  std::vector<StateId> vars = unknown.members();
  if (vars.empty()) return out;
  std::vector<std::size_t> col(n, 0);
  for (std::size_t k = 0; k < vars.size(); ++k) col[vars[k]] = k;

  lp::Problem p;
  p.num_vars = vars.size();
  p.objective.assign(vars.size(), Rational(maximise_reach ? -1 : 1));
  for (std::size_t k = 0; k < vars.size(); ++k) {
    StateId s = vars[k];
    for (const auto& d : mdp.delta[s]) {
      std::vector<Rational> coeffs(vars.size(), Rational(0));
      coeffs[k] += 1;
      Rational rhs = 0;
      for (const auto& t : d) {
        if (target.contains(t.target))
          rhs += t.prob;
        else if (unknown.contains(t.target))
          coeffs[col[t.target]] -= t.prob;
      }
      p.add(std::move(coeffs), maximise_reach ? lp::Sense::GreaterEq : lp::Sense::LessEq, rhs);
    }
    std::vector<Rational> bound(vars.size(), Rational(0));
    bound[k] = 1;
    p.add(std::move(bound), lp::Sense::LessEq, Rational(1));
  }
  lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal) throw std::logic_error("reachability LP not optimal");
  for (std::size_t k = 0; k < vars.size(); ++k) out[vars[k]] = sol.x[k];
  return out;
}

}  // namespace

Valuation max_reach_values(const InducedMDP& mdp, const StateSet& target) {
  StateSet unknown = can_reach(mdp, target) - target;
  return reach_lp(mdp, target, unknown, true);
}

Valuation min_reach_values(const InducedMDP& mdp, const StateSet& target) {
  // zero set: player 2 can keep the play outside target forever
  StateSet zero = target.complement();
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s : zero.members()) {
      bool stay = std::any_of(mdp.delta[s].begin(), mdp.delta[s].end(),
                              [&](const Distribution& d) { return support_within(d, zero); });
      if (!stay) {
        zero.erase(s);
        changed = true;
      }
    }
  }
  StateSet unknown = target.complement() - zero;
  return reach_lp(mdp, target, unknown, false);
}

ProperCheck is_proper(const GameStructure& g, const Selector& xi1, const StateSet& target, const StateSet& w2) {
  ProperCheck out;
  auto mecs = mec_decomposition(induce_mdp(g, xi1), (target | w2).complement());
  if (!mecs.empty()) {
    out.proper = false;
    out.witness = mecs.front().states;
  }
  return out;
}

StateSet compute_W2(const GameStructure& g, const StateSet& target) {
  StateSet w = target.complement();
  for (bool changed = true; changed;) {
    changed = false;
    StateSet next(g.num_states());
    for (StateId s : w.members()) {
      for (std::size_t j = 0; j < g.num_moves2(s); ++j) {
        bool trapped = true;
        for (std::size_t i = 0; i < g.num_moves1(s) && trapped; ++i)
          trapped = support_within(g.delta[s][i][j], w);
        if (trapped) {
          next.insert(s);
          break;
        }
      }
    }
    if (!(next == w)) {
      w = next;
      changed = true;
    }
  }
  return w;
}

namespace {

std::optional<std::size_t> safe_move(const GameStructure& g, StateId s, const StateSet& x) {
  for (std::size_t i = 0; i < g.num_moves1(s); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < g.num_moves2(s) && ok; ++j) ok = support_within(g.delta[s][i][j], x);
    if (ok) return i;
  }
  return std::nullopt;
}

}  // namespace

StateSet almost_sure_safe_concurrent(const GameStructure& g, const StateSet& safe) {
  StateSet x = safe;
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s : x.members())
      if (!safe_move(g, s, x)) {
        x.erase(s);
        changed = true;
      }
  }
  return x;
}

std::vector<std::optional<std::size_t>> almost_sure_safe_moves(const GameStructure& g, const StateSet& winning) {
  std::vector<std::optional<std::size_t>> out(g.num_states());
  for (StateId s : winning.members()) out[s] = safe_move(g, s, winning);
  return out;
}

Attractor tb_attractor(const TurnBasedGame& tb, const StateSet& base) {
  Attractor out;
  out.choice.assign(tb.num_states(), std::nullopt);
  out.levels.push_back(base);
  for (;;) {
    const StateSet& cur = out.levels.back();
    StateSet next = cur;
    for (StateId s = 0; s < tb.num_states(); ++s) {
      if (cur.contains(s)) continue;
      const auto& e = tb.edges[s];
      if (tb.owner[s] == Owner::Player2) {
        if (std::all_of(e.begin(), e.end(), [&](StateId t) { return cur.contains(t); })) next.insert(s);
      } else {
        for (std::size_t k = 0; k < e.size(); ++k) {
          if (!cur.contains(e[k])) continue;
          next.insert(s);
          if (tb.owner[s] == Owner::Player1) out.choice[s] = k;
          break;
        }
      }
    }
    if (next == cur) break;
    out.levels.push_back(std::move(next));
  }
  return out;
}

TurnBasedSafety tb_almost_sure_safe(const TurnBasedGame& tb, const StateSet& safe) {
  StateSet x = safe;
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s : x.members()) {
      const auto& e = tb.edges[s];
      bool keep = tb.owner[s] == Owner::Player1
                      ? std::any_of(e.begin(), e.end(), [&](StateId t) { return x.contains(t); })
                      : std::all_of(e.begin(), e.end(), [&](StateId t) { return x.contains(t); });
      if (!keep) {
        x.erase(s);
        changed = true;
      }
    }
  }
  TurnBasedSafety out;
  out.choice.assign(tb.num_states(), std::nullopt);
  for (StateId s : x.members()) {
    if (tb.owner[s] != Owner::Player1) continue;
    for (std::size_t k = 0; k < tb.edges[s].size(); ++k)
      if (x.contains(tb.edges[s][k])) {
        out.choice[s] = k;
        break;
      }
  }
  out.winning = std::move(x);
  return out;
}

Valuation strategy_value_safety(const GameStructure& g, const Selector& xi1, const StateSet& safe) {
  Valuation reach = max_reach_values(induce_mdp(g, xi1), safe.complement());
  for (auto& x : reach) x = 1 - x;
  return reach;
}

Valuation strategy_value_reach(const GameStructure& g, const Selector& xi1, const StateSet& target,
                               const StateSet& w2) {
  ProperCheck pc = is_proper(g, xi1, target, w2);
  if (!pc.proper) {
    std::string names;
    for (StateId s : pc.witness) names += (names.empty() ? "" : ", ") + g.states[s];
    throw ImproperSelectorError("selector is not proper: end component {" + names + "} avoids T and W2",
                                pc.witness);
  }
  Valuation reach = max_reach_values(induce_mdp(g, xi1), w2);
  for (auto& x : reach) x = 1 - x;
  return reach;
}

}  // namespace csg
