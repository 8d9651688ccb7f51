#include "csg/reach_si.hpp"

#include <stdexcept>

#include "csg/matrix_game.hpp"
#include "csg/mdp.hpp"

namespace csg {

std::optional<ReachSIState> improve_step_reach(const ReachProblem& p, const ReachSIState& cur, bool pure) {
  const GameStructure& g = p.game;
  ReachSIState next;
  next.iteration = cur.iteration + 1;
  next.gamma = cur.gamma;
  next.improved = StateSet(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s) {
    if (p.target.contains(s) || p.w2.contains(s)) continue;
    MatrixGame m = one_step_matrix(g, cur.v, s);
    MatrixSolution sol = solve_matrix_game(m);
    if (sol.value <= cur.v[s]) continue;
    next.improved.insert(s);
    if (pure) {
      std::size_t best = 0;
      Rational best_val;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational val = m.payoff[i][0];
        for (std::size_t j = 1; j < m.cols(); ++j) val = std::min(val, m.payoff[i][j]);
        if (i == 0 || val > best_val) best = i, best_val = val;
      }
      next.gamma.prob[s].assign(m.rows(), Rational(0));
      next.gamma.prob[s][best] = 1;
    } else {
      next.gamma.prob[s] = std::move(sol.row_strategy);
    }
  }
  if (next.improved.empty()) return std::nullopt;
  next.v = strategy_value_reach(g, next.gamma, p.target, p.w2);
  return next;
}

Selector attractor_selector(const GameStructure& g, const StateSet& base) {
  std::vector<std::size_t> choice(g.num_states(), 0);
  StateSet reached = base;
  for (bool changed = true; changed;) {
    changed = false;
    StateSet next = reached;
    for (StateId s = 0; s < g.num_states(); ++s) {
      if (reached.contains(s)) continue;
      for (std::size_t i = 0; i < g.num_moves1(s); ++i) {
        bool every = true;
        for (std::size_t j = 0; j < g.num_moves2(s) && every; ++j) {
          bool hit = false;
          for (const auto& t : g.delta[s][i][j]) hit = hit || reached.contains(t.target);
          every = hit;
        }
        if (every) {
          choice[s] = i;
          next.insert(s);
          changed = true;
          break;
        }
      }
    }
    reached = next;
  }
  if (reached.count() != g.num_states()) throw std::logic_error("attractor does not cover the game");
  return pure_selector(g, 1, choice);
}

ReachStrategyImprovement::ReachStrategyImprovement(const GameStructure& g, const StateSet& target,
                                                   std::optional<bool> pure)
    : problem_(normalize_reach(g, target)), pure_(pure.value_or(is_turn_based(g))) {
  start(pure_ ? attractor_selector(problem_.game, problem_.target | problem_.w2)
              : uniform_selector(problem_.game, 1));
}

ReachStrategyImprovement::ReachStrategyImprovement(const TurnBasedGame& tb, const StateSet& target)
    : problem_(normalize_reach(encode_turn_based_as_concurrent(tb), target)), pure_(true) {
  Attractor attr = tb_attractor(tb, problem_.target | problem_.w2);
  std::vector<std::size_t> choice(tb.num_states(), 0);
  for (StateId s = 0; s < tb.num_states(); ++s) {
    if (!attr.levels.back().contains(s)) throw std::logic_error("attractor does not cover the game");
    if (attr.choice[s]) choice[s] = *attr.choice[s];
  }
  start(pure_selector(problem_.game, 1, choice));
}

void ReachStrategyImprovement::start(Selector gamma) {
  state_.iteration = 0;
  state_.gamma = std::move(gamma);
  state_.improved = StateSet(problem_.game.num_states());
  state_.v = strategy_value_reach(problem_.game, state_.gamma, problem_.target, problem_.w2);
}

bool ReachStrategyImprovement::step() {
  if (terminated_) return false;
  auto next = improve_step_reach(problem_, state_, pure_);
  if (!next) {
    terminated_ = true;
    return false;
  }
  state_ = std::move(*next);
  return true;
}

namespace {

ReachSIResult drive(ReachStrategyImprovement& si, const ReachSIOptions& opts) {
  ReachSIResult out;
  out.trace.push_back(si.state().v);
  for (;;) {
    if (opts.upper && opts.gap && max_gap(*opts.upper, si.state().v) <= *opts.gap) {
      out.gap_reached = true;
      break;
    }
    if (si.state().iteration >= opts.max_iters) break;
    if (!si.step()) {
      out.converged = true;
      break;
    }
    out.trace.push_back(si.state().v);
  }
  out.problem = si.problem();
  out.strategy = si.state().gamma;
  out.values = si.state().v;
  out.iterations = si.state().iteration;
  return out;
}

}  // namespace

ReachSIResult run_reach_si(const GameStructure& g, const StateSet& target, const ReachSIOptions& opts) {
  ReachStrategyImprovement si(g, target, opts.pure);
  return drive(si, opts);
}

ReachSIResult run_reach_si_turn_based(const TurnBasedGame& tb, const StateSet& target, const ReachSIOptions& opts) {
  ReachStrategyImprovement si(tb, target);
  return drive(si, opts);
}

}  // namespace csg
