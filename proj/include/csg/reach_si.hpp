#pragma once

#include <optional>
#include <vector>

#include "csg/game.hpp"
#include "csg/value_iteration.hpp"

namespace csg {

struct ReachSIState {
  std::size_t iteration = 0;
  Selector gamma;
  Valuation v;
  StateSet improved;  // states switched by the step that produced this state
};

// One improvement: switch to a Pre1 witness wherever Pre1(v) > v strictly.
// Pure mode picks the first pure move with the best guaranteed payoff.
// Returns nullopt when no state can be improved.
std::optional<ReachSIState> improve_step_reach(const ReachProblem& p, const ReachSIState& cur, bool pure);

struct ReachSIOptions {
  std::size_t max_iters = 1000;
  std::optional<Valuation> upper;
  std::optional<Rational> gap;
  // nullopt: pure mode exactly when the game is turn-based
  std::optional<bool> pure;
};

class ReachStrategyImprovement {
 public:
  ReachStrategyImprovement(const GameStructure& g, const StateSet& target, std::optional<bool> pure = std::nullopt);
  // initial selector from the turn-based attractor of T and W2
  ReachStrategyImprovement(const TurnBasedGame& tb, const StateSet& target);

  const ReachProblem& problem() const { return problem_; }
  const ReachSIState& state() const { return state_; }
  bool pure() const { return pure_; }
  bool terminated() const { return terminated_; }
  // Returns false once no improvement exists.
  bool step();

 private:
  void start(Selector gamma);

  ReachProblem problem_;
  ReachSIState state_;
  bool pure_ = false;
  bool terminated_ = false;
};

struct ReachSIResult {
  ReachProblem problem;
  Selector strategy;
  Valuation values;
  std::vector<Valuation> trace;  // v_0 .. v_n
  std::size_t iterations = 0;
  bool converged = false;   // no improving state left: values are exact
  bool gap_reached = false;
};

ReachSIResult run_reach_si(const GameStructure& g, const StateSet& target, const ReachSIOptions& opts = {});
ReachSIResult run_reach_si_turn_based(const TurnBasedGame& tb, const StateSet& target,
                                      const ReachSIOptions& opts = {});

// Pure proper selector from the positive attractor of T and W2 in a
// turn-based concurrent game.
Selector attractor_selector(const GameStructure& g, const StateSet& base);

}  // namespace csg
