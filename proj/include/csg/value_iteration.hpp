#pragma once

#include <optional>
#include <vector>

#include "csg/game.hpp"

namespace csg {

// Reachability instance with T and W2 made absorbing.
struct ReachProblem {
  GameStructure game;
  StateSet target;
  StateSet w2;
};

ReachProblem normalize_reach(const GameStructure& g, const StateSet& target);

struct StopRule {
  std::size_t max_steps = 1000;
  // stop once max_s (upper(s) - u(s)) <= gap
  std::optional<Valuation> upper;
  std::optional<Rational> gap;
};

struct ValueIterationTrace {
  ReachProblem problem;
  std::vector<Valuation> values;    // u_0 .. u_n
  std::vector<Selector> witnesses;  // witnesses[j] attains u_{j+1} from u_j
  bool fixpoint = false;            // Pre1(u_n) == u_n was observed

  std::size_t steps() const { return values.size() - 1; }
  // least j <= k with u_j(s) == u_k(s)
  std::size_t entry_time(StateId s, std::size_t k) const;
};

ValueIterationTrace reach_value_iteration(const GameStructure& g, const StateSet& target,
                                          const StopRule& stop = {});

// Per state, the witness recorded when its current value first appeared;
// the uniform move where the value has not changed since u_0.
Selector extract_eta_selector(const ValueIterationTrace& trace, std::size_t k);

struct EtaCheck {
  bool hypothesis = true;  // u_{k-1} > 0 outside W2
  bool proper = false;
  bool achieves = false;   // value of eta_k >= u_{k-1} pointwise
  Valuation value;         // empty when not proper
  std::vector<StateId> improper_witness;
};

// Requires k >= 1.
EtaCheck eta_is_value_achieving(const ValueIterationTrace& trace, std::size_t k);

// States of positive value off T and W2 whose eta_k-move fails to either
// reach a higher value class or stay in class while meeting an earlier entry.
std::vector<StateId> value_class_progress_violations(const ValueIterationTrace& trace, std::size_t k);

// w_0 = 1, w_{i+1} = min([F], Pre1(w_i)) until a fixpoint or max_steps.
std::vector<Valuation> safety_value_iteration_upper(const GameStructure& g, const StateSet& safe,
                                                    std::size_t max_steps = 1000);

// Requires v to be a fixpoint of Pre1 with S \ F absorbing; throws
// std::invalid_argument naming the first state where that fails.
Selector extract_optimal_safety_selector(const GameStructure& g, const Valuation& v, const StateSet& safe);

Rational max_gap(const Valuation& upper, const Valuation& lower);

}  // namespace csg
