#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "csg/game.hpp"

namespace csg {

// Player-2 MDP left after fixing a player-1 selector: delta[s][j].
struct InducedMDP {
  std::vector<std::vector<Distribution>> delta;

  std::size_t num_states() const { return delta.size(); }
};

InducedMDP induce_mdp(const GameStructure& g, const Selector& xi1);

struct EndComponent {
  std::vector<StateId> states;                   // sorted
  std::vector<std::vector<std::size_t>> actions;  // staying actions, aligned with states
};

// Maximal end components of the sub-MDP on `within` (all states by default).
std::vector<EndComponent> mec_decomposition(const InducedMDP& mdp);
std::vector<EndComponent> mec_decomposition(const InducedMDP& mdp, const StateSet& within);

// Largest probability player 2 can give to reaching `target`.
Valuation max_reach_values(const InducedMDP& mdp, const StateSet& target);
// Smallest probability player 2 can give to reaching `target`.
Valuation min_reach_values(const InducedMDP& mdp, const StateSet& target);

struct ProperCheck {
  bool proper = true;
  std::vector<StateId> witness;  // an end component avoiding T and W2, when improper
};

// Requires T and W2 absorbing in g.
ProperCheck is_proper(const GameStructure& g, const Selector& xi1, const StateSet& target, const StateSet& w2);

// States where player 1's reachability value is 0.
StateSet compute_W2(const GameStructure& g, const StateSet& target);

// States from which player 1 can stay in F with probability 1.
StateSet almost_sure_safe_concurrent(const GameStructure& g, const StateSet& safe);
// Per-state local move keeping every successor inside the winning set
// (defined on winning states only).
std::vector<std::optional<std::size_t>> almost_sure_safe_moves(const GameStructure& g, const StateSet& winning);

struct Attractor {
  std::vector<StateSet> levels;                  // A_0 = base, ..., fixpoint last
  std::vector<std::optional<std::size_t>> choice;  // player-1 edge index into a lower level
};

Attractor tb_attractor(const TurnBasedGame& tb, const StateSet& base);

struct TurnBasedSafety {
  StateSet winning;
  std::vector<std::optional<std::size_t>> choice;  // player-1 edge index staying in `winning`
};

TurnBasedSafety tb_almost_sure_safe(const TurnBasedGame& tb, const StateSet& safe);

class ImproperSelectorError : public std::runtime_error {
 public:
  ImproperSelectorError(const std::string& what, std::vector<StateId> witness)
      : std::runtime_error(what), witness(std::move(witness)) {}
  std::vector<StateId> witness;
};

// 1 - maxreach(G_xi, S \ F)
Valuation strategy_value_safety(const GameStructure& g, const Selector& xi1, const StateSet& safe);

// 1 - maxreach(G_xi, W2); requires T and W2 absorbing and xi1 proper.
Valuation strategy_value_reach(const GameStructure& g, const Selector& xi1, const StateSet& target,
                               const StateSet& w2);

}  // namespace csg
