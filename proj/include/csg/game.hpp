#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csg/rational.hpp"

namespace csg {

using StateId = std::size_t;
using MoveId = std::size_t;

struct Transition {
  StateId target;
  Rational prob;
  bool operator==(const Transition& o) const { return target == o.target && prob == o.prob; }
};

// Sparse distribution over states, sorted by target, strictly positive entries.
using Distribution = std::vector<Transition>;

using Valuation = std::vector<Rational>;

class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe, bool full = false) : bits_(universe, full) {}
  static StateSet of(std::size_t universe, const std::vector<StateId>& members);

  std::size_t universe() const { return bits_.size(); }
  bool contains(StateId s) const { return bits_[s]; }
  void insert(StateId s) { bits_[s] = true; }
  void erase(StateId s) { bits_[s] = false; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<StateId> members() const;

  StateSet complement() const;
  StateSet operator|(const StateSet& o) const;
  StateSet operator&(const StateSet& o) const;
  StateSet operator-(const StateSet& o) const;
  bool subset_of(const StateSet& o) const;
  bool operator==(const StateSet& o) const = default;

 private:
  std::vector<bool> bits_;
};

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Concurrent game with exact transition probabilities. Moves are global ids;
// delta is indexed by state and by the local positions of the two moves in
// moves1[s] and moves2[s].
struct GameStructure {
  std::vector<std::string> states;
  std::vector<std::string> moves;
  std::vector<std::vector<MoveId>> moves1;
  std::vector<std::vector<MoveId>> moves2;
  std::vector<std::vector<std::vector<Distribution>>> delta;

  std::size_t num_states() const { return states.size(); }
  std::size_t num_moves1(StateId s) const { return moves1[s].size(); }
  std::size_t num_moves2(StateId s) const { return moves2[s].size(); }
  const Distribution& transition(StateId s, std::size_t i, std::size_t j) const {
    return delta[s][i][j];
  }
  std::optional<StateId> find_state(const std::string& name) const;
};

// Throws GameError naming the offending (s, a, b).
void validate(const GameStructure& g);

// Per-state mixed choice for one player, indexed by local move position.
struct Selector {
  int player = 1;
  std::vector<std::vector<Rational>> prob;

  std::vector<std::size_t> support(StateId s) const;
  bool operator==(const Selector& o) const = default;
};

Selector uniform_selector(const GameStructure& g, int player);
Selector pure_selector(const GameStructure& g, int player, const std::vector<std::size_t>& choice);

StateSet indicator_set(const GameStructure& g, const std::vector<std::string>& names);
Valuation indicator(const StateSet& set);

// Every state in `keep` gets a probability-one self-loop under all move pairs.
GameStructure make_absorbing(const GameStructure& g, const StateSet& keep);

// Set-valued successor map under a local move pair.
std::vector<StateId> destinations(const GameStructure& g, StateId s, std::size_t i, std::size_t j);

// Union of destinations over i in `rows` against column j.
std::vector<StateId> destinations(const GameStructure& g, StateId s,
                                  const std::vector<std::size_t>& rows, std::size_t j);

// Value classes, ordered by value.
using ValueClassIndex = std::map<Rational, std::vector<StateId>>;
ValueClassIndex value_classes(const Valuation& v);

// Player-1 and player-2 roles exchanged; delta is transposed per state.
GameStructure swap_players(const GameStructure& g);

enum class Owner { Player1, Player2, Random };

struct TurnBasedGame {
  std::vector<std::string> states;
  std::vector<Owner> owner;
  std::vector<std::vector<StateId>> edges;
  std::vector<std::vector<Rational>> prob;  // aligned with edges; random states only

  std::size_t num_states() const { return states.size(); }
};

void validate(const TurnBasedGame& tb);

// Player-1 states get one move per edge named "to-<target>", the opponent
// the placeholder move "_"; random states use "_" for both players.
GameStructure encode_turn_based_as_concurrent(const TurnBasedGame& tb);

// True when every state has a single move for at least one player.
bool is_turn_based(const GameStructure& g);

// Recovers owners of a turn-based concurrent game: several player-1 moves
// mean Player1, several player-2 moves Player2, otherwise Random.
std::vector<Owner> turn_based_owner(const GameStructure& g);

std::string selector_choice_to_string(const GameStructure& g, const Selector& xi, StateId s);

}  // namespace csg
