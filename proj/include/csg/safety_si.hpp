#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csg/game.hpp"
#include "csg/matrix_game.hpp"

namespace csg {

// A support/count pair (A, B) at a state together with a selector whose
// support is exactly A and whose optimal responses are exactly B.
struct SupportPair {
  StateId state = 0;
  std::vector<std::size_t> support;    // local player-1 moves
  std::vector<std::size_t> count_opt;  // local player-2 moves
  std::vector<Rational> witness;
};

// Feasibility of (A, B) against Pre1(v)(s), or against Pre1^k(v)(s) with
// k-uniform selectors only when k is given. Returns the witness selector.
std::optional<std::vector<Rational>> opt_sel_feasible(const GameStructure& g, const Valuation& v, StateId s,
                                                      const std::vector<std::size_t>& support,
                                                      const std::vector<std::size_t>& count_opt,
                                                      std::optional<std::size_t> k = std::nullopt,
                                                      std::size_t budget = kDefaultEnumerationBudget);

// All feasible pairs at s, smaller supports first.
std::vector<SupportPair> opt_sel_count(const GameStructure& g, const Valuation& v, StateId s,
                                       std::optional<std::size_t> k = std::nullopt,
                                       std::size_t budget = kDefaultEnumerationBudget);

struct TBNode {
  enum class Kind { State, Choice, Response };
  Kind kind = Kind::State;
  StateId state = 0;
  std::size_t pair = 0;  // index into TBReduction::pairs (Choice, Response)
  std::size_t move = 0;  // local player-2 move (Response)
};

// Player-1 states are the original states (same indices), followed by the
// player-2 nodes (s, A, B) each directly followed by its random nodes (s, A, b).
struct TBReduction {
  TurnBasedGame game;
  StateSet safe;
  std::vector<TBNode> back_map;
  std::vector<SupportPair> pairs;
};

TBReduction tb_reduction(const GameStructure& g, const Valuation& v, const StateSet& safe,
                         std::optional<std::size_t> k = std::nullopt,
                         std::size_t budget = kDefaultEnumerationBudget);

std::string tb_node_name(const GameStructure& g, const SupportPair& pair, std::optional<std::size_t> move);

// Safety instance with S \ F and W1 absorbing.
struct SafetyProblem {
  GameStructure original;
  GameStructure game;
  StateSet safe;
  StateSet unsafe;
  StateSet w1;
  std::vector<std::optional<std::size_t>> w1_moves;
};

SafetyProblem normalize_safety(const GameStructure& g, const StateSet& safe);

// Selector as played in the original game: W1 states use their safe move.
Selector full_strategy(const SafetyProblem& p, const Selector& gamma);

enum class SafetyStepKind { Initial, Local, NonLocal };

struct SafetySIState {
  std::size_t iteration = 0;
  Selector gamma;
  Valuation v;
  SafetyStepKind kind = SafetyStepKind::Initial;
  StateSet switched;
};

struct SafetyStepOptions {
  std::optional<std::size_t> k;  // k-uniform restriction
  std::size_t budget = kDefaultEnumerationBudget;
  bool pure = false;
};

SafetySIState initial_safety_state(const SafetyProblem& p);

// One iteration; nullopt when neither a local nor a non-local improvement exists.
std::optional<SafetySIState> safety_si_step(const SafetyProblem& p, const SafetySIState& cur,
                                            const SafetyStepOptions& opts = {});

struct SafetySIOptions {
  std::size_t max_iters = 1000;
  std::optional<bool> pure;  // nullopt: pure exactly for turn-based games
  std::size_t budget = kDefaultEnumerationBudget;
};

struct SafetySIResult {
  SafetyProblem problem;
  Selector strategy;  // full_strategy of the final iterate
  Valuation values;
  std::vector<Valuation> trace;
  std::vector<SafetyStepKind> kinds;
  std::size_t iterations = 0;
  std::size_t k = 0;  // 0 when unrestricted
  bool converged = false;
};

SafetySIResult run_safety_si(const GameStructure& g, const StateSet& safe, const SafetySIOptions& opts = {});

// k is raised to the number of distinct moves so the uniform start is k-uniform.
SafetySIResult run_k_uniform_si(const GameStructure& g, const StateSet& safe, std::size_t k,
                                const SafetySIOptions& opts = {});

struct ConvergentOptions {
  std::size_t max_outer = 50;
  std::optional<std::size_t> k0;
  std::optional<Valuation> upper;
  std::optional<Rational> gap;
  SafetySIOptions inner;
};

struct ConvergentRound {
  std::size_t k = 0;
  SafetySIResult inner;
  bool exact = false;  // unrestricted improvement check passed
};

class ConvergentSafetySI {
 public:
  ConvergentSafetySI(const GameStructure& g, const StateSet& safe, const ConvergentOptions& opts = {});

  // Runs one outer round; returns false once the exact value was certified.
  bool step();
  bool converged() const { return converged_; }
  const std::vector<ConvergentRound>& rounds() const { return rounds_; }
  std::size_t next_k() const { return k_; }

 private:
  GameStructure game_;
  StateSet safe_;
  ConvergentOptions opts_;
  std::size_t k_;
  bool converged_ = false;
  std::vector<ConvergentRound> rounds_;
};

struct ConvergentResult {
  std::vector<ConvergentRound> rounds;
  Selector strategy;
  Valuation values;
  bool converged = false;
  bool gap_reached = false;
};

ConvergentResult run_convergent_safety_si(const GameStructure& g, const StateSet& safe,
                                          const ConvergentOptions& opts = {});

// True when the unrestricted local check and non-local check find nothing.
bool safety_value_certified(const SafetyProblem& p, const Valuation& v);

struct Rounding {
  std::vector<Rational> distribution;
  std::size_t k = 0;  // every probability is a multiple of 1/k
};

// Rounds d up to multiples of 1/l and renormalises; every positive ratio
// b_i/a_i and a_i/b_i is at most 1 + eta.
Rounding round_to_k_uniform(const std::vector<Rational>& d, const Rational& eta);

bool is_k_uniform(const std::vector<Rational>& d, std::size_t k);

}  // namespace csg
