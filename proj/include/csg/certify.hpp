#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csg/game.hpp"
#include "csg/safety_si.hpp"

namespace csg {

enum class BracketStatus { Exact, EpsApprox, Capped };

std::string to_string(BracketStatus s);

// Player 1 can keep the play in F with probability >= v, player 2 can reach
// S \ F with probability >= u; the value lies in [v, 1 - u].
struct ValueBracket {
  Valuation v;
  Valuation u;
  Rational gap;  // max_s 1 - u(s) - v(s)
  BracketStatus status = BracketStatus::Capped;
  // 1: the u sequence stopped improving, 2: the v sequence certified itself,
  // 3: gap within eps, 0: capped
  int criterion = 0;
  std::size_t rounds = 0;
  std::size_t final_k = 0;

  Selector safety_strategy;  // player 1, attains v_witness
  Valuation v_witness;
  std::optional<Selector> reach_strategy;  // player 2 (absent with value iteration)
  Valuation u_witness;
  std::vector<Rational> gap_history;
};

struct CertifyOptions {
  std::size_t max_rounds = 50;
  bool reach_by_value_iteration = false;
  SafetySIOptions inner;
};

ValueBracket approximate_game_value(const GameStructure& g, const StateSet& safe, const Rational& eps,
                                    const CertifyOptions& opts = {});

struct DeterminacyReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<Rational> gaps;  // per round
};

// Runs both sequences for `rounds` rounds and checks u + v <= 1 with a
// non-increasing gap throughout.
DeterminacyReport check_determinacy_bracket(const GameStructure& g, const StateSet& safe, std::size_t rounds,
                                            const CertifyOptions& opts = {});

}  // namespace csg
