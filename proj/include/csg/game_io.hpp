#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "csg/game.hpp"

namespace csg {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedGame {
  GameStructure game;                      // concurrent form, always present
  std::optional<TurnBasedGame> turn_based;  // set when the input was turn-based
};

// Parses the JSON game format; failures throw InputError with a location.
ParsedGame parse_game(std::string_view text);
ParsedGame load_game(const std::string& path);

nlohmann::ordered_json game_to_json(const GameStructure& g);
nlohmann::ordered_json turn_based_to_json(const TurnBasedGame& tb);

// {"s0": "1/3", ...}; every state must be covered.
Valuation parse_valuation(const GameStructure& g, std::string_view text);

std::string read_file(const std::string& path);

}  // namespace csg
