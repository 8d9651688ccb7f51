#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csg/game.hpp"

namespace csg::cli {

enum class ObjectiveKind { Reach, Safe };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::Reach;
  StateSet set;  // target for reach, F for safe
};

// "reach:s0,s1", "safe:s0,s3" or the complement form "safe:not-s4".
// Throws InputError.
Objective parse_objective(const GameStructure& g, const std::string& text);

enum class Algorithm { ValueIteration, ReachSI, SafetySI, KUniform, Convergent, Certify };

struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::ValueIteration;
  std::optional<std::size_t> k;
  std::optional<Rational> eps;
};

// "vi", "reach-si", "safety-si", "k-uniform", "k-uniform:3", "convergent",
// "certify", "certify:1/100". Throws InputError.
AlgorithmSpec parse_algorithm(const std::string& text);

struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Entry point shared by the executable and the tests; args exclude argv[0].
CliResult run(const std::vector<std::string>& args);

}  // namespace csg::cli
