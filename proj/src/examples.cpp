#include "csg/examples.hpp"

#include <stdexcept>

namespace csg {

namespace {

const char* const kFig1 = R"({
  "type": "concurrent",
  "states": ["s0", "s1", "s2", "s3", "s4"],
  "moves1": {"s0": ["_"], "s1": ["_"], "s2": ["_"], "s3": ["a", "b"], "s4": ["_"]},
  "moves2": {"s0": ["_"], "s1": ["_"], "s2": ["_"], "s3": ["_"], "s4": ["_"]},
  "delta": {
    "s0": {"_": {"_": {"s0": "1"}}},
    "s1": {"_": {"_": {"s1": "1"}}},
    "s2": {"_": {"_": {"s0": "1/2", "s1": "1/2"}}},
    "s3": {"a": {"_": {"s4": "1"}}, "b": {"_": {"s2": "1"}}},
    "s4": {"_": {"_": {"s3": "1"}}}
  }
}
)";

const char* const kFig2 = R"({
  "type": "turn-based",
  "states": ["s0", "s1", "s2", "s3", "s4", "s5"],
  "partition": {"s0": "P1", "s1": "P2", "s2": "R", "s3": "R", "s4": "R", "s5": "R"},
  "edges": {
    "s0": ["s1", "s2"],
    "s1": ["s0", "s3"],
    "s2": ["s4", "s5"],
    "s3": ["s5", "s4"],
    "s4": ["s4"],
    "s5": ["s5"]
  },
  "prob": {
    "s2": {"s4": "2/3", "s5": "1/3"},
    "s3": {"s5": "2/3", "s4": "1/3"},
    "s4": {"s4": "1"},
    "s5": {"s5": "1"}
  }
}
)";

const char* const kEx3Step1 = R"({
  "type": "concurrent",
  "states": ["s0", "s1", "s2"],
  "moves1": {"s0": ["a", "b"], "s1": ["_"], "s2": ["_"]},
  "moves2": {"s0": ["c", "d"], "s1": ["_"], "s2": ["_"]},
  "delta": {
    "s0": {
      "a": {"c": {"s1": "1"}, "d": {"s2": "1"}},
      "b": {"c": {"s0": "1/2", "s2": "1/2"}, "d": {"s1": "1"}}
    },
    "s1": {"_": {"_": {"s1": "1"}}},
    "s2": {"_": {"_": {"s2": "1"}}}
  }
}
)";

const char* const kEx3Full = R"({
  "type": "concurrent",
  "states": ["s0", "s1", "s2", "s3", "s4", "s5"],
  "moves1": {"s0": ["a", "b"], "s1": ["_"], "s2": ["_"], "s3": ["a", "b"], "s4": ["_"], "s5": ["_"]},
  "moves2": {"s0": ["c", "d"], "s1": ["_"], "s2": ["_"], "s3": ["_"], "s4": ["c", "d"], "s5": ["_"]},
  "delta": {
    "s0": {
      "a": {"c": {"s1": "1"}, "d": {"s2": "1"}},
      "b": {"c": {"s0": "1/2", "s2": "1/2"}, "d": {"s1": "1"}}
    },
    "s1": {"_": {"_": {"s1": "1"}}},
    "s2": {"_": {"_": {"s2": "1"}}},
    "s3": {"a": {"_": {"s0": "1"}}, "b": {"_": {"s4": "1"}}},
    "s4": {"_": {"c": {"s3": "1"}, "d": {"s5": "1"}}},
    "s5": {"_": {"_": {"s1": "3/5", "s2": "2/5"}}}
  }
}
)";

}  // namespace

const std::vector<BundledExample>& bundled_examples() {
  static const std::vector<BundledExample> all{
      {"fig1", "one-player MDP, reach s0 with a choice at s3", "reach:s0", kFig1},
      {"fig2", "turn-based game, stay away from s4", "safe:not-s4", kFig2},
      {"ex3step1", "concurrent game with irrational value 2-sqrt(2) at s0", "safe:not-s2", kEx3Step1},
      {"ex3full", "ex3step1 extended by s3,s4,s5; safety at s3 needs a non-local switch", "safe:not-s2", kEx3Full},
  };
  return all;
}

const BundledExample& bundled_example(const std::string& name) {
  for (const auto& e : bundled_examples())
    if (e.name == name) return e;
  throw std::out_of_range("no bundled example named '" + name + "'");
}

}  // namespace csg
