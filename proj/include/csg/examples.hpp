#pragma once

#include <string>
#include <vector>

namespace csg {

struct BundledExample {
  std::string name;  // file stem, e.g. "fig1"
  std::string summary;
  std::string suggested_objective;
  std::string json;
};

const std::vector<BundledExample>& bundled_examples();
// Throws std::out_of_range for an unknown name.
const BundledExample& bundled_example(const std::string& name);

}  // namespace csg
