#include <doctest.h>

#include "properties.hpp"

TEST_CASE("structural properties on random games") {
  for (const auto& check : property::all_checks()) {
    CAPTURE(check.name);
    auto violations = check.run(check.seed, check.count);
    for (const auto& v : violations) MESSAGE(v);
    CHECK(violations.empty());
  }
}
