#pragma once

#include <vector>

#include "csg/rational.hpp"

namespace csg::lp {

enum class Sense { LessEq, GreaterEq, Equal };

struct Constraint {
  std::vector<Rational> coeffs;
  Sense sense;
  Rational rhs;
};

// maximize objective . x  subject to constraints, x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;

  void add(std::vector<Rational> coeffs, Sense sense, Rational rhs) {
    constraints.push_back({std::move(coeffs), sense, std::move(rhs)});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
  // One per constraint. Exact when no constraint was eliminated as redundant.
  std::vector<Rational> duals;
};

// Two-phase dense tableau simplex over exact rationals with Bland's rule.
Solution solve(const Problem& problem);

}  // namespace csg::lp
