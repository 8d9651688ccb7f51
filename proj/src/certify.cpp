#include "csg/certify.hpp"

#include <memory>

#include "csg/matrix_game.hpp"
#include "csg/reach_si.hpp"
#include "csg/value_iteration.hpp"

namespace csg {

std::string to_string(BracketStatus s) {
  switch (s) {
    case BracketStatus::Exact:
      return "exact";
    case BracketStatus::EpsApprox:
      return "eps-approx";
    case BracketStatus::Capped:
      return "capped";
  }
  return "capped";
}

namespace {

// Player 2's reachability sequence on the role-swapped game, by strategy
// improvement or by plain value iteration.
class ReachSide {
 public:
  ReachSide(const GameStructure& g, const StateSet& target, bool value_iteration) {
    GameStructure swapped = swap_players(g);
    if (value_iteration) {
      problem_ = normalize_reach(swapped, target);
      u_ = indicator(target);
    } else {
      si_ = std::make_unique<ReachStrategyImprovement>(swapped, target);
      u_ = si_->state().v;
    }
  }

  const Valuation& values() const { return u_; }
  std::optional<Selector> strategy() const {
    if (!si_) return std::nullopt;
    Selector xi = si_->state().gamma;
    xi.player = 2;
    return xi;
  }

  // false when the sequence has reached its fixpoint
  bool step() {
    if (si_) {
      bool moved = si_->step();
      u_ = si_->state().v;
      return moved;
    }
    Valuation next = pre1(problem_.game, u_).values;
    if (next == u_) return false;
    u_ = std::move(next);
    return true;
  }

 private:
  std::unique_ptr<ReachStrategyImprovement> si_;
  ReachProblem problem_;
  Valuation u_;
};

Rational bracket_gap(const Valuation& u, const Valuation& v) {
  Rational gap = 0;
  for (std::size_t s = 0; s < u.size(); ++s) gap = std::max(gap, Rational(1 - u[s] - v[s]));
  return gap;
}

struct Runner {
  Runner(const GameStructure& g, const StateSet& safe, const CertifyOptions& opts)
      : safety(g, safe, ConvergentOptions{opts.max_rounds, std::nullopt, std::nullopt, std::nullopt, opts.inner}),
        reach(g, safe.complement(), opts.reach_by_value_iteration) {
    out.u = out.u_witness = reach.values();
  }

  // One round: safety first, then reachability. Returns the criterion met.
  int round() {
    ++out.rounds;
    safety.step();
    const ConvergentRound& last = safety.rounds().back();
    out.v = out.v_witness = last.inner.values;
    out.safety_strategy = last.inner.strategy;
    out.final_k = last.k;
    if (safety.converged()) {
      out.u = out.v;
      for (auto& x : out.u) x = 1 - x;
      return 2;
    }
    bool moved = reach.step();
    out.u = out.u_witness = reach.values();
    out.reach_strategy = reach.strategy();
    if (!moved) {
      out.v = out.u;
      for (auto& x : out.v) x = 1 - x;
      return 1;
    }
    return 0;
  }

  ConvergentSafetySI safety;
  ReachSide reach;
  ValueBracket out;
};

}  // namespace

ValueBracket approximate_game_value(const GameStructure& g, const StateSet& safe, const Rational& eps,
                                    const CertifyOptions& opts) {
  Runner run(g, safe, opts);
  run.out.reach_strategy = run.reach.strategy();
  while (run.out.rounds < opts.max_rounds) {
    int crit = run.round();
    run.out.gap = bracket_gap(run.out.u, run.out.v);
    run.out.gap_history.push_back(run.out.gap);
    if (crit != 0) {
      run.out.status = BracketStatus::Exact;
      run.out.criterion = crit;
      return run.out;
    }
    if (run.out.gap <= eps) {
      run.out.status = BracketStatus::EpsApprox;
      run.out.criterion = 3;
      return run.out;
    }
  }
  run.out.status = BracketStatus::Capped;
  return run.out;
}

DeterminacyReport check_determinacy_bracket(const GameStructure& g, const StateSet& safe, std::size_t rounds,
                                            const CertifyOptions& opts) {
  DeterminacyReport rep;
  Runner run(g, safe, opts);
  for (std::size_t r = 1; r <= rounds; ++r) {
    int crit = run.round();
    const Valuation& u = run.out.u_witness;
    const Valuation& v = run.out.v_witness;
    for (StateId s = 0; s < g.num_states(); ++s)
      if (u[s] + v[s] > 1)
        rep.violations.push_back("round " + std::to_string(r) + ": u+v > 1 at " + g.states[s]);
    Rational gap = bracket_gap(run.out.u, run.out.v);
    if (!rep.gaps.empty() && gap > rep.gaps.back())
      rep.violations.push_back("round " + std::to_string(r) + ": gap increased");
    rep.gaps.push_back(gap);
    if (crit != 0) break;
  }
  rep.ok = rep.violations.empty();
  return rep;
}

}  // namespace csg
