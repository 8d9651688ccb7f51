#include "csg/value_iteration.hpp"

#include <stdexcept>

#include "csg/matrix_game.hpp"
#include "csg/mdp.hpp"

namespace csg {

ReachProblem normalize_reach(const GameStructure& g, const StateSet& target) {
  ReachProblem p;
  p.w2 = compute_W2(make_absorbing(g, target), target);
  p.target = target;
  p.game = make_absorbing(g, target | p.w2);
  return p;
}

Rational max_gap(const Valuation& upper, const Valuation& lower) {
  Rational best = 0;
  for (std::size_t s = 0; s < upper.size(); ++s) best = std::max(best, Rational(upper[s] - lower[s]));
  return best;
}

std::size_t ValueIterationTrace::entry_time(StateId s, std::size_t k) const {
  std::size_t l = k;
  while (l > 0 && values[l - 1][s] == values[k][s]) --l;
  return l;
}

ValueIterationTrace reach_value_iteration(const GameStructure& g, const StateSet& target, const StopRule& stop) {
  ValueIterationTrace trace;
  trace.problem = normalize_reach(g, target);
  trace.values.push_back(indicator(target));
  while (trace.steps() < stop.max_steps) {
    if (stop.upper && stop.gap && max_gap(*stop.upper, trace.values.back()) <= *stop.gap) break;
    Pre1Result next = pre1(trace.problem.game, trace.values.back());
    if (next.values == trace.values.back()) {
      trace.fixpoint = true;
      break;
    }
    trace.witnesses.push_back(std::move(next.witness));
    trace.values.push_back(std::move(next.values));
  }
  return trace;
}

Selector extract_eta_selector(const ValueIterationTrace& trace, std::size_t k) {
  if (k > trace.steps()) throw std::out_of_range("eta index beyond the recorded trace");
  Selector eta = uniform_selector(trace.problem.game, 1);
  for (StateId s = 0; s < trace.problem.game.num_states(); ++s) {
    std::size_t l = trace.entry_time(s, k);
    if (l > 0) eta.prob[s] = trace.witnesses[l - 1].prob[s];
  }
  return eta;
}

EtaCheck eta_is_value_achieving(const ValueIterationTrace& trace, std::size_t k) {
  if (k == 0) throw std::invalid_argument("eta check needs k >= 1");
  const ReachProblem& p = trace.problem;
  EtaCheck out;
  for (StateId s = 0; s < p.game.num_states(); ++s)
    if (!p.w2.contains(s) && sgn(trace.values[k - 1][s]) <= 0) out.hypothesis = false;
  Selector eta = extract_eta_selector(trace, k);
  ProperCheck pc = is_proper(p.game, eta, p.target, p.w2);
  out.proper = pc.proper;
  if (!pc.proper) {
    out.improper_witness = pc.witness;
    return out;
  }
  out.value = strategy_value_reach(p.game, eta, p.target, p.w2);
  out.achieves = true;
  for (StateId s = 0; s < p.game.num_states(); ++s)
    if (out.value[s] < trace.values[k - 1][s]) out.achieves = false;
  return out;
}

std::vector<StateId> value_class_progress_violations(const ValueIterationTrace& trace, std::size_t k) {
  const ReachProblem& p = trace.problem;
  const Valuation& u = trace.values[k];
  Selector eta = extract_eta_selector(trace, k);
  std::vector<StateId> out;
  for (StateId s = 0; s < p.game.num_states(); ++s) {
    if (p.target.contains(s) || p.w2.contains(s) || sgn(u[s]) <= 0) continue;
    const std::size_t ls = trace.entry_time(s, k);
    const auto rows = eta.support(s);
    bool ok = true;
    for (std::size_t j = 0; j < p.game.num_moves2(s) && ok; ++j) {
      bool higher = false, within = true, earlier = false;
      for (StateId t : destinations(p.game, s, rows, j)) {
        if (u[t] > u[s]) higher = true;
        if (u[t] != u[s]) within = false;
        if (u[t] == u[s] && trace.entry_time(t, k) < ls) earlier = true;
      }
      ok = higher || (within && earlier);
    }
    if (!ok) out.push_back(s);
  }
  return out;
}

std::vector<Valuation> safety_value_iteration_upper(const GameStructure& g, const StateSet& safe,
                                                    std::size_t max_steps) {
  const Valuation cap = indicator(safe);
  std::vector<Valuation> out{Valuation(g.num_states(), Rational(1))};
  for (std::size_t i = 0; i < max_steps; ++i) {
    Valuation next = pre1(g, out.back()).values;
    for (StateId s = 0; s < g.num_states(); ++s) next[s] = std::min(next[s], cap[s]);
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

Selector extract_optimal_safety_selector(const GameStructure& g, const Valuation& v, const StateSet& safe) {
  const GameStructure absorbing = make_absorbing(g, safe.complement());
  Pre1Result r = pre1(absorbing, v);
  for (StateId s = 0; s < g.num_states(); ++s) {
    if (!safe.contains(s) && sgn(v[s]) != 0)
      throw std::invalid_argument("valuation is positive at unsafe state " + g.states[s]);
    if (r.values[s] != v[s])
      throw std::invalid_argument("valuation is not a Pre1 fixpoint at state " + g.states[s] + " (Pre1 gives " +
                                  to_string(r.values[s]) + ", valuation has " + to_string(v[s]) + ")");
  }
  return r.witness;
}

}  // namespace csg
