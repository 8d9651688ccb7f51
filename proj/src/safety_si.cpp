#include "csg/safety_si.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

#include "csg/lp.hpp"
#include "csg/mdp.hpp"
#include "csg/value_iteration.hpp"

namespace csg {

namespace {

// Non-empty subsets of {0..m-1} ordered by size, then by bitmask.
std::vector<std::vector<std::size_t>> ordered_subsets(std::size_t m) {
  std::vector<unsigned> masks;
  for (unsigned mask = 1; mask < (1u << m); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask : masks) {
    std::vector<std::size_t> set;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) set.push_back(i);
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<std::size_t> argmin_columns(const MatrixGame& m, const std::vector<Rational>& d, const Rational& target) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (column_payoff(m, d, j) == target) out.push_back(j);
  return out;
}

std::vector<std::size_t> support_of(const std::vector<Rational>& d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (sgn(d[i]) > 0) out.push_back(i);
  return out;
}

Rational k_target(const MatrixGame& m, const std::vector<std::vector<Rational>>& dists) {
  Rational best = guaranteed_payoff(m, dists.front());
  for (const auto& d : dists) best = std::max(best, guaranteed_payoff(m, d));
  return best;
}

std::optional<std::vector<Rational>> slack_lp(const MatrixGame& m, const Rational& target,
                                              const std::vector<std::size_t>& support,
                                              const std::vector<std::size_t>& count_opt) {
  const std::size_t na = support.size();
  const std::size_t nv = na + 1;  // xi over support, then slack t
  std::vector<bool> in_b(m.cols(), false);
  for (std::size_t j : count_opt) in_b[j] = true;
  lp::Problem p;
  p.num_vars = nv;
  p.objective.assign(nv, Rational(0));
  p.objective[na] = 1;
  std::vector<Rational> sum(nv, Rational(1));
  sum[na] = 0;
  p.add(sum, lp::Sense::Equal, Rational(1));
  for (std::size_t k = 0; k < na; ++k) {
    std::vector<Rational> c(nv, Rational(0));
    c[k] = 1;
    c[na] = -1;
    p.add(std::move(c), lp::Sense::GreaterEq, Rational(0));
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<Rational> c(nv, Rational(0));
    for (std::size_t k = 0; k < na; ++k) c[k] = m.payoff[support[k]][j];
    if (in_b[j]) {
      p.add(std::move(c), lp::Sense::Equal, target);
    } else {
      c[na] = -1;
      p.add(std::move(c), lp::Sense::GreaterEq, target);
    }
  }
  lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal || sgn(sol.value) <= 0) return std::nullopt;
  std::vector<Rational> xi(m.rows(), Rational(0));
  for (std::size_t k = 0; k < na; ++k) xi[support[k]] = sol.x[k];
  return xi;
}

bool rows_can_reach(const MatrixGame& m, const std::vector<std::size_t>& rows, const Rational& target) {
  MatrixGame sub;
  for (std::size_t i : rows) sub.payoff.push_back(m.payoff[i]);
  return solve_matrix_game(sub).value >= target;
}

}  // namespace

std::optional<std::vector<Rational>> opt_sel_feasible(const GameStructure& g, const Valuation& v, StateId s,
                                                      const std::vector<std::size_t>& support,
                                                      const std::vector<std::size_t>& count_opt,
                                                      std::optional<std::size_t> k, std::size_t budget) {
  if (support.empty() || count_opt.empty()) return std::nullopt;
  const MatrixGame m = one_step_matrix(g, v, s);
  if (!k) return slack_lp(m, solve_matrix_game(m).value, support, count_opt);
  const auto dists = k_uniform_distributions(g.num_moves1(s), *k, budget);
  const Rational target = k_target(m, dists);
  for (const auto& d : dists) {
    if (support_of(d) != support || guaranteed_payoff(m, d) != target) continue;
    if (argmin_columns(m, d, target) == count_opt) return d;
  }
  return std::nullopt;
}

std::vector<SupportPair> opt_sel_count(const GameStructure& g, const Valuation& v, StateId s,
                                       std::optional<std::size_t> k, std::size_t budget) {
  const MatrixGame m = one_step_matrix(g, v, s);
  const auto rows = ordered_subsets(g.num_moves1(s));
  const auto cols = ordered_subsets(g.num_moves2(s));
  std::vector<SupportPair> out;
  if (!k) {
    const Rational target = solve_matrix_game(m).value;
    for (const auto& a : rows) {
      if (!rows_can_reach(m, a, target)) continue;
      for (const auto& b : cols)
        if (auto xi = slack_lp(m, target, a, b)) out.push_back({s, a, b, std::move(*xi)});
    }
    return out;
  }
  const auto dists = k_uniform_distributions(g.num_moves1(s), *k, budget);
  const Rational target = k_target(m, dists);
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, std::vector<Rational>> found;
  for (const auto& d : dists)
    if (guaranteed_payoff(m, d) == target) found.try_emplace({support_of(d), argmin_columns(m, d, target)}, d);
  for (const auto& a : rows)
    for (const auto& b : cols)
      if (auto it = found.find({a, b}); it != found.end()) out.push_back({s, a, b, it->second});
  return out;
}

std::string tb_node_name(const GameStructure& g, const SupportPair& pair, std::optional<std::size_t> move) {
  auto join = [&](const std::vector<std::size_t>& locals, const std::vector<MoveId>& ids) {
    std::string out;
    for (std::size_t i : locals) out += (out.empty() ? "" : ",") + g.moves[ids[i]];
    return out;
  };
  std::string out = "(" + g.states[pair.state] + ",{" + join(pair.support, g.moves1[pair.state]) + "},";
  if (move)
    out += g.moves[g.moves2[pair.state][*move]];
  else
    out += "{" + join(pair.count_opt, g.moves2[pair.state]) + "}";
  return out + ")";
}

TBReduction tb_reduction(const GameStructure& g, const Valuation& v, const StateSet& safe,
                         std::optional<std::size_t> k, std::size_t budget) {
  TBReduction r;
  const std::size_t n = g.num_states();
  TurnBasedGame& tb = r.game;
  auto add_node = [&](std::string name, Owner owner, TBNode node) {
    tb.states.push_back(std::move(name));
    tb.owner.push_back(owner);
    tb.edges.emplace_back();
    tb.prob.emplace_back();
    r.back_map.push_back(node);
    return tb.states.size() - 1;
  };
  for (StateId s = 0; s < n; ++s) add_node(g.states[s], Owner::Player1, {TBNode::Kind::State, s, 0, 0});
  for (StateId s = 0; s < n; ++s) {
    for (auto& pair : opt_sel_count(g, v, s, k, budget)) {
      const std::size_t pi = r.pairs.size();
      r.pairs.push_back(pair);
      const SupportPair& p = r.pairs.back();
      std::size_t choice = add_node(tb_node_name(g, p, std::nullopt), Owner::Player2, {TBNode::Kind::Choice, s, pi, 0});
      tb.edges[s].push_back(choice);
      for (std::size_t b : p.count_opt) {
        std::size_t resp = add_node(tb_node_name(g, p, b), Owner::Random, {TBNode::Kind::Response, s, pi, b});
        tb.edges[choice].push_back(resp);
        const auto dest = destinations(g, s, p.support, b);
        tb.edges[resp] = dest;
        tb.prob[resp].assign(dest.size(), Rational(1, dest.size()));
      }
    }
  }
  r.safe = StateSet(tb.num_states());
  for (std::size_t x = 0; x < tb.num_states(); ++x)
    if (safe.contains(r.back_map[x].state)) r.safe.insert(x);
  return r;
}

SafetyProblem normalize_safety(const GameStructure& g, const StateSet& safe) {
  SafetyProblem p;
  p.original = g;
  p.safe = safe;
  p.unsafe = safe.complement();
  p.w1 = almost_sure_safe_concurrent(g, safe);
  p.w1_moves = almost_sure_safe_moves(g, p.w1);
  p.game = make_absorbing(g, p.unsafe | p.w1);
  return p;
}

Selector full_strategy(const SafetyProblem& p, const Selector& gamma) {
  Selector out = gamma;
  for (StateId s : p.w1.members()) {
    out.prob[s].assign(p.game.num_moves1(s), Rational(0));
    out.prob[s][*p.w1_moves[s]] = 1;
  }
  return out;
}

SafetySIState initial_safety_state(const SafetyProblem& p) {
  SafetySIState st;
  st.gamma = uniform_selector(p.game, 1);
  st.v = strategy_value_safety(p.game, st.gamma, p.safe);
  st.switched = StateSet(p.game.num_states());
  return st;
}

namespace {

std::size_t best_pure_row(const MatrixGame& m) {
  std::size_t best = 0;
  Rational best_val;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational val = m.payoff[i][0];
    for (std::size_t j = 1; j < m.cols(); ++j) val = std::min(val, m.payoff[i][j]);
    if (i == 0 || val > best_val) best = i, best_val = val;
  }
  return best;
}

// States of (A-bar intersected with S) \ W1 together with the pair chosen there.
std::vector<std::pair<StateId, const SupportPair*>> nonlocal_switches(const SafetyProblem& p, const TBReduction& r) {
  TurnBasedSafety win = tb_almost_sure_safe(r.game, r.safe);
  std::vector<std::pair<StateId, const SupportPair*>> out;
  for (StateId s = 0; s < p.game.num_states(); ++s) {
    if (!win.winning.contains(s) || p.w1.contains(s)) continue;
    const TBNode& node = r.back_map[r.game.edges[s][*win.choice[s]]];
    out.emplace_back(s, &r.pairs[node.pair]);
  }
  return out;
}

}  // namespace

std::optional<SafetySIState> safety_si_step(const SafetyProblem& p, const SafetySIState& cur,
                                            const SafetyStepOptions& opts) {
  const GameStructure& g = p.game;
  SafetySIState next;
  next.iteration = cur.iteration + 1;
  next.gamma = cur.gamma;
  next.switched = StateSet(g.num_states());
  const StateSet frozen = p.w1 | p.unsafe;

  for (StateId s = 0; s < g.num_states(); ++s) {
    if (frozen.contains(s)) continue;
    const MatrixGame m = one_step_matrix(g, cur.v, s);
    if (opts.pure) {
      const std::size_t i = best_pure_row(m);
      std::vector<Rational> d(m.rows(), Rational(0));
      d[i] = 1;
      if (guaranteed_payoff(m, d) <= cur.v[s]) continue;
      next.gamma.prob[s] = std::move(d);
    } else if (opts.k) {
      KUniformChoice c = pre1_k_at(g, cur.v, s, *opts.k, opts.budget);
      if (c.value <= cur.v[s]) continue;
      next.gamma.prob[s] = std::move(c.distribution);
    } else {
      MatrixSolution sol = solve_matrix_game(m);
      if (sol.value <= cur.v[s]) continue;
      next.gamma.prob[s] = std::move(sol.row_strategy);
    }
    next.switched.insert(s);
  }

  if (!next.switched.empty()) {
    next.kind = SafetyStepKind::Local;
  } else {
    const TBReduction r = tb_reduction(g, cur.v, p.safe, opts.k, opts.budget);
    const auto switches = nonlocal_switches(p, r);
    if (switches.empty()) return std::nullopt;
    for (const auto& [s, pair] : switches) {
      next.gamma.prob[s] = pair->witness;
      next.switched.insert(s);
    }
    next.kind = SafetyStepKind::NonLocal;
  }
  next.v = strategy_value_safety(g, next.gamma, p.safe);
  return next;
}

namespace {

std::size_t distinct_moves(const GameStructure& g) { return g.moves.size(); }

SafetySIResult drive_safety(const GameStructure& g, const StateSet& safe, const SafetySIOptions& opts,
                            std::optional<std::size_t> k) {
  SafetySIResult out;
  out.problem = normalize_safety(g, safe);
  SafetyStepOptions step_opts;
  step_opts.k = k;
  step_opts.budget = opts.budget;
  step_opts.pure = opts.pure.value_or(is_turn_based(g));
  SafetySIState st = initial_safety_state(out.problem);
  out.trace.push_back(st.v);
  out.kinds.push_back(st.kind);
  while (st.iteration < opts.max_iters) {
    auto next = safety_si_step(out.problem, st, step_opts);
    if (!next) {
      out.converged = true;
      break;
    }
    st = std::move(*next);
    out.trace.push_back(st.v);
    out.kinds.push_back(st.kind);
  }
  out.strategy = full_strategy(out.problem, st.gamma);
  out.values = st.v;
  out.iterations = st.iteration;
  out.k = k.value_or(0);
  return out;
}

}  // namespace

SafetySIResult run_safety_si(const GameStructure& g, const StateSet& safe, const SafetySIOptions& opts) {
  return drive_safety(g, safe, opts, std::nullopt);
}

SafetySIResult run_k_uniform_si(const GameStructure& g, const StateSet& safe, std::size_t k,
                                const SafetySIOptions& opts) {
  return drive_safety(g, safe, opts, std::max(k, distinct_moves(g)));
}

bool safety_value_certified(const SafetyProblem& p, const Valuation& v) {
  const StateSet frozen = p.w1 | p.unsafe;
  for (StateId s = 0; s < p.game.num_states(); ++s)
    if (!frozen.contains(s) && solve_matrix_game(one_step_matrix(p.game, v, s)).value > v[s]) return false;
  return nonlocal_switches(p, tb_reduction(p.game, v, p.safe)).empty();
}

ConvergentSafetySI::ConvergentSafetySI(const GameStructure& g, const StateSet& safe, const ConvergentOptions& opts)
    : game_(g), safe_(safe), opts_(opts), k_(std::max(opts.k0.value_or(0), distinct_moves(g))) {}

bool ConvergentSafetySI::step() {
  if (converged_) return false;
  ConvergentRound round;
  round.inner = run_k_uniform_si(game_, safe_, k_, opts_.inner);
  round.k = round.inner.k;
  round.exact = round.inner.converged && safety_value_certified(round.inner.problem, round.inner.values);
  k_ = round.k + 1;
  converged_ = round.exact;
  rounds_.push_back(std::move(round));
  return !converged_;
}

ConvergentResult run_convergent_safety_si(const GameStructure& g, const StateSet& safe,
                                          const ConvergentOptions& opts) {
  ConvergentSafetySI si(g, safe, opts);
  ConvergentResult out;
  while (si.rounds().size() < opts.max_outer) {
    bool more = si.step();
    const auto& last = si.rounds().back().inner;
    if (!more) break;
    if (opts.upper && opts.gap && max_gap(*opts.upper, last.values) <= *opts.gap) {
      out.gap_reached = true;
      break;
    }
  }
  out.rounds = si.rounds();
  out.converged = si.converged();
  if (!out.rounds.empty()) {
    out.strategy = out.rounds.back().inner.strategy;
    out.values = out.rounds.back().inner.values;
  }
  return out;
}

Rounding round_to_k_uniform(const std::vector<Rational>& d, const Rational& eta) {
  if (sgn(eta) <= 0) throw std::invalid_argument("rounding tolerance must be positive");
  std::size_t m = 0;
  Rational c = 1;
  for (const auto& a : d)
    if (sgn(a) > 0) ++m, c = std::min(c, a);
  if (m == 0) throw std::invalid_argument("distribution has empty support");
  // l = ceil(m / (eta c))
  Rational ratio = Rational(m) / (eta * c);
  mpz_class l;
  mpz_cdiv_q(l.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
  std::vector<mpz_class> up(d.size());
  mpz_class total = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (sgn(d[i]) <= 0) continue;
    Rational scaled = d[i] * Rational(l);
    mpz_cdiv_q(up[i].get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    total += up[i];
  }
  Rounding out;
  out.distribution.assign(d.size(), Rational(0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    out.distribution[i] = Rational(up[i], total);
    out.distribution[i].canonicalize();
  }
  if (!total.fits_ulong_p()) throw std::overflow_error("rounding denominator too large");
  out.k = total.get_ui();
  return out;
}

bool is_k_uniform(const std::vector<Rational>& d, std::size_t k) {
  mpz_class l = 1;
  for (const auto& x : d) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l <= k;
}

}  // namespace csg
