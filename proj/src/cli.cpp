#include "csg/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "csg/certify.hpp"
#include "csg/examples.hpp"
#include "csg/game_io.hpp"
#include "csg/matrix_game.hpp"
#include "csg/mdp.hpp"
#include "csg/reach_si.hpp"
#include "csg/safety_si.hpp"
#include "csg/value_iteration.hpp"

namespace csg::cli {

using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCapped = 2;
constexpr int kExitVerify = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string set_to_string(const GameStructure& g, const StateSet& set) {
  std::string out;
  for (StateId s : set.members()) out += (out.empty() ? "" : ",") + g.states[s];
  return "{" + out + "}";
}

}  // namespace

Objective parse_objective(const GameStructure& g, const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("objective '" + text + "': expected reach:<states> or safe:<states>");
  std::string kind = text.substr(0, colon);
  Objective obj;
  if (kind == "reach")
    obj.kind = ObjectiveKind::Reach;
  else if (kind == "safe")
    obj.kind = ObjectiveKind::Safe;
  else
    throw InputError("objective '" + text + "': unknown kind '" + kind + "'");
  auto tokens = split(text.substr(colon + 1), ',');
  if (tokens.empty()) throw InputError("objective '" + text + "': no states given");
  bool negated = false, plain = false;
  StateSet named(g.num_states());
  for (const auto& tok : tokens) {
    std::string name = tok;
    if (!g.find_state(tok) && tok.rfind("not-", 0) == 0) {
      negated = true;
      name = tok.substr(4);
    } else {
      plain = true;
    }
    auto s = g.find_state(name);
    if (!s) throw InputError("objective '" + text + "': unknown state '" + name + "'");
    named.insert(*s);
  }
  if (negated && plain) throw InputError("objective '" + text + "': cannot mix not- and plain states");
  obj.set = negated ? named.complement() : named;
  return obj;
}

AlgorithmSpec parse_algorithm(const std::string& text) {
  AlgorithmSpec spec;
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  std::optional<std::string> arg;
  if (colon != std::string::npos) arg = text.substr(colon + 1);
  auto bad = [&](const std::string& why) { return InputError("algorithm '" + text + "': " + why); };
  if (name == "vi")
    spec.algorithm = Algorithm::ValueIteration;
  else if (name == "reach-si")
    spec.algorithm = Algorithm::ReachSI;
  else if (name == "safety-si")
    spec.algorithm = Algorithm::SafetySI;
  else if (name == "k-uniform")
    spec.algorithm = Algorithm::KUniform;
  else if (name == "convergent")
    spec.algorithm = Algorithm::Convergent;
  else if (name == "certify")
    spec.algorithm = Algorithm::Certify;
  else
    throw bad("unknown algorithm");
  if (arg) {
    if (spec.algorithm == Algorithm::KUniform) {
      try {
        std::size_t pos = 0;
        unsigned long k = std::stoul(*arg, &pos);
        if (pos != arg->size() || k == 0) throw bad("k must be a positive integer");
        spec.k = k;
      } catch (const std::logic_error&) {
        throw bad("k must be a positive integer");
      }
    } else if (spec.algorithm == Algorithm::Certify) {
      try {
        spec.eps = parse_rational(*arg);
      } catch (const std::invalid_argument& e) {
        throw bad(e.what());
      }
    } else {
      throw bad("takes no parameter");
    }
  }
  return spec;
}

namespace {

struct SolveOptions {
  std::string path;
  std::string objective;
  std::string algorithm = "vi";
  std::optional<std::size_t> max_iters;
  std::optional<std::string> eps;
  std::optional<std::size_t> k;
  bool verify = false;
  bool trace = false;
  std::string format = "text";
};

struct Report {
  const GameStructure* game = nullptr;
  std::string path, objective, algorithm;
  std::string status;
  std::size_t iterations = 0;
  std::optional<std::size_t> k;
  Valuation values;
  std::string values_label = "value";
  std::optional<Selector> strategy;
  std::optional<Valuation> witness_values;
  // certify only
  std::optional<Valuation> reach_values;
  std::optional<Selector> reach_strategy;
  std::optional<Valuation> reach_witness;
  std::optional<Rational> gap;
  std::optional<int> criterion;
  std::vector<std::pair<std::string, Valuation>> trace;
  std::vector<std::string> notes;
  std::vector<std::string> verify_lines;
  bool verify_ok = true;
};

void print_valuation(std::ostream& out, const GameStructure& g, const Valuation& v, const std::string& indent) {
  std::size_t width = 0;
  for (const auto& s : g.states) width = std::max(width, s.size());
  for (StateId s = 0; s < g.num_states(); ++s) {
    std::string name = g.states[s];
    name.resize(width, ' ');
    out << indent << name << "  " << to_string(v[s]) << "  (approx " << to_decimal(v[s]) << ")\n";
  }
}

void print_strategy(std::ostream& out, const GameStructure& g, const Selector& xi, const std::string& indent) {
  std::size_t width = 0;
  for (const auto& s : g.states) width = std::max(width, s.size());
  for (StateId s = 0; s < g.num_states(); ++s) {
    std::string name = g.states[s];
    name.resize(width, ' ');
    out << indent << name << "  " << selector_choice_to_string(g, xi, s) << "\n";
  }
}

ojson valuation_json(const GameStructure& g, const Valuation& v) {
  ojson out = ojson::object();
  for (StateId s = 0; s < g.num_states(); ++s)
    out[g.states[s]] = ojson{{"exact", to_string(v[s])}, {"approx", to_decimal(v[s])}};
  return out;
}

ojson strategy_json(const GameStructure& g, const Selector& xi) {
  ojson out = ojson::object();
  for (StateId s = 0; s < g.num_states(); ++s) {
    const auto& moves = xi.player == 1 ? g.moves1[s] : g.moves2[s];
    ojson row = ojson::object();
    for (std::size_t i = 0; i < moves.size(); ++i)
      if (sgn(xi.prob[s][i]) > 0) row[g.moves[moves[i]]] = to_string(xi.prob[s][i]);
    out[g.states[s]] = row;
  }
  return out;
}

std::string render_text(const Report& r) {
  const GameStructure& g = *r.game;
  std::ostringstream out;
  out << "game: " << r.path << "\n";
  out << "objective: " << r.objective << "\n";
  out << "algorithm: " << r.algorithm << "\n";
  out << "status: " << r.status << "\n";
  out << "iterations: " << r.iterations << "\n";
  if (r.k) out << "k: " << *r.k << "\n";
  if (r.gap) out << "gap: " << to_string(*r.gap) << "  (approx " << to_decimal(*r.gap) << ")\n";
  if (r.criterion) out << "criterion: " << *r.criterion << "\n";
  out << r.values_label << " (exact, approx):\n";
  print_valuation(out, g, r.values, "  ");
  if (r.strategy) {
    out << "strategy (player 1):\n";
    print_strategy(out, g, *r.strategy, "  ");
  }
  if (r.witness_values && *r.witness_values != r.values) {
    out << "strategy value:\n";
    print_valuation(out, g, *r.witness_values, "  ");
  }
  if (r.reach_values) {
    out << "player-2 reach lower bound:\n";
    print_valuation(out, g, *r.reach_values, "  ");
  }
  if (r.reach_strategy) {
    out << "strategy (player 2):\n";
    print_strategy(out, g, *r.reach_strategy, "  ");
  }
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  if (!r.trace.empty()) {
    out << "trace:\n";
    for (const auto& [label, v] : r.trace) {
      out << "  " << label << ":";
      for (StateId s = 0; s < g.num_states(); ++s) out << " " << g.states[s] << "=" << to_string(v[s]);
      out << "\n";
    }
  }
  for (const auto& line : r.verify_lines) out << "verify: " << line << "\n";
  return out.str();
}

std::string render_json(const Report& r) {
  const GameStructure& g = *r.game;
  ojson doc;
  doc["game"] = r.path;
  doc["objective"] = r.objective;
  doc["algorithm"] = r.algorithm;
  doc["status"] = r.status;
  doc["iterations"] = r.iterations;
  if (r.k) doc["k"] = *r.k;
  if (r.gap) doc["gap"] = ojson{{"exact", to_string(*r.gap)}, {"approx", to_decimal(*r.gap)}};
  if (r.criterion) doc["criterion"] = *r.criterion;
  doc["values"] = valuation_json(g, r.values);
  if (r.strategy) doc["strategy"] = strategy_json(g, *r.strategy);
  if (r.witness_values) doc["strategy_values"] = valuation_json(g, *r.witness_values);
  if (r.reach_values) doc["reach_lower"] = valuation_json(g, *r.reach_values);
  if (r.reach_strategy) doc["reach_strategy"] = strategy_json(g, *r.reach_strategy);
  if (r.reach_witness) doc["reach_strategy_values"] = valuation_json(g, *r.reach_witness);
  if (!r.notes.empty()) doc["notes"] = r.notes;
  if (!r.trace.empty()) {
    ojson t = ojson::array();
    for (const auto& [label, v] : r.trace) {
      ojson step = ojson::object();
      step["step"] = label;
      ojson vals = ojson::object();
      for (StateId s = 0; s < g.num_states(); ++s) vals[g.states[s]] = to_string(v[s]);
      step["values"] = vals;
      t.push_back(step);
    }
    doc["trace"] = t;
  }
  if (!r.verify_lines.empty()) {
    doc["verify"] = ojson{{"ok", r.verify_ok}, {"checks", r.verify_lines}};
  }
  return doc.dump(2) + "\n";
}

// Player-1 reach strategy value, recomputed as player 2's minimum reach
// probability in the induced MDP of the original game.
Valuation reach_strategy_value(const GameStructure& g, const StateSet& target, const Selector& xi) {
  return min_reach_values(induce_mdp(make_absorbing(g, target), xi), target);
}

Valuation safety_strategy_value(const GameStructure& g, const StateSet& safe, const Selector& xi) {
  Valuation r = max_reach_values(induce_mdp(make_absorbing(g, safe.complement()), xi), safe.complement());
  for (auto& x : r) x = 1 - x;
  return r;
}

// Player-2 strategy for reaching S \ F, evaluated against player 1's best reply.
Valuation opponent_reach_value(const GameStructure& g, const StateSet& safe, const Selector& xi2) {
  Selector as_first = xi2;
  as_first.player = 1;
  const StateSet unsafe = safe.complement();
  return min_reach_values(induce_mdp(make_absorbing(swap_players(g), unsafe), as_first), unsafe);
}

void check_equal(Report& r, const std::string& what, const Valuation& claimed, const Valuation& recomputed) {
  bool ok = claimed == recomputed;
  std::string line = what + (ok ? ": exact agreement" : ": MISMATCH");
  if (!ok)
    for (StateId s = 0; s < claimed.size(); ++s)
      if (claimed[s] != recomputed[s])
        line += " [" + r.game->states[s] + ": reported " + to_string(claimed[s]) + ", recomputed " +
                to_string(recomputed[s]) + "]";
  r.verify_ok = r.verify_ok && ok;
  r.verify_lines.push_back(line);
}

void add_trace(Report& r, const std::vector<Valuation>& vs, const std::string& prefix) {
  for (std::size_t i = 0; i < vs.size(); ++i) r.trace.emplace_back(prefix + std::to_string(i), vs[i]);
}

Report solve(const ParsedGame& parsed, const SolveOptions& o) {
  const GameStructure& g = parsed.game;
  Report r;
  r.game = &g;
  r.path = o.path;
  r.algorithm = o.algorithm;
  Objective obj = parse_objective(g, o.objective);
  r.objective = std::string(obj.kind == ObjectiveKind::Reach ? "reach " : "safe ") + set_to_string(g, obj.set);
  AlgorithmSpec spec = parse_algorithm(o.algorithm);
  if (o.k) spec.k = *o.k;
  if (o.eps) {
    try {
      spec.eps = parse_rational(*o.eps);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--eps: ") + e.what());
    }
  }
  const bool reach = obj.kind == ObjectiveKind::Reach;
  auto need = [&](bool want_reach) {
    if (want_reach != reach)
      throw InputError("algorithm " + o.algorithm + " needs a " + (want_reach ? "reach:" : "safe:") + " objective");
  };

  switch (spec.algorithm) {
    case Algorithm::ValueIteration: {
      if (reach) {
        StopRule stop;
        stop.max_steps = o.max_iters.value_or(1000);
        ValueIterationTrace t = reach_value_iteration(g, obj.set, stop);
        r.values = t.values.back();
        r.iterations = t.steps();
        r.status = t.fixpoint ? "exact" : "capped";
        r.values_label = t.fixpoint ? "value" : "lower bound";
        const std::size_t n = t.steps();
        Selector eta = n == 0 ? uniform_selector(t.problem.game, 1) : extract_eta_selector(t, n);
        ProperCheck pc = is_proper(t.problem.game, eta, t.problem.target, t.problem.w2);
        if (pc.proper) {
          r.strategy = eta;
          r.witness_values = strategy_value_reach(t.problem.game, eta, t.problem.target, t.problem.w2);
        } else {
          r.notes.push_back("eta selector at the last step is not proper; no witness reported");
        }
        if (o.trace) add_trace(r, t.values, "u");
        if (o.verify && r.strategy) {
          check_equal(r, "strategy value", *r.witness_values, reach_strategy_value(g, obj.set, *r.strategy));
          if (t.fixpoint) check_equal(r, "value vs strategy value", r.values, *r.witness_values);
        } else if (o.verify) {
          r.verify_lines.push_back("no proper witness strategy; nothing to recompute");
        }
      } else {
        const std::size_t cap = o.max_iters.value_or(1000);
        auto ws = safety_value_iteration_upper(g, obj.set, cap);
        r.values = ws.back();
        r.iterations = ws.size() - 1;
        Valuation again = pre1(g, r.values).values;
        for (StateId s = 0; s < g.num_states(); ++s)
          if (!obj.set.contains(s)) again[s] = 0;
        bool fix = again == r.values;
        r.status = fix ? "exact" : "capped";
        r.values_label = fix ? "value" : "upper bound";
        if (fix) {
          r.strategy = extract_optimal_safety_selector(g, r.values, obj.set);
          r.witness_values = strategy_value_safety(g, *r.strategy, obj.set);
          if (*r.witness_values != r.values)
            r.notes.push_back("greatest fixpoint witness does not attain the fixpoint");
        }
        if (o.trace) add_trace(r, ws, "w");
        if (o.verify && r.strategy) {
          check_equal(r, "strategy value", *r.witness_values, safety_strategy_value(g, obj.set, *r.strategy));
          check_equal(r, "value vs strategy value", r.values, *r.witness_values);
        } else if (o.verify) {
          r.verify_lines.push_back("no witness strategy for an upper bound; nothing to recompute");
        }
      }
      break;
    }
    case Algorithm::ReachSI: {
      need(true);
      ReachSIOptions opts;
      opts.max_iters = o.max_iters.value_or(1000);
      ReachSIResult res = parsed.turn_based ? run_reach_si_turn_based(*parsed.turn_based, obj.set, opts)
                                            : run_reach_si(g, obj.set, opts);
      r.values = res.values;
      r.iterations = res.iterations;
      r.status = res.converged ? "exact" : "capped";
      r.values_label = res.converged ? "value" : "lower bound";
      r.strategy = res.strategy;
      if (o.trace) add_trace(r, res.trace, "v");
      if (o.verify) check_equal(r, "strategy value", r.values, reach_strategy_value(g, obj.set, res.strategy));
      break;
    }
    case Algorithm::SafetySI:
    case Algorithm::KUniform: {
      need(false);
      SafetySIOptions opts;
      opts.max_iters = o.max_iters.value_or(1000);
      SafetySIResult res = spec.algorithm == Algorithm::SafetySI
                               ? run_safety_si(g, obj.set, opts)
                               : run_k_uniform_si(g, obj.set, spec.k.value_or(g.moves.size()), opts);
      r.values = res.values;
      r.iterations = res.iterations;
      if (spec.algorithm == Algorithm::KUniform) {
        r.k = res.k;
        r.status = res.converged ? "k-optimal" : "capped";
        r.values_label = "lower bound";
        if (res.converged) r.notes.push_back("values are optimal among k-uniform memoryless strategies");
      } else {
        r.status = res.converged ? "exact" : "capped";
        r.values_label = res.converged ? "value" : "lower bound";
      }
      r.strategy = res.strategy;
      if (o.trace) add_trace(r, res.trace, "v");
      if (o.verify) check_equal(r, "strategy value", r.values, safety_strategy_value(g, obj.set, res.strategy));
      break;
    }
    case Algorithm::Convergent: {
      need(false);
      ConvergentOptions opts;
      opts.max_outer = o.max_iters.value_or(50);
      opts.k0 = spec.k;
      if (spec.eps) {
        opts.upper = safety_value_iteration_upper(g, obj.set, 1000).back();
        opts.gap = spec.eps;
      }
      ConvergentResult res = run_convergent_safety_si(g, obj.set, opts);
      r.values = res.values;
      r.iterations = res.rounds.size();
      r.k = res.rounds.back().k;
      r.status = res.converged ? "exact" : res.gap_reached ? "eps-approx" : "capped";
      r.values_label = res.converged ? "value" : "lower bound";
      r.strategy = res.strategy;
      if (o.trace)
        for (const auto& round : res.rounds) r.trace.emplace_back("k=" + std::to_string(round.k), round.inner.values);
      if (o.verify) check_equal(r, "strategy value", r.values, safety_strategy_value(g, obj.set, res.strategy));
      break;
    }
    case Algorithm::Certify: {
      need(false);
      CertifyOptions opts;
      opts.max_rounds = o.max_iters.value_or(50);
      const Rational eps = spec.eps.value_or(Rational(1, 100));
      ValueBracket b = approximate_game_value(g, obj.set, eps, opts);
      r.values = b.v;
      r.values_label = b.status == BracketStatus::Exact ? "value" : "player-1 safety lower bound";
      r.iterations = b.rounds;
      r.k = b.final_k;
      r.status = to_string(b.status);
      r.gap = b.gap;
      r.criterion = b.criterion;
      r.strategy = b.safety_strategy;
      r.witness_values = b.v_witness;
      r.reach_values = b.u;
      r.reach_strategy = b.reach_strategy;
      r.reach_witness = b.u_witness;
      if (o.trace)
        for (std::size_t i = 0; i < b.gap_history.size(); ++i)
          r.notes.push_back("round " + std::to_string(i + 1) + " gap " + to_string(b.gap_history[i]));
      if (o.verify) {
        check_equal(r, "player-1 strategy value", b.v_witness, safety_strategy_value(g, obj.set, b.safety_strategy));
        if (b.reach_strategy)
          check_equal(r, "player-2 strategy value", b.u_witness, opponent_reach_value(g, obj.set, *b.reach_strategy));
        bool sum_ok = true;
        for (StateId s = 0; s < g.num_states(); ++s) sum_ok = sum_ok && b.u_witness[s] + b.v_witness[s] <= 1;
        r.verify_ok = r.verify_ok && sum_ok;
        r.verify_lines.push_back(sum_ok ? "u + v <= 1: holds" : "u + v <= 1: VIOLATED");
      }
      break;
    }
  }
  return r;
}

std::string describe(const ParsedGame& p) {
  const GameStructure& g = p.game;
  std::ostringstream out;
  out << "ok: " << (p.turn_based ? "turn-based" : "concurrent") << " game, " << g.num_states() << " states, "
      << g.moves.size() << " distinct moves";
  if (!p.turn_based) out << (is_turn_based(g) ? ", turn-based structure" : ", concurrent structure");
  out << "\n";
  return out.str();
}

ojson tb_back_map(const GameStructure& g, const TBReduction& red) {
  ojson out = ojson::object();
  auto names = [&](const std::vector<std::size_t>& locals, const std::vector<MoveId>& ids) {
    std::vector<std::string> v;
    for (std::size_t i : locals) v.push_back(g.moves[ids[i]]);
    return v;
  };
  for (std::size_t x = 0; x < red.game.num_states(); ++x) {
    const TBNode& node = red.back_map[x];
    ojson e;
    e["state"] = g.states[node.state];
    if (node.kind == TBNode::Kind::State) {
      e["kind"] = "state";
    } else {
      const SupportPair& p = red.pairs[node.pair];
      e["kind"] = node.kind == TBNode::Kind::Choice ? "choice" : "response";
      e["support"] = names(p.support, g.moves1[p.state]);
      e["count_opt"] = names(p.count_opt, g.moves2[p.state]);
      if (node.kind == TBNode::Kind::Response) {
        e["move"] = g.moves[g.moves2[p.state][node.move]];
      } else {
        ojson w = ojson::object();
        for (std::size_t i : p.support) w[g.moves[g.moves1[p.state][i]]] = to_string(p.witness[i]);
        e["witness"] = w;
      }
    }
    out[red.game.states[x]] = e;
  }
  return out;
}

}  // namespace

CliResult run(const std::vector<std::string>& args) {
  CliResult res;
  CLI::App app{"Exact solver for concurrent stochastic reachability and safety games", "csg"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve_cmd = app.add_subcommand("solve", "solve a game for a reach or safety objective");
  solve_cmd->add_option("game", so.path, "game file (JSON)")->required();
  solve_cmd->add_option("--objective", so.objective, "reach:<states> | safe:<states> | safe:not-<state>")->required();
  solve_cmd->add_option("--algorithm", so.algorithm,
                        "vi | reach-si | safety-si | k-uniform[:k] | convergent | certify[:eps]");
  solve_cmd->add_option("--max-iters", so.max_iters, "iteration cap");
  solve_cmd->add_option("--eps", so.eps, "tolerance for certify / convergent, e.g. 1/100");
  solve_cmd->add_option("--k", so.k, "k for k-uniform, initial k for convergent")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--verify", so.verify, "recompute reported values from the reported strategies");
  solve_cmd->add_flag("--trace", so.trace, "print the iterate sequence");
  solve_cmd->add_option("--format", so.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::string tb_path, tb_objective, tb_valuation, tb_format = "json";
  std::optional<std::size_t> tb_iteration, tb_k;
  auto* tb_cmd = app.add_subcommand("dump-tb", "emit the turn-based reduction at a valuation");
  tb_cmd->add_option("game", tb_path, "game file (JSON)")->required();
  tb_cmd->add_option("--objective", tb_objective, "safe:<states>")->required();
  auto* val_opt = tb_cmd->add_option("--valuation", tb_valuation, "valuation file {\"s\": \"p/q\"}");
  tb_cmd->add_option("--at-iteration", tb_iteration, "use the safety-SI iterate v_i instead")->excludes(val_opt);
  tb_cmd->add_option("--k", tb_k, "restrict to k-uniform selectors")->check(CLI::PositiveNumber);

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "check a game file");
  validate_cmd->add_option("game", validate_path, "game file (JSON)")->required();

  std::string ex_write, ex_show;
  auto* examples_cmd = app.add_subcommand("examples", "list, show or write the bundled example games");
  examples_cmd->add_option("--write", ex_write, "directory to write <name>.game files into");
  examples_cmd->add_option("--show", ex_show, "print one example");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  std::ostringstream out, err;
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    res.exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
    res.out = out.str();
    res.err = err.str();
    return res;
  }

  try {
    if (solve_cmd->parsed()) {
      ParsedGame parsed = load_game(so.path);
      Report rep = solve(parsed, so);
      out << (so.format == "json" ? render_json(rep) : render_text(rep));
      res.exit_code = rep.status == "capped" ? kExitCapped : kExitOk;
      if (!rep.verify_ok) {
        err << "verification failed\n";
        res.exit_code = kExitVerify;
      }
    } else if (tb_cmd->parsed()) {
      ParsedGame parsed = load_game(tb_path);
      Objective obj = parse_objective(parsed.game, tb_objective);
      if (obj.kind != ObjectiveKind::Safe) throw InputError("dump-tb needs a safe: objective");
      SafetyProblem prob = normalize_safety(parsed.game, obj.set);
      Valuation v;
      if (!tb_valuation.empty()) {
        try {
          v = parse_valuation(parsed.game, read_file(tb_valuation));
        } catch (const InputError& e) {
          throw InputError(tb_valuation + ": " + e.what());
        }
      } else {
        SafetySIState st = initial_safety_state(prob);
        for (std::size_t i = 0; i < tb_iteration.value_or(0); ++i) {
          auto next = safety_si_step(prob, st, {});
          if (!next) break;
          st = std::move(*next);
        }
        v = st.v;
      }
      TBReduction red = tb_reduction(prob.game, v, prob.safe, tb_k);
      ojson doc = turn_based_to_json(red.game);
      std::vector<std::string> safe_names;
      for (StateId x : red.safe.members()) safe_names.push_back(red.game.states[x]);
      doc["safe"] = safe_names;
      doc["valuation"] = ojson::object();
      for (StateId s = 0; s < parsed.game.num_states(); ++s) doc["valuation"][parsed.game.states[s]] = to_string(v[s]);
      doc["back_map"] = tb_back_map(prob.game, red);
      out << doc.dump(2) << "\n";
    } else if (validate_cmd->parsed()) {
      out << describe(load_game(validate_path));
    } else if (examples_cmd->parsed()) {
      if (!ex_show.empty()) {
        try {
          out << bundled_example(ex_show).json;
        } catch (const std::out_of_range& e) {
          throw InputError(e.what());
        }
      } else if (!ex_write.empty()) {
        std::filesystem::create_directories(ex_write);
        for (const auto& e : bundled_examples()) {
          std::filesystem::path p = std::filesystem::path(ex_write) / (e.name + ".game");
          std::ofstream f(p, std::ios::binary);
          if (!f) throw InputError(p.string() + ": cannot write");
          f << e.json;
          out << "wrote " << p.string() << "\n";
        }
      } else {
        for (const auto& e : bundled_examples())
          out << e.name << "  " << e.summary << "  (try --objective " << e.suggested_objective << ")\n";
      }
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    res.exit_code = kExitInput;
  } catch (const GameError& e) {
    err << "error: " << e.what() << "\n";
    res.exit_code = kExitInput;
  } catch (const EnumerationBudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    res.exit_code = kExitCapped;
  }
  res.out = out.str();
  res.err = err.str();
  return res;
}

}  // namespace csg::cli
