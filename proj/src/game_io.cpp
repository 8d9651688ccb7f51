#include "csg/game_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace csg {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing key '" + key + "'");
  return *it;
}

Rational parse_prob(const json& value, const std::string& where) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long>());
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(where, "probabilities must be exact strings such as \"1/2\"");
}

std::vector<std::string> parse_states(const json& doc) {
  const json& arr = member(doc, "states", "game");
  if (!arr.is_array() || arr.empty()) fail("states", "expected a non-empty array of names");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) fail("states", "state names must be strings");
    std::string name = v.get<std::string>();
    if (std::find(out.begin(), out.end(), name) != out.end())
      fail("states", "duplicate state '" + name + "'");
    out.push_back(name);
  }
  return out;
}

std::map<std::string, StateId> index_of(const std::vector<std::string>& names) {
  std::map<std::string, StateId> out;
  for (StateId s = 0; s < names.size(); ++s) out[names[s]] = s;
  return out;
}

void check_keys(const json& obj, const std::map<std::string, StateId>& ids, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object keyed by state");
  for (const auto& [key, _] : obj.items())
    if (!ids.count(key)) fail(where, "unknown state '" + key + "'");
}

Distribution parse_distribution(const json& obj, const std::map<std::string, StateId>& ids,
                                const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object of successor probabilities");
  std::vector<std::pair<StateId, Rational>> entries;
  Rational total = 0;
  for (const auto& [key, value] : obj.items()) {
    auto it = ids.find(key);
    if (it == ids.end()) fail(where, "unknown successor '" + key + "'");
    Rational p = parse_prob(value, where + " -> " + key);
    if (sgn(p) < 0) fail(where, "negative probability for successor " + key);
    total += p;
    if (sgn(p) > 0) entries.emplace_back(it->second, p);
  }
  if (total != 1) fail(where, "probabilities sum to " + to_string(total));
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Distribution d;
  for (auto& [t, p] : entries) d.push_back({t, p});
  return d;
}

GameStructure parse_concurrent(const json& doc) {
  GameStructure g;
  g.states = parse_states(doc);
  const auto ids = index_of(g.states);
  const std::size_t n = g.states.size();
  const json& m1 = member(doc, "moves1", "game");
  const json& m2 = member(doc, "moves2", "game");
  const json& dj = member(doc, "delta", "game");
  check_keys(m1, ids, "moves1");
  check_keys(m2, ids, "moves2");
  check_keys(dj, ids, "delta");

  std::map<std::string, MoveId> move_ids;
  auto read_moves = [&](const json& table, const std::string& table_name, const std::string& s) {
    const json& arr = member(table, s, table_name);
    if (!arr.is_array() || arr.empty()) fail(table_name + "[" + s + "]", "expected a non-empty array of moves");
    std::vector<MoveId> out;
    for (const auto& v : arr) {
      if (!v.is_string()) fail(table_name + "[" + s + "]", "move names must be strings");
      std::string name = v.get<std::string>();
      auto [it, fresh] = move_ids.emplace(name, g.moves.size());
      if (fresh) g.moves.push_back(name);
      if (std::find(out.begin(), out.end(), it->second) != out.end())
        fail(table_name + "[" + s + "]", "duplicate move '" + name + "'");
      out.push_back(it->second);
    }
    return out;
  };
  for (StateId s = 0; s < n; ++s) {
    g.moves1.push_back(read_moves(m1, "moves1", g.states[s]));
    g.moves2.push_back(read_moves(m2, "moves2", g.states[s]));
  }

  g.delta.resize(n);
  for (StateId s = 0; s < n; ++s) {
    const std::string& sn = g.states[s];
    const json& row = member(dj, sn, "delta");
    if (!row.is_object()) fail("delta[" + sn + "]", "expected an object keyed by player-1 move");
    for (const auto& [a, _] : row.items()) {
      bool known = std::any_of(g.moves1[s].begin(), g.moves1[s].end(),
                               [&](MoveId m) { return g.moves[m] == a; });
      if (!known) fail("(" + sn + ", " + a + ", *)", "move " + a + " is not available to player 1 at " + sn);
    }
    g.delta[s].resize(g.moves1[s].size());
    for (std::size_t i = 0; i < g.moves1[s].size(); ++i) {
      const std::string& a = g.moves[g.moves1[s][i]];
      const json& col = member(row, a, "(" + sn + ", " + a + ", *)");
      if (!col.is_object()) fail("(" + sn + ", " + a + ", *)", "expected an object keyed by player-2 move");
      for (const auto& [b, _] : col.items()) {
        bool known = std::any_of(g.moves2[s].begin(), g.moves2[s].end(),
                                 [&](MoveId m) { return g.moves[m] == b; });
        if (!known)
          fail("(" + sn + ", " + a + ", " + b + ")", "move " + b + " is not available to player 2 at " + sn);
      }
      for (std::size_t j = 0; j < g.moves2[s].size(); ++j) {
        const std::string& b = g.moves[g.moves2[s][j]];
        const std::string where = "(" + sn + ", " + a + ", " + b + ")";
        auto it = col.find(b);
        if (it == col.end()) fail(where, "missing transition");
        g.delta[s][i].push_back(parse_distribution(*it, ids, where));
      }
    }
  }
  return g;
}

TurnBasedGame parse_turn_based(const json& doc) {
  TurnBasedGame tb;
  tb.states = parse_states(doc);
  const auto ids = index_of(tb.states);
  const std::size_t n = tb.states.size();
  const json& part = member(doc, "partition", "game");
  const json& edges = member(doc, "edges", "game");
  check_keys(part, ids, "partition");
  check_keys(edges, ids, "edges");
  json prob = doc.contains("prob") ? doc.at("prob") : json::object();
  check_keys(prob, ids, "prob");
  tb.owner.resize(n);
  tb.edges.resize(n);
  tb.prob.resize(n);
  for (StateId s = 0; s < n; ++s) {
    const std::string& sn = tb.states[s];
    const json& o = member(part, sn, "partition");
    std::string tag = o.is_string() ? o.get<std::string>() : "";
    if (tag == "P1")
      tb.owner[s] = Owner::Player1;
    else if (tag == "P2")
      tb.owner[s] = Owner::Player2;
    else if (tag == "R")
      tb.owner[s] = Owner::Random;
    else
      fail("partition[" + sn + "]", "expected \"P1\", \"P2\" or \"R\"");
    const json& e = member(edges, sn, "edges");
    if (!e.is_array() || e.empty()) fail("edges[" + sn + "]", "expected a non-empty array of successors");
    for (const auto& t : e) {
      if (!t.is_string() || !ids.count(t.get<std::string>()))
        fail("edges[" + sn + "]", "unknown successor " + t.dump());
      StateId tid = ids.at(t.get<std::string>());
      if (std::find(tb.edges[s].begin(), tb.edges[s].end(), tid) != tb.edges[s].end())
        fail("edges[" + sn + "]", "duplicate successor " + t.get<std::string>());
      tb.edges[s].push_back(tid);
    }
    if (tb.owner[s] == Owner::Random) {
      const json& p = member(prob, sn, "prob");
      if (!p.is_object()) fail("prob[" + sn + "]", "expected an object of edge probabilities");
      for (const auto& [key, _] : p.items()) {
        auto it = ids.find(key);
        if (it == ids.end() || std::find(tb.edges[s].begin(), tb.edges[s].end(), it->second) == tb.edges[s].end())
          fail("prob[" + sn + "]", "probability given for non-edge " + key);
      }
      Rational total = 0;
      for (StateId t : tb.edges[s]) {
        const std::string where = "prob[" + sn + "][" + tb.states[t] + "]";
        auto it = p.find(tb.states[t]);
        if (it == p.end()) fail(where, "missing probability");
        Rational q = parse_prob(*it, where);
        if (sgn(q) <= 0) fail(where, "edge probabilities must be positive");
        total += q;
        tb.prob[s].push_back(q);
      }
      if (total != 1) fail("prob[" + sn + "]", "probabilities sum to " + to_string(total));
    } else if (prob.contains(sn)) {
      fail("prob[" + sn + "]", "probabilities given for a non-random state");
    }
  }
  return tb;
}

}  // namespace

ParsedGame parse_game(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("json: ") + e.what());
  }
  if (!doc.is_object()) fail("game", "expected a JSON object");
  std::string type = doc.contains("type") && doc["type"].is_string() ? doc["type"].get<std::string>() : "";
  ParsedGame out;
  try {
    if (type == "concurrent") {
      out.game = parse_concurrent(doc);
    } else if (type == "turn-based") {
      out.turn_based = parse_turn_based(doc);
      validate(*out.turn_based);
      out.game = encode_turn_based_as_concurrent(*out.turn_based);
    } else {
      fail("type", "expected \"concurrent\" or \"turn-based\"");
    }
    validate(out.game);
  } catch (const GameError& e) {
    throw InputError(e.what());
  } catch (const json::exception& e) {
    throw InputError(std::string("json: ") + e.what());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParsedGame load_game(const std::string& path) {
  try {
    return parse_game(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

nlohmann::ordered_json game_to_json(const GameStructure& g) {
  nlohmann::ordered_json doc;
  doc["type"] = "concurrent";
  doc["states"] = g.states;
  auto names = [&](const std::vector<MoveId>& ms) {
    std::vector<std::string> out;
    for (MoveId m : ms) out.push_back(g.moves[m]);
    return out;
  };
  nlohmann::ordered_json m1 = nlohmann::ordered_json::object(), m2 = nlohmann::ordered_json::object(),
                         delta = nlohmann::ordered_json::object();
  for (StateId s = 0; s < g.num_states(); ++s) {
    m1[g.states[s]] = names(g.moves1[s]);
    m2[g.states[s]] = names(g.moves2[s]);
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < g.num_moves1(s); ++i) {
      nlohmann::ordered_json col = nlohmann::ordered_json::object();
      for (std::size_t j = 0; j < g.num_moves2(s); ++j) {
        nlohmann::ordered_json d = nlohmann::ordered_json::object();
        for (const auto& t : g.delta[s][i][j]) d[g.states[t.target]] = to_string(t.prob);
        col[g.moves[g.moves2[s][j]]] = d;
      }
      row[g.moves[g.moves1[s][i]]] = col;
    }
    delta[g.states[s]] = row;
  }
  doc["moves1"] = m1;
  doc["moves2"] = m2;
  doc["delta"] = delta;
  return doc;
}

nlohmann::ordered_json turn_based_to_json(const TurnBasedGame& tb) {
  nlohmann::ordered_json doc;
  doc["type"] = "turn-based";
  doc["states"] = tb.states;
  nlohmann::ordered_json part = nlohmann::ordered_json::object(), edges = nlohmann::ordered_json::object(),
                         prob = nlohmann::ordered_json::object();
  for (StateId s = 0; s < tb.num_states(); ++s) {
    const std::string& sn = tb.states[s];
    part[sn] = tb.owner[s] == Owner::Player1 ? "P1" : tb.owner[s] == Owner::Player2 ? "P2" : "R";
    std::vector<std::string> succ;
    for (StateId t : tb.edges[s]) succ.push_back(tb.states[t]);
    edges[sn] = succ;
    if (tb.owner[s] == Owner::Random) {
      nlohmann::ordered_json p = nlohmann::ordered_json::object();
      for (std::size_t k = 0; k < tb.edges[s].size(); ++k) p[tb.states[tb.edges[s][k]]] = to_string(tb.prob[s][k]);
      prob[sn] = p;
    }
  }
  doc["partition"] = part;
  doc["edges"] = edges;
  doc["prob"] = prob;
  return doc;
}

Valuation parse_valuation(const GameStructure& g, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("valuation: json: ") + e.what());
  }
  if (!doc.is_object()) fail("valuation", "expected an object keyed by state");
  const auto ids = index_of(g.states);
  check_keys(doc, ids, "valuation");
  Valuation v(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s) {
    const std::string where = "valuation[" + g.states[s] + "]";
    if (!doc.contains(g.states[s])) fail(where, "missing value");
    v[s] = parse_prob(doc[g.states[s]], where);
    if (sgn(v[s]) < 0 || v[s] > 1) fail(where, "value outside [0, 1]");
  }
  return v;
}

}  // namespace csg
