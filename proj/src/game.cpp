#include "csg/game.hpp"

#include <algorithm>
#include <set>

namespace csg {

StateSet StateSet::of(std::size_t universe, const std::vector<StateId>& members) {
  StateSet out(universe);
  for (StateId s : members) out.insert(s);
  return out;
}

std::size_t StateSet::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

std::vector<StateId> StateSet::members() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < bits_.size(); ++s)
    if (bits_[s]) out.push_back(s);
  return out;
}

StateSet StateSet::complement() const {
  StateSet out(universe());
  for (StateId s = 0; s < bits_.size(); ++s) out.bits_[s] = !bits_[s];
  return out;
}

StateSet StateSet::operator|(const StateSet& o) const {
  StateSet out(*this);
  for (StateId s = 0; s < bits_.size(); ++s) out.bits_[s] = bits_[s] || o.bits_[s];
  return out;
}

StateSet StateSet::operator&(const StateSet& o) const {
  StateSet out(*this);
  for (StateId s = 0; s < bits_.size(); ++s) out.bits_[s] = bits_[s] && o.bits_[s];
  return out;
}

StateSet StateSet::operator-(const StateSet& o) const {
  StateSet out(*this);
  for (StateId s = 0; s < bits_.size(); ++s) out.bits_[s] = bits_[s] && !o.bits_[s];
  return out;
}

bool StateSet::subset_of(const StateSet& o) const {
  for (StateId s = 0; s < bits_.size(); ++s)
    if (bits_[s] && !o.bits_[s]) return false;
  return true;
}

std::optional<StateId> GameStructure::find_state(const std::string& name) const {
  for (StateId s = 0; s < states.size(); ++s)
    if (states[s] == name) return s;
  return std::nullopt;
}

void validate(const GameStructure& g) {
  const std::size_t n = g.num_states();
  if (n == 0) throw GameError("game has no states");
  if (g.moves1.size() != n || g.moves2.size() != n || g.delta.size() != n)
    throw GameError("move or transition tables do not cover every state");
  for (StateId s = 0; s < n; ++s) {
    const std::string& sn = g.states[s];
    if (g.moves1[s].empty()) throw GameError("state " + sn + ": player 1 has no moves");
    if (g.moves2[s].empty()) throw GameError("state " + sn + ": player 2 has no moves");
    if (g.delta[s].size() != g.moves1[s].size())
      throw GameError("state " + sn + ": transition table does not match player-1 moves");
    for (std::size_t i = 0; i < g.moves1[s].size(); ++i) {
      if (g.delta[s][i].size() != g.moves2[s].size())
        throw GameError("state " + sn + ": transition table does not match player-2 moves");
      for (std::size_t j = 0; j < g.moves2[s].size(); ++j) {
        const std::string where =
            "(" + sn + ", " + g.moves[g.moves1[s][i]] + ", " + g.moves[g.moves2[s][j]] + ")";
        const Distribution& d = g.delta[s][i][j];
        if (d.empty()) throw GameError(where + ": empty distribution");
        Rational total = 0;
        for (std::size_t k = 0; k < d.size(); ++k) {
          if (d[k].target >= n) throw GameError(where + ": unknown successor");
          if (sgn(d[k].prob) <= 0) throw GameError(where + ": non-positive probability");
          if (k > 0 && d[k - 1].target >= d[k].target)
            throw GameError(where + ": successors not sorted or duplicated");
          total += d[k].prob;
        }
        if (total != 1) throw GameError(where + ": probabilities sum to " + to_string(total));
      }
    }
  }
}

std::vector<std::size_t> Selector::support(StateId s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < prob[s].size(); ++i)
    if (sgn(prob[s][i]) > 0) out.push_back(i);
  return out;
}

Selector uniform_selector(const GameStructure& g, int player) {
  Selector xi;
  xi.player = player;
  xi.prob.resize(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s) {
    std::size_t m = player == 1 ? g.num_moves1(s) : g.num_moves2(s);
    xi.prob[s].assign(m, Rational(1, m));
  }
  return xi;
}

Selector pure_selector(const GameStructure& g, int player, const std::vector<std::size_t>& choice) {
  Selector xi;
  xi.player = player;
  xi.prob.resize(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s) {
    std::size_t m = player == 1 ? g.num_moves1(s) : g.num_moves2(s);
    xi.prob[s].assign(m, Rational(0));
    xi.prob[s][choice[s]] = 1;
  }
  return xi;
}

StateSet indicator_set(const GameStructure& g, const std::vector<std::string>& names) {
  StateSet out(g.num_states());
  for (const auto& name : names) {
    auto s = g.find_state(name);
    if (!s) throw GameError("unknown state '" + name + "'");
    out.insert(*s);
  }
  return out;
}

Valuation indicator(const StateSet& set) {
  Valuation v(set.universe(), Rational(0));
  for (StateId s : set.members()) v[s] = 1;
  return v;
}

GameStructure make_absorbing(const GameStructure& g, const StateSet& keep) {
  GameStructure out = g;
  for (StateId s : keep.members())
    for (auto& row : out.delta[s])
      for (auto& d : row) d = Distribution{{s, Rational(1)}};
  return out;
}

std::vector<StateId> destinations(const GameStructure& g, StateId s, std::size_t i, std::size_t j) {
  std::vector<StateId> out;
  for (const auto& t : g.delta[s][i][j]) out.push_back(t.target);
  return out;
}

std::vector<StateId> destinations(const GameStructure& g, StateId s,
                                  const std::vector<std::size_t>& rows, std::size_t j) {
  std::set<StateId> acc;
  for (std::size_t i : rows)
    for (const auto& t : g.delta[s][i][j]) acc.insert(t.target);
  return {acc.begin(), acc.end()};
}

ValueClassIndex value_classes(const Valuation& v) {
  ValueClassIndex out;
  for (StateId s = 0; s < v.size(); ++s) out[v[s]].push_back(s);
  return out;
}

GameStructure swap_players(const GameStructure& g) {
  GameStructure out;
  out.states = g.states;
  out.moves = g.moves;
  out.moves1 = g.moves2;
  out.moves2 = g.moves1;
  out.delta.resize(g.num_states());
  for (StateId s = 0; s < g.num_states(); ++s) {
    out.delta[s].assign(g.num_moves2(s), std::vector<Distribution>(g.num_moves1(s)));
    for (std::size_t i = 0; i < g.num_moves1(s); ++i)
      for (std::size_t j = 0; j < g.num_moves2(s); ++j) out.delta[s][j][i] = g.delta[s][i][j];
  }
  return out;
}

void validate(const TurnBasedGame& tb) {
  const std::size_t n = tb.num_states();
  if (n == 0) throw GameError("game has no states");
  if (tb.owner.size() != n || tb.edges.size() != n || tb.prob.size() != n)
    throw GameError("partition or edge tables do not cover every state");
  for (StateId s = 0; s < n; ++s) {
    const std::string& sn = tb.states[s];
    if (tb.edges[s].empty()) throw GameError("state " + sn + ": no outgoing edges");
    std::set<StateId> seen;
    for (StateId t : tb.edges[s]) {
      if (t >= n) throw GameError("state " + sn + ": unknown successor");
      if (!seen.insert(t).second)
        throw GameError("state " + sn + ": duplicate edge to " + tb.states[t]);
    }
    if (tb.owner[s] == Owner::Random) {
      if (tb.prob[s].size() != tb.edges[s].size())
        throw GameError("state " + sn + ": probabilities do not match edges");
      Rational total = 0;
      for (std::size_t k = 0; k < tb.prob[s].size(); ++k) {
        if (sgn(tb.prob[s][k]) <= 0)
          throw GameError("state " + sn + ": non-positive probability on edge to " +
                          tb.states[tb.edges[s][k]]);
        total += tb.prob[s][k];
      }
      if (total != 1) throw GameError("state " + sn + ": probabilities sum to " + to_string(total));
    }
  }
}

GameStructure encode_turn_based_as_concurrent(const TurnBasedGame& tb) {
  GameStructure g;
  g.states = tb.states;
  std::map<std::string, MoveId> ids;
  auto move_id = [&](const std::string& name) {
    auto [it, fresh] = ids.emplace(name, g.moves.size());
    if (fresh) g.moves.push_back(name);
    return it->second;
  };
  const MoveId idle = move_id("_");
  const std::size_t n = tb.num_states();
  g.moves1.resize(n);
  g.moves2.resize(n);
  g.delta.resize(n);
  for (StateId s = 0; s < n; ++s) {
    switch (tb.owner[s]) {
      case Owner::Player1:
      case Owner::Player2: {
        std::vector<MoveId> choices;
        std::vector<Distribution> dists;
        for (StateId t : tb.edges[s]) {
          choices.push_back(move_id("to-" + tb.states[t]));
          dists.push_back(Distribution{{t, Rational(1)}});
        }
        if (tb.owner[s] == Owner::Player1) {
          g.moves1[s] = choices;
          g.moves2[s] = {idle};
          for (auto& d : dists) g.delta[s].push_back({d});
        } else {
          g.moves1[s] = {idle};
          g.moves2[s] = choices;
          g.delta[s].push_back(dists);
        }
        break;
      }
      case Owner::Random: {
        std::vector<std::pair<StateId, Rational>> entries;
        for (std::size_t k = 0; k < tb.edges[s].size(); ++k)
          entries.emplace_back(tb.edges[s][k], tb.prob[s][k]);
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Distribution d;
        for (auto& [t, p] : entries) d.push_back({t, p});
        g.moves1[s] = {idle};
        g.moves2[s] = {idle};
        g.delta[s] = {{d}};
        break;
      }
    }
  }
  return g;
}

bool is_turn_based(const GameStructure& g) {
  for (StateId s = 0; s < g.num_states(); ++s)
    if (g.num_moves1(s) > 1 && g.num_moves2(s) > 1) return false;
  return true;
}

std::vector<Owner> turn_based_owner(const GameStructure& g) {
  std::vector<Owner> out(g.num_states(), Owner::Random);
  for (StateId s = 0; s < g.num_states(); ++s) {
    if (g.num_moves1(s) > 1)
      out[s] = Owner::Player1;
    else if (g.num_moves2(s) > 1)
      out[s] = Owner::Player2;
  }
  return out;
}

std::string selector_choice_to_string(const GameStructure& g, const Selector& xi, StateId s) {
  const auto& moves = xi.player == 1 ? g.moves1[s] : g.moves2[s];
  std::string out;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (sgn(xi.prob[s][i]) == 0) continue;
    if (!out.empty()) out += " ";
    out += g.moves[moves[i]] + "=" + to_string(xi.prob[s][i]);
  }
  return out;
}

}  // namespace csg
