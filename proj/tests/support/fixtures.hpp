#pragma once

#include <random>
#include <string>
#include <vector>

#include "csg/examples.hpp"
#include "csg/game.hpp"
#include "csg/game_io.hpp"
#include "csg/matrix_game.hpp"

namespace fixture {

using csg::Rational;
using csg::StateId;

inline csg::ParsedGame bundled(const std::string& name) { return csg::parse_game(csg::bundled_example(name).json); }

inline csg::StateSet set_of(const csg::GameStructure& g, const std::vector<std::string>& names) {
  return csg::indicator_set(g, names);
}

inline Rational q(const std::string& text) { return csg::parse_rational(text); }

inline csg::Valuation vals(const std::vector<std::string>& texts) {
  csg::Valuation v;
  for (const auto& t : texts) v.push_back(q(t));
  return v;
}

// 2 - sqrt(2) to 30 digits, and the bracket [lo, hi] containing it.
inline const Rational& two_minus_sqrt2_lo() {
  static const Rational r = q("0.585786437626904951198311275790");
  return r;
}
inline const Rational& two_minus_sqrt2_hi() {
  static const Rational r = q("0.585786437626904951198311275791");
  return r;
}

class Random {
 public:
  explicit Random(unsigned seed) : rng_(seed) {}

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  // Probability vector over `size` entries with small integer weights.
  std::vector<Rational> weights(std::size_t size) {
    std::vector<Rational> w(size);
    Rational total = 0;
    for (auto& x : w) {
      x = Rational(static_cast<long>(pick(1, 4)));
      total += x;
    }
    for (auto& x : w) x /= total;
    return w;
  }

  csg::Distribution distribution(std::size_t n, std::size_t max_support) {
    std::vector<StateId> all(n);
    for (StateId s = 0; s < n; ++s) all[s] = s;
    std::shuffle(all.begin(), all.end(), rng_);
    std::size_t k = pick(1, std::min(max_support, n));
    std::vector<StateId> chosen(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(chosen.begin(), chosen.end());
    auto w = weights(k);
    csg::Distribution d;
    for (std::size_t i = 0; i < k; ++i) d.push_back({chosen[i], w[i]});
    return d;
  }

  csg::MatrixGame matrix(std::size_t max_dim) {
    csg::MatrixGame m;
    std::size_t r = pick(1, max_dim), c = pick(1, max_dim);
    m.payoff.assign(r, std::vector<Rational>(c));
    for (auto& row : m.payoff)
      for (auto& x : row) {
        long den = static_cast<long>(pick(1, 8));
        x = Rational(static_cast<long>(pick(0, static_cast<std::size_t>(den))), den);
        x.canonicalize();
      }
    return m;
  }

  // Moves are named a, b for player 1 and c, d for player 2.
  csg::GameStructure concurrent(std::size_t max_states, std::size_t max_moves) {
    csg::GameStructure g;
    std::size_t n = pick(1, max_states);
    for (std::size_t s = 0; s < n; ++s) g.states.push_back("s" + std::to_string(s));
    g.moves = {"a", "b", "c", "d"};
    g.moves1.resize(n);
    g.moves2.resize(n);
    g.delta.resize(n);
    for (StateId s = 0; s < n; ++s) {
      std::size_t m1 = pick(1, max_moves), m2 = pick(1, max_moves);
      for (std::size_t i = 0; i < m1; ++i) g.moves1[s].push_back(i);
      for (std::size_t j = 0; j < m2; ++j) g.moves2[s].push_back(2 + j);
      g.delta[s].assign(m1, std::vector<csg::Distribution>(m2));
      for (auto& row : g.delta[s])
        for (auto& cell : row) cell = distribution(n, 2);
    }
    csg::validate(g);
    return g;
  }

  csg::TurnBasedGame turn_based(std::size_t max_states, std::size_t max_succ) {
    csg::TurnBasedGame tb;
    std::size_t n = pick(2, max_states);
    for (std::size_t s = 0; s < n; ++s) tb.states.push_back("s" + std::to_string(s));
    tb.owner.resize(n);
    tb.edges.resize(n);
    tb.prob.resize(n);
    for (StateId s = 0; s < n; ++s) {
      tb.owner[s] = static_cast<csg::Owner>(pick(0, 2));
      auto d = distribution(n, max_succ);
      for (const auto& t : d) tb.edges[s].push_back(t.target);
      if (tb.owner[s] == csg::Owner::Random)
        for (const auto& t : d) tb.prob[s].push_back(t.prob);
    }
    csg::validate(tb);
    return tb;
  }

  csg::StateSet subset(std::size_t n, bool nonempty) {
    csg::StateSet out(n);
    for (StateId s = 0; s < n; ++s)
      if (pick(0, 1)) out.insert(s);
    if (nonempty && out.empty()) out.insert(pick(0, n - 1));
    return out;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace fixture
