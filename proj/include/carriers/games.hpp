#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "carriers/behavior.hpp"
#include "carriers/boolfun.hpp"
#include "carriers/errors.hpp"
#include "carriers/rational.hpp"
#include "carriers/simplex.hpp"

namespace carriers {

/// A hyperplane over behaviors: Σ_x b1_x P(1|x) + b0_x P(0|x) = offset.
template <class S>
struct Hyperplane {
  int n_inputs = 0;
  std::vector<S> b0;
  std::vector<S> b1;
  S offset = S(0);
};

/// An oracle game: guess v(x) on inputs drawn with the given weights.
/// weights[x] is the prize weight q_x^{(v(x))}; they are nonnegative and
/// sum to one. `bound` carries the constant the dual hyperplane pins (for
/// facet games, the classical bound).
template <class S>
struct OracleGame {
  int n_inputs = 0;
  BooleanFunction target = BooleanFunction(1);
  std::vector<S> weights;
  S bound = S(0);
};

inline OracleGame<double> to_double(const OracleGame<Rational>& g) {
  OracleGame<double> out;
  out.n_inputs = g.n_inputs;
  out.target = g.target;
  out.weights.resize(g.weights.size());
  for (size_t x = 0; x < g.weights.size(); ++x) out.weights[x] = static_cast<double>(g.weights[x]);
  out.bound = static_cast<double>(g.bound);
  return out;
}

/// Winning probability of a behavior at a game:
/// Σ_{v(x)=1} q_x P(1|x) + Σ_{v(x)=0} q_x P(0|x).
template <class S>
S game_value(const OracleGame<S>& g, const BasicBehavior<S>& beh) {
  if (g.n_inputs != beh.n_inputs()) throw std::invalid_argument("game_value: arity mismatch");
  S total(0);
  for (size_t x = 0; x < beh.table_size(); ++x)
    total += g.weights[x] * beh.p(g.target.value(x) ? 1 : 0, x);
  return total;
}

template <class S>
S violation(const OracleGame<S>& g, const BasicBehavior<S>& beh, const S& bound) {
  return game_value(g, beh) - bound;
}

/// Rewrites a hyperplane as an oracle game. v(x) = 0 exactly where
/// b0_x > b1_x; ties get v(x) = 1 and weight zero, which cannot change the
/// game value. The dual pair satisfies
///   game_value(g, P) = (LHS(h, P) - Σ_x min(b0_x, b1_x)) / D,
/// with D = Σ_x |b0_x - b1_x|, so P lies on h iff game_value(g, P) = bound.
template <class S>
OracleGame<S> hyperplane_to_game(const Hyperplane<S>& h) {
  const size_t size = size_t{1} << h.n_inputs;
  if (h.b0.size() != size || h.b1.size() != size) throw std::invalid_argument("hyperplane has wrong table size");
  OracleGame<S> g;
  g.n_inputs = h.n_inputs;
  g.target = BooleanFunction(h.n_inputs);
  g.weights.assign(size, S(0));

  S denom(0);
  S min_sum(0);
  for (size_t x = 0; x < size; ++x) {
    const S d = h.b0[x] - h.b1[x];
    denom += d < S(0) ? -d : d;
    min_sum += std::min(h.b0[x], h.b1[x]);
    g.target.set(x, !(h.b0[x] > h.b1[x]));
  }
  if (detail::LpScalar<S>::is_zero(denom))
    throw std::invalid_argument("degenerate hyperplane: b0 and b1 coincide everywhere");
  for (size_t x = 0; x < size; ++x) {
    const S d = g.target.value(x) ? h.b1[x] - h.b0[x] : h.b0[x] - h.b1[x];
    g.weights[x] = d / denom;
  }
  g.bound = (h.offset - min_sum) / denom;
  return g;
}

/// The fingerprinting game: weight 1/(N+1) on the all-zero input (answer 0)
/// and on each weight-one input (answer 1); classical bound N/(N+1). The
/// target is the indicator of "some site is set"; inputs off the weighted
/// support carry v(x) = 1, matching hyperplane_to_game's tie rule, so this
/// game is exactly the dual of its facet hyperplane.
inline OracleGame<Rational> fingerprinting_game(int n) {
  if (n < 1) throw std::invalid_argument("fingerprinting_game: need N >= 1");
  OracleGame<Rational> g;
  g.n_inputs = n;
  g.target = BooleanFunction::constant(n, true);
  g.target.set(0, false);
  g.weights.assign(size_t{1} << n, Rational(0));
  const Rational w(1, n + 1);
  g.weights[0] = w;
  for (int i = 0; i < n; ++i) g.weights[size_t{1} << i] = w;
  g.bound = Rational(n, n + 1);
  return g;
}

/// Maximum winning probability over C_{N,K}: by convexity the optimum is at
/// a vertex, so scan the deterministic K-junta behaviors.
inline Rational classical_bound(const OracleGame<Rational>& g, int k,
                                uint64_t budget = kDefaultJuntaBudget) {
  auto juntas = enumerate_k_juntas(g.n_inputs, k, budget);
  bool first = true;
  Rational best(0);
  for (const auto& f : juntas) {
    Rational value(0);
    for (size_t x = 0; x < f.table_size(); ++x)
      if (f.value(x) == g.target.value(x)) value += g.weights[x];
    if (first || value > best) {
      best = value;
      first = false;
    }
  }
  return best;
}

}  // namespace carriers
