#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace carriers;
using test_support::Rng;
using Catch::Approx;

TEST_CASE("fingerprinting game shape") {
  for (int n = 1; n <= 10; ++n) {
    auto g = fingerprinting_game(n);
    Rational total(0);
    int support = 0;
    for (const auto& w : g.weights) {
      total += w;
      if (w != 0) ++support;
    }
    CHECK(total == 1);
    CHECK(support == n + 1);
    CHECK(g.bound == Rational(n, n + 1));
    CHECK_FALSE(g.target.value(0));
    for (int i = 0; i < n; ++i) CHECK(g.target.value(size_t{1} << i));
  }
}

TEST_CASE("game values at reference behaviors") {
  for (int n : {2, 3, 4}) {
    auto g = fingerprinting_game(n);
    auto ones = to_behavior<Rational>(BooleanFunction::constant(n, true));
    CHECK(game_value(g, ones) == Rational(n, n + 1));
    CHECK(violation(g, ones, g.bound) == 0);
    auto uniform = RationalBehavior::uniform(n);
    CHECK(violation(g, uniform, g.bound) == Rational(1, 2) - Rational(n, n + 1));
  }
}

TEST_CASE("a perfect oracle wins any game") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 3);
    Hyperplane<Rational> h;
    h.n_inputs = n;
    h.b0.resize(size_t{1} << n);
    h.b1.resize(size_t{1} << n);
    for (size_t x = 0; x < h.b0.size(); ++x) {
      h.b0[x] = Rational(static_cast<int>(rng.next() % 21) - 10, 4);
      h.b1[x] = Rational(static_cast<int>(rng.next() % 21) - 10, 4);
    }
    h.offset = Rational(1, 3);
    OracleGame<Rational> g;
    try {
      g = hyperplane_to_game(h);
    } catch (const std::invalid_argument&) {
      continue;  // degenerate draw
    }
    auto oracle = to_behavior<Rational>(g.target);
    CHECK(game_value(g, oracle) == 1);
  }
}

TEST_CASE("the second-order optimum overshoots the fingerprinting bound by its delta") {
  auto g = fingerprinting_game(4);
  auto beh = reconstruct_behavior(zstar_closed_form(4));
  CHECK(game_value(g, beh) == Rational(4, 5) + Rational(1, 15));
  CHECK(violation(g, beh, g.bound) == Rational(1, 15));
}

TEST_CASE("the facet hyperplane converts to the fingerprinting game") {
  for (int n : {2, 3, 4}) {
    Hyperplane<Rational> h;
    h.n_inputs = n;
    h.b0.assign(size_t{1} << n, Rational(0));
    h.b1.assign(size_t{1} << n, Rational(0));
    h.b0[0] = Rational(1, n + 1);
    for (int i = 0; i < n; ++i) h.b1[size_t{1} << i] = Rational(1, n + 1);
    h.offset = Rational(n, n + 1);
    auto g = hyperplane_to_game(h);
    auto expect = fingerprinting_game(n);
    CHECK(g.weights == expect.weights);
    CHECK(g.bound == expect.bound);
    CHECK(g.target == expect.target);
  }
}

TEST_CASE("tie inputs carry no weight, so their target value is immaterial") {
  Hyperplane<Rational> h;
  h.n_inputs = 2;
  h.b0 = {Rational(1), Rational(2), Rational(2), Rational(0)};
  h.b1 = {Rational(1), Rational(1), Rational(2), Rational(1)};
  h.offset = Rational(3, 2);
  auto g = hyperplane_to_game(h);
  CHECK(g.weights[0] == 0);
  CHECK(g.weights[2] == 0);
  CHECK(g.target.value(0));  // ties resolve to 1
  CHECK(g.target.value(2));
  // flipping the target on zero-weight inputs cannot move the value
  auto flipped = g;
  flipped.target.set(0, false);
  flipped.target.set(2, false);
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto beh = test_support::random_rational_behavior(2, rng);
    CHECK(game_value(g, beh) == game_value(flipped, beh));
  }
}

TEST_CASE("uniform shift makes a trivial all-zeros game") {
  const int n = 2;
  Hyperplane<Rational> h;
  h.n_inputs = n;
  h.b1.assign(4, Rational(1));
  h.b0.assign(4, Rational(2));  // b0 = b1 + 1 everywhere -> v == 0, uniform q
  h.offset = Rational(8);       // B = sum(min) + D * 1 -> bound C = 1
  auto g = hyperplane_to_game(h);
  for (size_t x = 0; x < 4; ++x) {
    CHECK_FALSE(g.target.value(x));
    CHECK(g.weights[x] == Rational(1, 4));
  }
  CHECK(g.bound == 1);
}

TEST_CASE("degenerate hyperplanes are rejected") {
  Hyperplane<Rational> h;
  h.n_inputs = 1;
  h.b0 = {Rational(1), Rational(2)};
  h.b1 = {Rational(1), Rational(2)};
  h.offset = Rational(1);
  CHECK_THROWS_AS(hyperplane_to_game(h), std::invalid_argument);
}

TEST_CASE("round trip: the game value is an affine image of the hyperplane form") {
  Rng rng(43);
  int tested = 0;
  for (int trial = 0; tested < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 3);
    const size_t size = size_t{1} << n;
    Hyperplane<Rational> h;
    h.n_inputs = n;
    h.b0.resize(size);
    h.b1.resize(size);
    for (size_t x = 0; x < size; ++x) {
      h.b0[x] = Rational(static_cast<int>(rng.next() % 41) - 20, 8);
      h.b1[x] = Rational(static_cast<int>(rng.next() % 41) - 20, 8);
    }
    h.offset = Rational(static_cast<int>(rng.next() % 17) - 8, 4);
    OracleGame<Rational> g;
    try {
      g = hyperplane_to_game(h);
    } catch (const std::invalid_argument&) {
      continue;
    }
    ++tested;

    Rational weight_total(0);
    for (const auto& w : g.weights) {
      CHECK(w >= 0);
      weight_total += w;
    }
    CHECK(weight_total == 1);

    // slope = 1/D > 0 and intercept depend only on the hyperplane
    Rational denom(0), min_sum(0);
    for (size_t x = 0; x < size; ++x) {
      Rational d = h.b0[x] - h.b1[x];
      denom += d < 0 ? -d : d;
      min_sum += std::min(h.b0[x], h.b1[x]);
    }
    for (int probe = 0; probe < 5; ++probe) {
      auto beh = test_support::random_rational_behavior(n, rng);
      Rational lhs(0);
      for (size_t x = 0; x < size; ++x) lhs += h.b1[x] * beh.p1(x) + h.b0[x] * beh.p0(x);
      CHECK(game_value(g, beh) == (lhs - min_sum) / denom);
    }
    // membership in the hyperplane is equivalent to hitting the bound
    auto on_plane_value = (h.offset - min_sum) / denom;
    CHECK(g.bound == on_plane_value);
  }
}

TEST_CASE("classical bounds of the fingerprinting game") {
  for (int n = 2; n <= 4; ++n) {
    auto g = fingerprinting_game(n);
    CHECK(classical_bound(g, n - 1) == Rational(n, n + 1));
    CHECK(classical_bound(g, 0) == Rational(n, n + 1));
  }
  auto g2 = fingerprinting_game(2);
  CHECK(classical_bound(g2, 2) == 1);  // unrestricted juntas can win outright
}
