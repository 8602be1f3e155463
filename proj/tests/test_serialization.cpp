#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "test_support.hpp"

using namespace carriers;
using test_support::Rng;
using Catch::Approx;

TEST_CASE("behavior JSON round trip keeps rationals exact") {
  RationalBehavior b(2, RatVec{Rational(1, 3), Rational(0), Rational(1), Rational(2, 7)});
  Json j = to_json(b);
  CHECK(j["n_inputs"] == 2);
  CHECK(j["p1"][0] == "1/3");
  RationalBehavior back = rational_behavior_from_json(j);
  CHECK(back == b);
}

TEST_CASE("behavior JSON accepts plain numbers") {
  Json j;
  j["n_inputs"] = 1;
  j["p1"] = {0.5, 1.0};
  Behavior b = behavior_from_json(j);
  CHECK(b.p1(0) == Approx(0.5));
  CHECK(b.p1(1) == Approx(1.0));
}

TEST_CASE("malformed behavior JSON is rejected") {
  CHECK_THROWS_AS(rational_behavior_from_json(Json{{"p1", {0.5}}}), std::invalid_argument);
  Json wrong;
  wrong["n_inputs"] = 2;
  wrong["p1"] = {"1/2", "1/2", "1/2"};
  CHECK_THROWS_AS(rational_behavior_from_json(wrong), std::invalid_argument);
  Json bad_entry;
  bad_entry["n_inputs"] = 1;
  bad_entry["p1"] = {"1/0", "1"};
  CHECK_THROWS_AS(rational_behavior_from_json(bad_entry), std::invalid_argument);
}

TEST_CASE("CSV export layout") {
  RationalBehavior b(2, RatVec{Rational(1, 3), Rational(0), Rational(1), Rational(1, 2)});
  std::string csv = behavior_to_csv(b);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "index,bits,p0,p1");
  std::getline(in, line);
  CHECK(line == "0,00,2/3,1/3");
  std::getline(in, line);
  CHECK(line == "1,10,1,0");  // index 1 sets site 0
  std::getline(in, line);
  CHECK(line == "2,01,0,1");
  std::getline(in, line);
  CHECK(line == "3,11,1/2,1/2");
}

TEST_CASE("game JSON round trip") {
  auto g = fingerprinting_game(3);
  Json j = to_json(g);
  CHECK(j["n_inputs"] == 3);
  CHECK(j["v_truth_table_hex"].get<std::string>().size() == 2);
  auto back = rational_game_from_json(j);
  CHECK(back.weights == g.weights);
  CHECK(back.bound == g.bound);
  CHECK(back.target == g.target);
}

TEST_CASE("strategy JSON round trip") {
  Rng rng(71);
  auto s = test_support::random_strategy(3, 2, rng);
  Json j = to_json(s);
  auto back = strategy_from_json(j);
  CHECK(back.n_inputs() == 3);
  CHECK(back.internal_dim() == 2);
  CHECK((back.weights() - s.weights()).norm() == Approx(0.0).margin(1e-15));
  for (int i = 0; i < 3; ++i)
    CHECK((back.encoded_state(i) - s.encoded_state(i)).norm() == Approx(0.0).margin(1e-15));
}

TEST_CASE("polytope report carries the geometry") {
  auto poly = vertices_of_C(2, 1);
  enumerate_facets(poly);
  Json j = polytope_report(poly, true);
  CHECK(j["ambient_dim"] == 4);
  CHECK(j["affine_dim"] == 3);
  CHECK(j["n_vertices"] == 6);
  CHECK(j["facets"].size() == 8);
  CHECK(j["f_vector"] == Json::array({6, 12, 8}));
}

TEST_CASE("membership certificate JSON") {
  auto inside = membership_C(RationalBehavior::uniform(2), 2, 1);
  Json j = to_json(inside);
  CHECK(j["member"] == true);
  CHECK(j.contains("weights"));
  auto outside = membership_C(to_behavior<Rational>(BooleanFunction::conjunction(2)), 2, 1);
  Json j2 = to_json(outside);
  CHECK(j2["member"] == false);
  CHECK(j2.contains("separating_normal"));
}

TEST_CASE("LP report fields") {
  Json j = lp_report(solve_second_order_lp(4));
  CHECK(j["N"] == 4);
  CHECK(j["delta"] == "1/15");
  CHECK(j["z"] == Json::array({"5/6", "1/12", "-1/12"}));
  CHECK(j["tight_constraints"].size() == 3);
}
