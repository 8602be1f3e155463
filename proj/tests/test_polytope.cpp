#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "test_support.hpp"

using namespace carriers;
using test_support::Rng;

namespace {

std::set<RatVec> vertex_set(const RationalPolytope& p) {
  return {p.vertices().begin(), p.vertices().end()};
}

Rational facet_eval(const Facet& f, const RatVec& v) {
  Rational dot(0);
  for (size_t j = 0; j < v.size(); ++j) dot += f.normal[j] * v[j];
  return dot;
}

}  // namespace

TEST_CASE("vertex counts of the small classical polytopes") {
  CHECK(vertices_of_C(1, 1).vertices().size() == 4);
  CHECK(vertices_of_C(2, 1).vertices().size() == 6);
  CHECK(vertices_of_C(3, 2).vertices().size() == 38);
}

TEST_CASE("affine dimensions") {
  CHECK(vertices_of_C(1, 1).affine_dim() == 2);
  CHECK(vertices_of_C(2, 1).affine_dim() == 3);
  CHECK(vertices_of_C(2, 2).affine_dim() == 4);
}

TEST_CASE("symmetry action on behaviors") {
  auto and_beh = to_behavior<Rational>(BooleanFunction::conjunction(2));

  HyperoctahedralElement id = HyperoctahedralElement::identity(2);
  CHECK(apply_symmetry(id, and_beh) == and_beh);

  // flipping both sites turns AND into the all-zeros detector
  HyperoctahedralElement flip = id;
  flip.flips = {true, true};
  auto flipped = apply_symmetry(flip, and_beh);
  BooleanFunction nor(2);
  nor.set(0, true);
  CHECK(flipped == to_behavior<Rational>(nor));
  CHECK(apply_symmetry(flip, flipped) == and_beh);  // self-inverse element

  // swapping sites moves the dictator
  HyperoctahedralElement swap = id;
  swap.permutation = {1, 0};
  CHECK(apply_symmetry(swap, to_behavior<Rational>(BooleanFunction::dictator(2, 0))) ==
        to_behavior<Rational>(BooleanFunction::dictator(2, 1)));
}

TEST_CASE("inversion symmetry") {
  auto zero = to_behavior<Rational>(BooleanFunction::constant(2, false));
  auto one = to_behavior<Rational>(BooleanFunction::constant(2, true));
  CHECK(apply_inversion(zero) == one);
  CHECK(apply_inversion(RationalBehavior::uniform(3)) == RationalBehavior::uniform(3));
  auto nand_beh = apply_inversion(to_behavior<Rational>(BooleanFunction::conjunction(2)));
  BooleanFunction nand(2, {true, true, true, false});
  CHECK(nand_beh == to_behavior<Rational>(nand));
}

TEST_CASE("the group action permutes each vertex set") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 3);
    const int k = 1 + static_cast<int>(rng.next() % std::min(n, 2));
    auto poly = vertices_of_C(n, k);
    auto elem = test_support::random_element(n, rng);
    std::set<RatVec> image;
    for (const auto& v : poly.vertices()) {
      RationalBehavior beh(n, v);
      image.insert(apply_symmetry(elem, beh).p1_table());
    }
    CHECK(image == vertex_set(poly));
  }
}

TEST_CASE("hull construction reproduces the junta vertices") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
    auto hull = embedded_hypercube_vertices(n, k);
    auto poly = vertices_of_C(n, k);
    std::set<RatVec> hull_set;
    for (const auto& b : hull) hull_set.insert(b.p1_table());
    CHECK(hull_set == vertex_set(poly));
  }
  // K = N needs no embedding: the single hypercube carries all functions
  CHECK(embedded_hypercube_vertices(2, 2).size() == 16);
}

TEST_CASE("facets of the square and the octahedron") {
  auto square = vertices_of_C(1, 1);
  enumerate_facets(square);
  CHECK(square.facets().size() == 4);
  auto fv = f_vector(square);
  CHECK(fv == std::vector<uint64_t>({4, 4}));

  auto octa = vertices_of_C(2, 1);
  enumerate_facets(octa);
  CHECK(octa.facets().size() == 8);
  CHECK(f_vector(octa) == std::vector<uint64_t>({6, 12, 8}));
}

TEST_CASE("every facet is valid and saturated by enough vertices") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
    auto poly = vertices_of_C(n, k);
    enumerate_facets(poly);
    const int dim = poly.affine_dim();
    for (const auto& f : poly.facets()) {
      std::vector<RatVec> tight;
      for (const auto& v : poly.vertices()) {
        Rational val = facet_eval(f, v);
        CHECK(val <= f.offset);
        if (val == f.offset) tight.push_back(v);
      }
      CHECK(static_cast<int>(tight.size()) >= dim);
      CHECK(affine_dimension(tight) == dim - 1);
    }
  }
}

TEST_CASE("facet budget guards") {
  auto big = vertices_of_C(3, 2);
  CHECK_THROWS_AS(enumerate_facets(big, 10), BudgetError);
  auto full = vertices_of_C(2, 2);  // 4-dimensional, 16 vertices: fine
  CHECK_NOTHROW(enumerate_facets(full));
}

TEST_CASE("cross-polytope shape of C_{N,1}") {
  for (int n : {2, 3}) {
    auto poly = vertices_of_C(n, 1);
    CHECK(poly.vertices().size() == static_cast<size_t>(2 * n + 2));
    CHECK(poly.affine_dim() == n + 1);
    enumerate_facets(poly);
    CHECK(poly.facets().size() == size_t{1} << (n + 1));
  }
}

TEST_CASE("membership: vertices certify themselves") {
  auto poly = vertices_of_C(2, 1);
  for (const auto& v : poly.vertices()) {
    auto cert = membership_C(RationalBehavior(2, v), 2, 1);
    REQUIRE(cert.member);
    int support = 0;
    for (size_t i = 0; i < cert.weights.size(); ++i) {
      if (cert.weights[i] == 0) continue;
      ++support;
      CHECK(cert.weights[i] == 1);
      CHECK(cert.vertex_list[i] == v);
    }
    CHECK(support == 1);
    CHECK(cert.boundary);  // vertices sit on the boundary
  }
}

TEST_CASE("membership: uniform behavior mixes the two constants") {
  auto cert = membership_C(RationalBehavior::uniform(3), 3, 0);
  REQUIRE(cert.member);
  Rational total(0);
  for (const auto& w : cert.weights) total += w;
  CHECK(total == 1);
  CHECK_FALSE(cert.boundary);
}

TEST_CASE("membership certificates reproduce the behavior exactly") {
  Rng rng(33);
  auto poly = vertices_of_C(3, 2);
  const auto& verts = poly.vertices();
  // random convex combinations must come back as members
  for (int trial = 0; trial < 5; ++trial) {
    RatVec point(8, Rational(0));
    Rational total(0);
    std::vector<Rational> coeff(verts.size(), Rational(0));
    for (int pick = 0; pick < 4; ++pick) {
      size_t idx = rng.next() % verts.size();
      Rational w(1 + static_cast<int>(rng.next() % 5));
      coeff[idx] += w;
      total += w;
    }
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = 0; j < 8; ++j) point[j] += coeff[i] * verts[i][j] / total;
    auto cert = membership_C(RationalBehavior(3, point), 3, 2);
    REQUIRE(cert.member);
    RatVec rebuilt(8, Rational(0));
    for (size_t i = 0; i < cert.weights.size(); ++i)
      for (size_t j = 0; j < 8; ++j) rebuilt[j] += cert.weights[i] * cert.vertex_list[i][j];
    CHECK(rebuilt == point);
  }
}

TEST_CASE("boundary flag distinguishes facet points from interior points") {
  // square: edge midpoint vs center
  auto mid = membership_C(RationalBehavior(1, {Rational(0), Rational(1, 2)}), 1, 1);
  REQUIRE(mid.member);
  CHECK(mid.boundary);
  auto center = membership_C(RationalBehavior::uniform(1), 1, 1);
  REQUIRE(center.member);
  CHECK_FALSE(center.boundary);
}

TEST_CASE("junta vertices remain members one level up") {
  for (const auto& f : enumerate_k_juntas(3, 1)) {
    auto cert = membership_C(to_behavior<Rational>(f), 3, 2);
    CHECK(cert.member);
  }
}

TEST_CASE("the second-order optimum escapes C_{4,3}") {
  auto beh = reconstruct_behavior(zstar_closed_form(4));
  auto cert = membership_C(beh, 4, 3);
  REQUIRE_FALSE(cert.member);
  // the certificate must separate strictly and hold on every vertex
  Rational at_beh(0);
  for (size_t j = 0; j < beh.table_size(); ++j) at_beh += cert.separating_normal[j] * beh.p1(j);
  CHECK(at_beh > cert.separating_offset);
  for (const auto& v : cert.vertex_list) {
    Rational at_v(0);
    for (size_t j = 0; j < v.size(); ++j) at_v += cert.separating_normal[j] * v[j];
    CHECK(at_v <= cert.separating_offset);
  }
}

TEST_CASE("float membership fallback agrees on clear cases") {
  MembershipOptions opts;
  opts.float_mode = true;
  auto inside = membership_C(RationalBehavior::uniform(2), 2, 1, opts);
  CHECK(inside.member);
  auto outside = membership_C(to_behavior<Rational>(BooleanFunction::conjunction(2)), 2, 1, opts);
  CHECK_FALSE(outside.member);
}

TEST_CASE("every junta vertex passes the exact interference test at its arity") {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= std::min(n, 2); ++k) {
      for (const auto& f : enumerate_k_juntas(n, k)) {
        CHECK(is_member_J(to_behavior<Rational>(f), k));
      }
    }
  }
}
