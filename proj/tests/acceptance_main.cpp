// Acceptance suite: the toolkit's headline results, each checked end to end
// at its stated tolerance. Prints one PASS/FAIL line per criterion and
// returns the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "carriers/carriers.hpp"
#include "test_support.hpp"

using namespace carriers;
using test_support::Rng;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::vector<std::string> details;

void run(const std::string& name, const std::function<bool()>& body) {
  details.clear();
  const auto start = Clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s %-58s [%7.2f s]%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs, note.c_str());
  for (const auto& d : details) std::printf("     failed: %s\n", d.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool check(bool cond, const std::string& what) {
  if (!cond) details.push_back(what);
  return cond;
}

}  // namespace

int main() {
  // 1. Junta counts: the formula, the enumeration, and the known values.
  run("1 junta counts", [] {
    const auto t0 = Clock::now();
    bool ok = check(count_k_juntas(3, 2) == 38, "count(3,2) == 38");
    ok &= check(enumerate_k_juntas(3, 2).size() == 38, "enumeration(3,2) has 38 entries");
    for (int n = 1; n <= 8; ++n)
      ok &= check(count_k_juntas(n, 1) == 2 * n + 2, "count(N,1) == 2N+2 at N=" + std::to_string(n));
    ok &= check(count_k_juntas(4, 3) == 942, "count(4,3) == 942");
    ok &= check(enumerate_k_juntas(4, 3).size() == 942, "enumeration(4,3) has 942 entries");
    ok &= check(std::chrono::duration<double>(Clock::now() - t0).count() < 10.0, "under 10 s");
    return ok;
  });

  // 2. Exact geometry of C_{3,2}.
  run("2 C_{3,2} affine dimension and f-vector", [] {
    const auto t0 = Clock::now();
    auto poly = vertices_of_C(3, 2);
    bool ok = check(poly.affine_dim() == 7, "affine dimension 7");
    enumerate_facets(poly);
    const std::vector<uint64_t> expected{38, 408, 1608, 2764, 2208, 776, 96};
    ok &= check(f_vector(poly) == expected, "f-vector (38,408,1608,2764,2208,776,96)");
    ok &= check(std::chrono::duration<double>(Clock::now() - t0).count() < 300.0, "under 5 min");
    return ok;
  });

  // 3. C_{N,1} is the (N+1)-dimensional cross-polytope.
  run("3 C_{N,1} cross-polytopes (N = 2, 3)", [] {
    bool ok = true;
    for (int n : {2, 3}) {
      auto poly = vertices_of_C(n, 1);
      ok &= check(poly.vertices().size() == static_cast<size_t>(2 * n + 2), "2N+2 vertices");
      ok &= check(poly.affine_dim() == n + 1, "dimension N+1");
      enumerate_facets(poly);
      ok &= check(poly.facets().size() == size_t{1} << (n + 1), "2^{N+1} facets");
    }
    return ok;
  });

  // 4. Symmetric-strategy closed forms against dense linear algebra.
  run("4 symmetric closed forms (values and trace norm)", [] {
    bool ok = check(optimal_symmetric_violation_exact(2) == Rational(1, 3), "delta(2) == 1/3");
    ok &= check(optimal_symmetric_violation_exact(3) == Rational(1, 6), "delta(3) == 1/6");
    for (int n = 4; n <= 12; ++n)
      ok &= check(optimal_symmetric_violation_exact(n) ==
                      Rational(1, BigInt(n + 1) * (BigInt(n) * n - 3 * n + 1)),
                  "delta(N) closed form at N=" + std::to_string(n));
    Rng rng(401);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.next() % 9);
      const double theta = rng.uniform(0.0, 2.0 * M_PI);
      const double phi = rng.uniform(0.0, 2.0 * M_PI);
      const double psi = rng.uniform(0.0, 2.0 * M_PI);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(symmetric_helstrom_matrix(n, theta, phi, psi),
                                                Eigen::EigenvaluesOnly);
      const double dense = es.eigenvalues().cwiseAbs().sum();
      ok &= check(std::abs(symmetric_trace_norm(n, theta, phi) - dense) <= 1e-10,
                  "closed-form trace norm vs eigensolver");
      if (!ok) break;
    }
    return ok;
  });

  // 5. The restarted optimizer recovers the symmetric optimum.
  run("5 optimizer recovery (N = 4..8, d = 2, 64 restarts)", [] {
    bool ok = true;
    for (int n = 4; n <= 8; ++n) {
      ViolationOptions opts;
      opts.symmetric_unitaries = true;
      opts.symmetric_weights = true;
      opts.restarts = 64;
      opts.seed = 2026;
      const auto t0 = Clock::now();
      auto res = optimize_violation(n, 2, opts);
      const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
      ok &= check(std::abs(res.delta - optimal_symmetric_violation(n)) <= 1e-6,
                  "recovered closed form at N=" + std::to_string(n));
      ok &= check(secs < 120.0, "runtime under two minutes at N=" + std::to_string(n));
    }
    return ok;
  });

  // 6. Larger internal spaces do not push past the symmetric optimum, and
  //    two dimensions dominate one under matched budgets.
  run("6 dimension ceiling (d in {1,2,3,5}, N = 4..6)", [] {
    bool ok = true;
    for (int n = 4; n <= 6; ++n) {
      double best_d1 = 0.0, best_d2 = 0.0;
      for (int d : {1, 2, 3, 5}) {
        ViolationOptions opts;
        opts.restarts = 64;
        opts.seed = 2026;
        auto res = optimize_violation(n, d, opts);
        ok &= check(res.delta <= optimal_symmetric_violation(n) + 1e-4,
                    "ceiling at N=" + std::to_string(n) + " d=" + std::to_string(d));
        if (d == 1) best_d1 = res.delta;
        if (d == 2) best_d2 = res.delta;
      }
      ok &= check(best_d2 >= best_d1, "d=2 dominates d=1 at N=" + std::to_string(n));
    }
    return ok;
  });

  // 7. The exact second-order program and its closed forms.
  run("7 second-order LP exactness (N = 4..30)", [] {
    const auto t0 = Clock::now();
    bool ok = true;
    for (int n = 4; n <= 30; ++n) {
      auto sol = solve_second_order_lp(n);
      ok &= check(sol.delta == Rational(2, BigInt(n - 2) * (n - 1) * (n + 1)),
                  "delta closed form at N=" + std::to_string(n));
      auto zs = zstar_closed_form(n);
      ok &= check(sol.z.z0 == zs.z0 && sol.z.z1 == zs.z1 && sol.z.z2 == zs.z2,
                  "argmax == z* at N=" + std::to_string(n));
      auto profile = reconstruct_profile(sol.z);
      ok &= check(Rational(1) - profile[0] == Rational(2, BigInt(n) * n - 3 * n + 2),
                  "P(0|0...0) at N=" + std::to_string(n));
      ok &= check(profile[1] == 1, "weight-one entries at N=" + std::to_string(n));
    }
    ok &= check(std::chrono::duration<double>(Clock::now() - t0).count() < 5.0, "under 5 s");
    return ok;
  });

  // 8. Asymptotics: the interference bound is twice the symmetric optimum.
  run("8 asymptotic ratio at N = 50", [] {
    const Rational ratio = second_order_violation_bound(50) / optimal_symmetric_violation_exact(50);
    return check(ratio > Rational(19, 10) && ratio < Rational(21, 10),
                 "ratio in [1.9, 2.1], got " + rational_to_string(ratio));
  });

  // 9. Inclusions: quantum behaviors inside J_{N,2}; junta vertices inside
  //    J_{N,K}; the hull construction matches the enumeration.
  run("9 inclusion suite", [] {
    bool ok = true;
    Rng rng(901);
    auto games = std::vector<OracleGame<double>>();
    for (int n = 0; n <= 5; ++n)
      games.push_back(n >= 2 ? to_double(fingerprinting_game(n)) : OracleGame<double>{});
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + static_cast<int>(rng.next() % 4);
      const int d = 1 + static_cast<int>(rng.next() % 3);
      auto beh = strategy_behavior(test_support::random_strategy(n, d, rng), games[n]);
      ok &= check(is_member_J(beh, 2, 1e-9), "strategy behavior in J_{N,2}");
      if (!ok) break;
    }
    for (int n = 1; n <= 4 && ok; ++n)
      for (int k = 0; k <= n; ++k)
        for (const auto& f : enumerate_k_juntas(n, k, uint64_t{1} << 17))
          ok &= is_member_J(to_behavior<Rational>(f), k);
    ok = check(ok, "every junta vertex passes its exact interference test");
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
      std::set<RatVec> hull;
      for (const auto& b : embedded_hypercube_vertices(n, k)) hull.insert(b.p1_table());
      const RationalPolytope poly = vertices_of_C(n, k);
      std::set<RatVec> enumerated;
      for (const auto& v : poly.vertices()) enumerated.insert(v);
      ok &= check(hull == enumerated,
                  "hull vertices == junta vertices at (N,K)=(" + std::to_string(n) + "," +
                      std::to_string(k) + ")");
    }
    return ok;
  });

  // 10. Hyperplane-game duality and the exact classical bound.
  run("10 game duality", [] {
    bool ok = true;
    Rng rng(1001);
    int tested = 0;
    while (tested < 200) {
      const int n = 1 + static_cast<int>(rng.next() % 3);
      const size_t size = size_t{1} << n;
      Hyperplane<double> h;
      h.n_inputs = n;
      h.b0.resize(size);
      h.b1.resize(size);
      for (size_t x = 0; x < size; ++x) {
        h.b0[x] = rng.uniform(-1.0, 1.0);
        h.b1[x] = rng.uniform(-1.0, 1.0);
      }
      h.offset = rng.uniform(-1.0, 1.0);
      auto g = hyperplane_to_game(h);
      ++tested;
      double total = 0.0;
      for (double w : g.weights) {
        ok &= w >= 0.0;
        total += w;
      }
      ok &= std::abs(total - 1.0) <= 1e-12;
      double denom = 0.0, min_sum = 0.0;
      for (size_t x = 0; x < size; ++x) {
        denom += std::abs(h.b0[x] - h.b1[x]);
        min_sum += std::min(h.b0[x], h.b1[x]);
      }
      for (int probe = 0; probe < 3; ++probe) {
        auto beh = test_support::random_behavior(n, rng);
        double lhs = 0.0;
        for (size_t x = 0; x < size; ++x) lhs += h.b1[x] * beh.p1(x) + h.b0[x] * beh.p0(x);
        ok &= std::abs(game_value(g, beh) - (lhs - min_sum) / denom) <= 1e-10;
      }
      if (!ok) break;
    }
    ok = check(ok, "200 random hyperplanes round-trip");
    for (int n = 2; n <= 4; ++n)
      ok &= check(classical_bound(fingerprinting_game(n), n - 1) == Rational(n, n + 1),
                  "classical bound N/(N+1) at N=" + std::to_string(n));
    return ok;
  });

  // 11. The optimality re-check of the second-order optimum.
  run("11 neighbor-vertex optimality (N = 4..10)", [] {
    bool ok = true;
    for (int n = 4; n <= 10; ++n) {
      auto rep = neighbor_optimality_check(n);
      ok &= check(rep.all_ok, "all three edges capped at N=" + std::to_string(n));
      for (const auto& e : rep.edges) ok &= e.objective_slope > 0 && e.forces_nonpositive;
    }
    return ok;
  });

  if (failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
