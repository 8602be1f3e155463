#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "carriers/behavior.hpp"
#include "carriers/rational.hpp"
#include "carriers/simplex.hpp"

namespace carriers {

/// A permutation-symmetric spectrum truncated at weight two: z_w is the
/// common value of the subset-sum coefficient on every mask of weight w,
/// for w = 0, 1, 2 (all higher weights vanish).
struct SymmetricSpectrum {
  int n_inputs = 0;
  Rational z0, z1, z2;
};

/// One box constraint of the symmetric program. For every Hamming weight h
/// the reconstructed entry a0 z0 + a1 z1 + a2 z2 must lie in [0, 1].
struct SymmetricConstraint {
  int h = 0;
  Rational a0, a1, a2;
};

/// The weight-two character sum over a mask of weight h counts agreeing
/// pairs minus split pairs: C(h,2) + C(N-h,2) - h(N-h) = N(N-1)/2 - 2h(N-h).
inline Rational weight2_character_sum(int n, int h) {
  return Rational(BigInt(n) * (n - 1), 2) - Rational(2 * h * (n - h));
}

inline std::vector<SymmetricConstraint> lp_constraints(int n) {
  if (n < 1) throw std::invalid_argument("lp_constraints: need N >= 1");
  std::vector<SymmetricConstraint> rows;
  rows.reserve(n + 1);
  for (int h = 0; h <= n; ++h)
    rows.push_back({h, Rational(1), Rational(n - 2 * h), weight2_character_sum(n, h)});
  return rows;
}

/// Coefficients of the violation of the fingerprinting inequality as a
/// linear functional of (z0, z1, z2):
/// ((N-1) z0 + (N-3)N z1 + (N-5)N(N-1)/2 z2 - N + 1) / (N+1).
struct SymmetricObjective {
  Rational c0, c1, c2, constant;
  Rational value(const SymmetricSpectrum& z) const {
    return c0 * z.z0 + c1 * z.z1 + c2 * z.z2 + constant;
  }
};

inline SymmetricObjective objective_coefficients(int n) {
  if (n < 1) throw std::invalid_argument("objective_coefficients: need N >= 1");
  const Rational scale(1, n + 1);
  SymmetricObjective obj;
  obj.c0 = scale * (n - 1);
  obj.c1 = scale * Rational(BigInt(n) * (n - 3));
  obj.c2 = scale * Rational(BigInt(n) * (n - 1) * (n - 5), 2);
  obj.constant = scale * (1 - n);
  return obj;
}

enum class TightSide { Lower, Upper };

struct TightConstraint {
  int h = 0;
  TightSide side = TightSide::Lower;
};

struct SecondOrderLpSolution {
  int n_inputs = 0;
  Rational delta;
  SymmetricSpectrum z;
  std::vector<TightConstraint> tight;
};

/// Exact-rational entries of the reconstructed behavior, by Hamming weight:
/// P(1 | weight h) = z0 + z1 (N - 2h) + z2 (N(N-1)/2 - 2h(N-h)).
inline std::vector<Rational> reconstruct_profile(const SymmetricSpectrum& z) {
  std::vector<Rational> profile(z.n_inputs + 1);
  for (int h = 0; h <= z.n_inputs; ++h)
    profile[h] = z.z0 + z.z1 * (z.n_inputs - 2 * h) + z.z2 * weight2_character_sum(z.n_inputs, h);
  return profile;
}

/// Materializes the symmetric behavior; the table has 2^N entries, so this
/// is limited to N <= 20. Large-N checks should stay on the profile.
inline RationalBehavior reconstruct_behavior(const SymmetricSpectrum& z) {
  if (z.n_inputs > 20) throw std::invalid_argument("reconstruct_behavior: table too large beyond N = 20");
  std::vector<Rational> profile = reconstruct_profile(z);
  RatVec p1(size_t{1} << z.n_inputs);
  for (size_t x = 0; x < p1.size(); ++x) p1[x] = profile[std::popcount(x)];
  return RationalBehavior(z.n_inputs, std::move(p1));
}

/// Krawtchouk sum Σ_i (-1)^i C(w,i) C(N-w,h-i): the subset-sum transform of
/// a symmetric table, collapsed to weight classes. Lets exact spectrum
/// checks run at any N without a 2^N table.
inline Rational krawtchouk(int n, int w, int h) {
  BigInt total = 0;
  for (int i = 0; i <= std::min(w, h); ++i) {
    BigInt term = binomial(w, i) * binomial(n - w, h - i);
    total += (i & 1) ? -term : term;
  }
  return Rational(total);
}

/// z-scale spectrum of a symmetric profile: z_w = 2^{-N} Σ_h K(w,h) profile_h
/// weighted over the masks in each class.
inline std::vector<Rational> profile_spectrum(int n, const std::vector<Rational>& profile) {
  if (static_cast<int>(profile.size()) != n + 1) throw std::invalid_argument("profile has wrong length");
  std::vector<Rational> z(n + 1);
  const Rational scale(1, BigInt(1) << n);
  for (int w = 0; w <= n; ++w) {
    Rational acc(0);
    for (int h = 0; h <= n; ++h) acc += krawtchouk(n, w, h) * profile[h];
    z[w] = scale * acc;
  }
  return z;
}

namespace detail {

/// Intersections of constraint-plane triples, kept in int64 Cramer form.
/// Coefficients are O(N^2) and the determinants O(N^6), so the integer path
/// is safe well past N = 100; feasible candidates are handed back as exact
/// rationals.
inline std::vector<RatVec> symmetric_lp_vertices_int64(int n,
                                                       const std::vector<SymmetricConstraint>& rows) {
  struct Plane {
    int64_t a1, a2, rhs;
  };
  std::vector<Plane> planes;
  std::vector<std::array<int64_t, 2>> coeff(n + 1);
  for (const auto& r : rows) {
    const int64_t a1 = r.a1.convert_to<int64_t>();
    const int64_t a2 = r.a2.convert_to<int64_t>();
    coeff[r.h] = {a1, a2};
    planes.push_back({a1, a2, 1});
    planes.push_back({a1, a2, 0});
  }
  std::vector<RatVec> out;
  const size_t m = planes.size();
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      for (size_t k = j + 1; k < m; ++k) {
        const Plane &p = planes[i], &q = planes[j], &r = planes[k];
        // a0 is always 1; expand the 3x3 determinant along that column.
        int64_t det = (q.a1 * r.a2 - q.a2 * r.a1) - (p.a1 * r.a2 - p.a2 * r.a1) +
                      (p.a1 * q.a2 - p.a2 * q.a1);
        if (det == 0) continue;
        int64_t d0 = p.rhs * (q.a1 * r.a2 - q.a2 * r.a1) - q.rhs * (p.a1 * r.a2 - p.a2 * r.a1) +
                     r.rhs * (p.a1 * q.a2 - p.a2 * q.a1);
        int64_t d1 = (q.rhs * r.a2 - q.a2 * r.rhs) - (p.rhs * r.a2 - p.a2 * r.rhs) +
                     (p.rhs * q.a2 - p.a2 * q.rhs);
        int64_t d2 = (q.a1 * r.rhs - q.rhs * r.a1) - (p.a1 * r.rhs - p.rhs * r.a1) +
                     (p.a1 * q.rhs - p.rhs * q.a1);
        if (det < 0) {
          det = -det;
          d0 = -d0;
          d1 = -d1;
          d2 = -d2;
        }
        bool ok = true;
        for (int h = 0; h <= n && ok; ++h) {
          const int64_t val = d0 + coeff[h][0] * d1 + coeff[h][1] * d2;
          ok = val >= 0 && val <= det;
        }
        if (!ok) continue;
        out.push_back(RatVec{Rational(d0, det), Rational(d1, det), Rational(d2, det)});
      }
  return out;
}

inline std::vector<RatVec> symmetric_lp_vertices_rational(
    const std::vector<SymmetricConstraint>& rows) {
  struct Plane {
    RatVec a;
    Rational rhs;
  };
  std::vector<Plane> planes;
  for (const auto& r : rows) {
    planes.push_back({{r.a0, r.a1, r.a2}, Rational(1)});
    planes.push_back({{r.a0, r.a1, r.a2}, Rational(0)});
  }
  auto feasible = [&](const RatVec& z) {
    for (const auto& r : rows) {
      Rational v = r.a0 * z[0] + r.a1 * z[1] + r.a2 * z[2];
      if (v < 0 || v > 1) return false;
    }
    return true;
  };
  std::vector<RatVec> out;
  for (size_t i = 0; i < planes.size(); ++i)
    for (size_t j = i + 1; j < planes.size(); ++j)
      for (size_t k = j + 1; k < planes.size(); ++k) {
        RatMatrix a{planes[i].a, planes[j].a, planes[k].a};
        RatVec b{planes[i].rhs, planes[j].rhs, planes[k].rhs}, z;
        if (!solve_square(a, b, z)) continue;
        if (feasible(z)) out.push_back(z);
      }
  return out;
}

}  // namespace detail

/// Exact vertex-enumeration solver for the three-variable program: every
/// triple of tight planes gives a candidate, feasible candidates compete on
/// the objective.
inline SecondOrderLpSolution solve_second_order_lp(int n) {
  if (n < 2) throw std::invalid_argument("solve_second_order_lp: need N >= 2");
  auto rows = lp_constraints(n);
  auto obj = objective_coefficients(n);

  std::vector<RatVec> candidates = n <= 100 ? detail::symmetric_lp_vertices_int64(n, rows)
                                            : detail::symmetric_lp_vertices_rational(rows);
  bool found = false;
  RatVec best_z;
  Rational best_delta;
  for (const auto& z : candidates) {
    Rational delta = obj.c0 * z[0] + obj.c1 * z[1] + obj.c2 * z[2] + obj.constant;
    if (!found || delta > best_delta || (delta == best_delta && z < best_z)) {
      found = true;
      best_delta = delta;
      best_z = z;
    }
  }
  if (!found) throw std::logic_error("symmetric interference LP: no feasible vertex (must not happen)");

  SecondOrderLpSolution sol;
  sol.n_inputs = n;
  sol.delta = best_delta;
  sol.z = SymmetricSpectrum{n, best_z[0], best_z[1], best_z[2]};
  for (const auto& r : rows) {
    Rational v = r.a0 * best_z[0] + r.a1 * best_z[1] + r.a2 * best_z[2];
    if (v == 1) sol.tight.push_back({r.h, TightSide::Upper});
    if (v == 0) sol.tight.push_back({r.h, TightSide::Lower});
  }
  return sol;
}

/// Simplex cross-check for the same program (exact arithmetic, free z).
inline Rational solve_second_order_lp_simplex(int n) {
  if (n < 2) throw std::invalid_argument("solve_second_order_lp_simplex: need N >= 2");
  auto rows = lp_constraints(n);
  auto obj = objective_coefficients(n);
  RatMatrix a;
  RatVec b;
  for (const auto& r : rows) {
    a.push_back({r.a0, r.a1, r.a2});
    b.push_back(Rational(1));
    a.push_back({-r.a0, -r.a1, -r.a2});
    b.push_back(Rational(0));
  }
  LpSolution<Rational> sol = lp_max_ineq_free(a, b, RatVec{obj.c0, obj.c1, obj.c2});
  if (sol.status != LpStatus::Optimal) throw std::logic_error("symmetric interference LP: simplex failed");
  return sol.objective + obj.constant;
}

/// Closed form of the optimizer: ((3N²-7N)/2, N-3, -1) / (2N²-6N+4).
inline SymmetricSpectrum zstar_closed_form(int n) {
  if (n < 4) throw std::invalid_argument("zstar_closed_form: valid for N > 3");
  const Rational den(BigInt(2) * n * n - 6 * n + 4);
  return SymmetricSpectrum{n, Rational(BigInt(3) * n * n - 7 * n, 2) / den, Rational(n - 3) / den,
                           Rational(-1) / den};
}

/// 2 / ((N-2)(N-1)(N+1)): the exact optimum of the symmetric program.
inline Rational second_order_violation_bound(int n) {
  if (n < 4) throw std::invalid_argument("second_order_violation_bound: valid for N > 3");
  return Rational(2, BigInt(n - 2) * (n - 1) * (n + 1));
}

struct NeighborEdge {
  RatVec direction;             // edge direction out of z*, oriented toward larger objective
  Rational objective_slope;     // d(delta)/dt along the edge; positive by construction
  Rational binding_coefficient; // coefficient of t in the binding constraint
  bool forces_nonpositive = false;  // feasibility caps the edge at t <= 0
};

struct NeighborCheckReport {
  int n_inputs = 0;
  std::vector<NeighborEdge> edges;
  bool all_ok = false;
};

/// Machine re-check that z* is the LP optimum: each of the three edges out
/// of z* (cross products of the tight plane normals) increases the
/// objective only where feasibility already forbids movement.
inline NeighborCheckReport neighbor_optimality_check(int n) {
  if (n < 4) throw std::invalid_argument("neighbor_optimality_check: valid for N > 3");
  auto rows = lp_constraints(n);
  auto obj = objective_coefficients(n);
  const SymmetricSpectrum zs = zstar_closed_form(n);
  const RatVec z{zs.z0, zs.z1, zs.z2};

  // Tight planes at z*: upper bound at h=1 and h=2, lower bound at h=N.
  const RatVec n1{rows[1].a0, rows[1].a1, rows[1].a2};
  const RatVec n2{rows[2].a0, rows[2].a1, rows[2].a2};
  const RatVec n3{rows[n].a0, rows[n].a1, rows[n].a2};

  auto cross = [](const RatVec& u, const RatVec& v) {
    return RatVec{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  };
  auto dot3 = [](const RatVec& u, const RatVec& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; };
  const RatVec grad{obj.c0, obj.c1, obj.c2};

  struct EdgeSpec {
    RatVec a, b;       // the two planes staying tight along the edge
    const RatVec* cap; // the third plane, whose bound must cap the edge
    Rational cap_rhs;  // 1 for the upper bounds, 0 for the lower bound
    bool cap_is_upper;
  };
  std::vector<EdgeSpec> specs{{n1, n2, &n3, Rational(0), false},
                              {n1, n3, &n2, Rational(1), true},
                              {n2, n3, &n1, Rational(1), true}};

  NeighborCheckReport rep;
  rep.n_inputs = n;
  rep.all_ok = true;
  for (const auto& spec : specs) {
    NeighborEdge edge;
    edge.direction = cross(spec.a, spec.b);
    Rational slope = dot3(grad, edge.direction);
    if (slope < 0) {
      for (auto& c : edge.direction) c = -c;
      slope = -slope;
    }
    edge.objective_slope = slope;
    edge.binding_coefficient = dot3(*spec.cap, edge.direction);
    // Along z* + t·direction the binding constraint reads
    // cap(z*) + t·coefficient, with cap(z*) already at its bound.
    const Rational at_zstar = dot3(*spec.cap, z);
    const bool tight_at_bound = spec.cap_is_upper ? at_zstar == spec.cap_rhs : at_zstar == 0;
    edge.forces_nonpositive =
        tight_at_bound &&
        (spec.cap_is_upper ? edge.binding_coefficient > 0 : edge.binding_coefficient < 0);
    rep.all_ok = rep.all_ok && edge.forces_nonpositive && slope > 0;
    rep.edges.push_back(std::move(edge));
  }
  return rep;
}

}  // namespace carriers
