#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "carriers/behavior.hpp"
#include "carriers/polytope.hpp"
#include "carriers/simplex.hpp"

namespace carriers {

/// Outcome of a membership query against C_{N,K}. A member carries a convex
/// combination over the K-junta vertices that reproduces the behavior; a
/// non-member carries a separating hyperplane normal·q <= offset satisfied
/// by every vertex and violated by the query point.
struct MembershipCertificate {
  bool member = false;
  bool boundary = false;  // member sits on the relative boundary
  std::vector<RatVec> vertex_list;
  RatVec weights;
  RatVec separating_normal;
  Rational separating_offset = 0;
};

struct MembershipOptions {
  uint64_t junta_budget = kDefaultJuntaBudget;
  bool float_mode = false;  // double simplex with 1e-9 pivots, approximate weights
};

namespace detail {

template <class S>
void fill_columns(const std::vector<RatVec>& verts, std::vector<std::vector<S>>& a) {
  const size_t rows = verts[0].size() + 1;
  a.assign(rows, std::vector<S>(verts.size(), S(0)));
  for (size_t v = 0; v < verts.size(); ++v) {
    for (size_t r = 0; r < rows - 1; ++r) a[r][v] = S(verts[v][r]);
    a[rows - 1][v] = S(1);
  }
}

/// Relative-boundary test for a member p: maximize t with p + t(p - c) still
/// inside, c the vertex centroid. t can stay positive only off the boundary.
inline bool on_relative_boundary(const std::vector<RatVec>& verts, const RatVec& p) {
  const size_t dim = p.size();
  RatVec centroid(dim, Rational(0));
  for (const auto& v : verts)
    for (size_t j = 0; j < dim; ++j) centroid[j] += v[j];
  for (size_t j = 0; j < dim; ++j) centroid[j] /= Rational(verts.size());
  if (centroid == p) return false;

  // Columns: the vertices, then t with coefficient -(p - c); rows: the dim
  // coordinate equations, the weight normalization, and a cap t <= 1.
  const size_t rows = dim + 2, cols = verts.size() + 2;
  RatMatrix a(rows, RatVec(cols, Rational(0)));
  RatVec b(rows, Rational(0)), c(cols, Rational(0));
  for (size_t v = 0; v < verts.size(); ++v) {
    for (size_t r = 0; r < dim; ++r) a[r][v] = verts[v][r];
    a[dim][v] = 1;
  }
  for (size_t r = 0; r < dim; ++r) {
    a[r][verts.size()] = centroid[r] - p[r];
    b[r] = p[r];
  }
  b[dim] = 1;
  a[dim + 1][verts.size()] = 1;
  a[dim + 1][verts.size() + 1] = 1;  // slack
  b[dim + 1] = 1;
  c[verts.size()] = 1;

  LpSolution<Rational> sol = simplex_max_eq(a, b, c);
  if (sol.status != LpStatus::Optimal) throw std::logic_error("boundary probe LP did not solve");
  return sol.objective == 0;
}

}  // namespace detail

/// Decides beh ∈ C_{N,K} by an exact feasibility LP over the K-junta
/// vertices (Bland's rule simplex). Degenerate members on the boundary are
/// flagged; infeasibility returns a verified separating hyperplane.
inline MembershipCertificate membership_C(const RationalBehavior& beh, int n, int k,
                                          const MembershipOptions& opts = {}) {
  if (beh.n_inputs() != n) throw std::invalid_argument("membership_C: behavior arity mismatch");
  RationalPolytope poly = vertices_of_C(n, k, opts.junta_budget);
  const auto& verts = poly.vertices();
  const size_t dim = beh.table_size();

  MembershipCertificate cert;
  cert.vertex_list = verts;

  if (!opts.float_mode) {
    RatMatrix a;
    detail::fill_columns(verts, a);
    RatVec b(dim + 1);
    for (size_t r = 0; r < dim; ++r) b[r] = beh.p1(r);
    b[dim] = 1;
    LpSolution<Rational> sol = lp_feasible_eq(a, b);
    if (sol.status == LpStatus::Optimal) {
      cert.member = true;
      cert.weights = sol.x;
      cert.boundary = detail::on_relative_boundary(verts, beh.p1_table());
    } else {
      cert.member = false;
      cert.separating_normal.assign(sol.farkas.begin(), sol.farkas.end() - 1);
      cert.separating_offset = -sol.farkas.back();
    }
    return cert;
  }

  std::vector<std::vector<double>> a;
  detail::fill_columns(verts, a);
  std::vector<double> b(dim + 1);
  for (size_t r = 0; r < dim; ++r) b[r] = static_cast<double>(beh.p1(r));
  b[dim] = 1.0;
  LpSolution<double> sol = lp_feasible_eq(a, b);
  if (sol.status == LpStatus::Optimal) {
    cert.member = true;
    cert.weights.assign(sol.x.begin(), sol.x.end());
  } else {
    cert.member = false;
    cert.separating_normal.assign(sol.farkas.begin(), sol.farkas.end() - 1);
    cert.separating_offset = Rational(-sol.farkas.back());
  }
  return cert;
}

}  // namespace carriers
