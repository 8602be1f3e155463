#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "carriers/boolfun.hpp"
#include "carriers/errors.hpp"
#include "carriers/rational.hpp"
#include "carriers/symmetry.hpp"

namespace carriers {

/// One facet inequality normal·v <= offset, exact rationals.
struct Facet {
  RatVec normal;
  Rational offset;
};

inline constexpr size_t kDefaultFacetVertexBudget = 64;
inline constexpr int kMaxFacetDim = 8;

/// Exact affine dimension: rank of the difference set {v_i - v_0}.
inline int affine_dimension(const std::vector<RatVec>& points) {
  if (points.empty()) return -1;
  if (points.size() == 1) return 0;
  bool integral = true;
  for (const auto& p : points)
    for (const auto& q : p)
      if (denominator(q) != 1) integral = false;
  if (integral) {
    std::vector<std::vector<BigInt>> diffs(points.size() - 1, std::vector<BigInt>(points[0].size()));
    for (size_t i = 1; i < points.size(); ++i)
      for (size_t j = 0; j < points[0].size(); ++j)
        diffs[i - 1][j] = numerator(points[i][j]) - numerator(points[0][j]);
    return rank_of_int(std::move(diffs));
  }
  RatMatrix diffs(points.size() - 1, RatVec(points[0].size()));
  for (size_t i = 1; i < points.size(); ++i)
    for (size_t j = 0; j < points[0].size(); ++j) diffs[i - 1][j] = points[i][j] - points[0][j];
  return rank_of(std::move(diffs));
}

/// A polytope in vertex description over exact rationals; facets, affine
/// dimension and the f-vector are derived on demand. The ambient space is
/// the P' coordinate space of a behavior (dimension 2^N).
class RationalPolytope {
 public:
  RationalPolytope(int ambient_dim, std::vector<RatVec> vertices)
      : ambient_(ambient_dim), vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw std::invalid_argument("polytope needs at least one vertex");
    for (const auto& v : vertices_)
      if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("vertex has wrong dimension");
  }

  int ambient_dim() const { return ambient_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }

  int affine_dim() const {
    if (affine_dim_ < 0) affine_dim_ = affine_dimension(vertices_);
    return affine_dim_;
  }

  bool facets_computed() const { return facets_computed_; }
  const std::vector<Facet>& facets() const {
    if (!facets_computed_) throw std::logic_error("facets not computed; call enumerate_facets first");
    return facets_;
  }
  void set_facets(std::vector<Facet> f) {
    facets_ = std::move(f);
    facets_computed_ = true;
  }

 private:
  int ambient_;
  std::vector<RatVec> vertices_;
  mutable int affine_dim_ = -1;
  std::vector<Facet> facets_;
  bool facets_computed_ = false;
};

namespace detail {

/// Extreme rays of the pointed cone {y : row·y >= 0 for each row}, all
/// integer arithmetic. Rows must linearly span the space. Insertion keeps
/// the caller's row order; adjacency is the exact rank test.
inline std::vector<std::vector<BigInt>> double_description(const std::vector<std::vector<BigInt>>& rows) {
  const size_t m = rows.size();
  const size_t dim = rows[0].size();
  if (m > 64) throw BudgetError("double description limited to 64 inequalities");

  // Greedy: first `dim` linearly independent rows give the initial cone.
  std::vector<size_t> chosen;
  {
    std::vector<std::vector<BigInt>> acc;
    for (size_t i = 0; i < m && chosen.size() < dim; ++i) {
      acc.push_back(rows[i]);
      if (rank_of_int(acc) == static_cast<int>(acc.size()))
        chosen.push_back(i);
      else
        acc.pop_back();
    }
    if (chosen.size() != dim) throw std::logic_error("double description: rows do not span the space");
  }

  struct Ray {
    std::vector<BigInt> v;
    uint64_t tight = 0;  // over rows processed so far
  };

  auto canonical = [](std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& e : v) g = boost::multiprecision::gcd(g, abs(e));
    if (g > 1)
      for (auto& e : v) e /= g;
  };
  auto dot = [&](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    BigInt s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  // Initial rays: columns of the inverse of the chosen row matrix.
  std::vector<Ray> rays;
  {
    RatMatrix mat(dim, RatVec(dim));
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) mat[i][j] = Rational(rows[chosen[i]][j]);
    for (size_t k = 0; k < dim; ++k) {
      RatVec e(dim, Rational(0)), col;
      e[k] = 1;
      if (!solve_square(mat, e, col)) throw std::logic_error("double description: singular initial basis");
      RatVec canon = canonical_integer_direction(col);
      Ray r;
      r.v.resize(dim);
      for (size_t j = 0; j < dim; ++j) r.v[j] = numerator(canon[j]);
      rays.push_back(std::move(r));
    }
  }

  uint64_t processed = 0;
  auto mark_tight = [&](Ray& r) {
    r.tight = 0;
    for (size_t i = 0; i < m; ++i)
      if ((processed >> i) & 1 && dot(rows[i], r.v) == 0) r.tight |= uint64_t{1} << i;
  };
  for (size_t i : chosen) processed |= uint64_t{1} << i;
  for (auto& r : rays) mark_tight(r);

  // Row subsets for the adjacency rank test.
  auto rank_of_tight = [&](uint64_t mask) {
    std::vector<std::vector<BigInt>> sub;
    for (size_t i = 0; i < m; ++i)
      if ((mask >> i) & 1) sub.push_back(rows[i]);
    return sub.empty() ? 0 : rank_of_int(std::move(sub));
  };

  for (size_t t = 0; t < m; ++t) {
    if ((processed >> t) & 1) continue;
    std::vector<BigInt> dots(rays.size());
    for (size_t r = 0; r < rays.size(); ++r) dots[r] = dot(rows[t], rays[r].v);

    std::vector<Ray> next;
    std::vector<size_t> pos, neg;
    for (size_t r = 0; r < rays.size(); ++r) {
      if (dots[r] > 0)
        pos.push_back(r);
      else if (dots[r] < 0)
        neg.push_back(r);
    }
    processed |= uint64_t{1} << t;
    for (size_t r = 0; r < rays.size(); ++r) {
      if (dots[r] < 0) continue;
      Ray kept = rays[r];
      if (dots[r] == 0) kept.tight |= uint64_t{1} << t;
      next.push_back(std::move(kept));
    }
    for (size_t p : pos) {
      for (size_t n : neg) {
        const uint64_t common = rays[p].tight & rays[n].tight;
        if (static_cast<size_t>(std::popcount(common)) < dim - 2) continue;
        if (rank_of_tight(common) != static_cast<int>(dim) - 2) continue;
        Ray combo;
        combo.v.resize(dim);
        for (size_t j = 0; j < dim; ++j) combo.v[j] = dots[p] * rays[n].v[j] - dots[n] * rays[p].v[j];
        canonical(combo.v);
        mark_tight(combo);
        next.push_back(std::move(combo));
      }
    }
    rays = std::move(next);
  }

  std::vector<std::vector<BigInt>> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  return out;
}

}  // namespace detail

/// Complete irredundant facet list via the double description method run
/// inside the affine hull. Exact throughout; no floating point.
inline void enumerate_facets(RationalPolytope& p, size_t vertex_budget = kDefaultFacetVertexBudget) {
  const auto& verts = p.vertices();
  if (verts.size() > vertex_budget)
    throw BudgetError("facet enumeration budget: " + std::to_string(verts.size()) + " vertices > " +
                      std::to_string(vertex_budget));
  const int r = p.affine_dim();
  if (r > kMaxFacetDim) throw BudgetError("facet enumeration limited to affine dimension 8");
  if (r == 0) {
    p.set_facets({});
    return;
  }

  // Chart: row-reduce the difference set to find r pivot columns; projecting
  // onto those columns is a linear isomorphism of the affine hull.
  const RatVec& v0 = verts[0];
  std::vector<int> pivot_cols;
  {
    RatMatrix diffs(verts.size() - 1, RatVec(p.ambient_dim()));
    for (size_t i = 1; i < verts.size(); ++i)
      for (int j = 0; j < p.ambient_dim(); ++j) diffs[i - 1][j] = verts[i][j] - v0[j];
    size_t pr = 0;
    for (int c = 0; c < p.ambient_dim() && pr < diffs.size() && static_cast<int>(pivot_cols.size()) < r; ++c) {
      size_t piv = pr;
      while (piv < diffs.size() && diffs[piv][c] == 0) ++piv;
      if (piv == diffs.size()) continue;
      std::swap(diffs[pr], diffs[piv]);
      for (size_t r2 = 0; r2 < diffs.size(); ++r2) {
        if (r2 == pr || diffs[r2][c] == 0) continue;
        Rational f = diffs[r2][c] / diffs[pr][c];
        for (int c2 = 0; c2 < p.ambient_dim(); ++c2) diffs[r2][c2] -= f * diffs[pr][c2];
      }
      pivot_cols.push_back(c);
      ++pr;
    }
  }

  // Homogenized chart vertices (u_i | 1), scaled to integers, in vertex
  // order (callers sort vertices lexicographically beforehand).
  std::vector<std::vector<BigInt>> rows(verts.size(), std::vector<BigInt>(r + 1));
  for (size_t i = 0; i < verts.size(); ++i) {
    RatVec hom(r + 1);
    for (int k = 0; k < r; ++k) hom[k] = verts[i][pivot_cols[k]] - v0[pivot_cols[k]];
    hom[r] = 1;
    RatVec canon = canonical_integer_direction(hom);
    for (int k = 0; k <= r; ++k) rows[i][k] = numerator(canon[k]);
  }

  auto rays = detail::double_description(rows);

  std::vector<Facet> facets;
  facets.reserve(rays.size());
  for (const auto& ray : rays) {
    // Ray (a | c) certifies a·u + c >= 0 on the chart; as a facet of the
    // polytope: (-a)·u <= c, lifted back to ambient coordinates.
    Facet f;
    f.normal.assign(p.ambient_dim(), Rational(0));
    for (int k = 0; k < r; ++k) f.normal[pivot_cols[k]] = Rational(-ray[k]);
    f.offset = Rational(ray[r]);
    for (int k = 0; k < r; ++k) f.offset += f.normal[pivot_cols[k]] * v0[pivot_cols[k]];
    facets.push_back(std::move(f));
  }
  std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  });
  facets.erase(std::unique(facets.begin(), facets.end(),
                           [](const Facet& a, const Facet& b) {
                             return a.normal == b.normal && a.offset == b.offset;
                           }),
               facets.end());
  p.set_facets(std::move(facets));
}

/// Vertex incidence bitmask per facet (vertex i set iff the facet is tight).
inline std::vector<uint64_t> facet_incidence(const RationalPolytope& p) {
  const auto& verts = p.vertices();
  if (verts.size() > 64) throw BudgetError("incidence masks support at most 64 vertices");
  std::vector<uint64_t> masks;
  for (const auto& f : p.facets()) {
    uint64_t m = 0;
    for (size_t i = 0; i < verts.size(); ++i) {
      Rational dot(0);
      for (size_t j = 0; j < verts[i].size(); ++j) dot += f.normal[j] * verts[i][j];
      if (dot == f.offset) m |= uint64_t{1} << i;
      else if (dot > f.offset) throw std::logic_error("vertex violates a computed facet");
    }
    masks.push_back(m);
  }
  return masks;
}

/// Face counts by dimension 0..affine_dim-1, from the closure of the
/// vertex-facet incidence under intersection.
inline std::vector<uint64_t> f_vector(const RationalPolytope& p) {
  const int r = p.affine_dim();
  const auto& verts = p.vertices();
  std::vector<uint64_t> masks = facet_incidence(p);
  std::vector<uint64_t> counts(std::max(r, 0), 0);

  std::unordered_set<uint64_t> seen;
  std::queue<uint64_t> todo;
  for (uint64_t m : masks) {
    if (m && seen.insert(m).second) todo.push(m);
  }
  while (!todo.empty()) {
    uint64_t face = todo.front();
    todo.pop();
    for (uint64_t m : masks) {
      uint64_t sub = face & m;
      if (sub && sub != face && seen.insert(sub).second) todo.push(sub);
    }
  }

  for (uint64_t face : seen) {
    std::vector<RatVec> pts;
    for (size_t i = 0; i < verts.size(); ++i)
      if ((face >> i) & 1) pts.push_back(verts[i]);
    int d = affine_dimension(pts);
    if (d >= 0 && d < r) ++counts[d];
  }
  return counts;
}

/// Vertices of the classical polytope: the deterministic behaviors of all
/// K-juntas, as rational points in P' coordinates, lexicographic order.
inline RationalPolytope vertices_of_C(int n, int k, uint64_t budget = kDefaultJuntaBudget) {
  auto juntas = enumerate_k_juntas(n, k, budget);
  std::vector<RatVec> verts;
  verts.reserve(juntas.size());
  for (const auto& f : juntas) {
    RatVec v(f.table_size());
    for (size_t x = 0; x < f.table_size(); ++x) v[x] = Rational(f.value(x) ? 1 : 0);
    verts.push_back(std::move(v));
  }
  return RationalPolytope(1 << n, std::move(verts));
}

/// The vertex set of the hull construction: for every size-K support, the
/// full hypercube of behaviors on those sites, permuted into place and
/// deduplicated. Equals the K-junta vertex set.
inline std::vector<RationalBehavior> embedded_hypercube_vertices(int n, int k,
                                                                 uint64_t budget = kDefaultJuntaBudget) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("embedded_hypercube_vertices: bad arguments");
  const uint64_t candidates = detail::junta_candidate_count(n, k);
  if (candidates > budget)
    throw BudgetError("hull construction needs " + std::to_string(candidates) + " candidates, budget " +
                      std::to_string(budget));

  std::set<std::vector<Rational>> seen;
  std::vector<int> support(k);
  for (int i = 0; i < k; ++i) support[i] = i;
  const size_t sub_tables = size_t{1} << (size_t{1} << k);
  while (true) {
    // Permutation with sigma(i) = support[i] for i < K; the action of
    // sigma ⋉ 1 on a function of the first K sites lands it on the support.
    HyperoctahedralElement elem = HyperoctahedralElement::identity(n);
    std::vector<bool> used(n, false);
    for (int i = 0; i < k; ++i) {
      elem.permutation[i] = support[i];
      used[support[i]] = true;
    }
    int fill = k;
    for (int v = 0; v < n; ++v)
      if (!used[v]) elem.permutation[fill++] = v;

    for (size_t g = 0; g < sub_tables; ++g) {
      BooleanFunction base(n);  // depends on its first K sites only
      for (size_t x = 0; x < base.table_size(); ++x) {
        size_t sub = x & ((size_t{1} << k) - 1);
        base.set(x, g >> sub & 1);
      }
      BooleanFunction moved = apply_symmetry(elem, base);
      auto beh = to_behavior<Rational>(moved);
      seen.insert(beh.p1_table());
    }
    int i = k - 1;
    while (i >= 0 && support[i] == n - k + i) --i;
    if (i < 0) break;
    ++support[i];
    for (int j = i + 1; j < k; ++j) support[j] = support[j - 1] + 1;
  }

  std::vector<RationalBehavior> out;
  out.reserve(seen.size());
  for (const auto& t : seen) out.emplace_back(n, t);
  return out;
}

}  // namespace carriers
