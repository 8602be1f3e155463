#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "carriers/behavior.hpp"
#include "carriers/boolfun.hpp"

namespace carriers {

/// An element b = π ⋉ (s_1..s_N) of the hyperoctahedral group B_N: a site
/// permutation combined with per-site bit flips. Acting on a behavior,
/// (R_b P)(a|x) = P(a|y) with y_i = s_i(x_{π(i)}).
struct HyperoctahedralElement {
  std::vector<int> permutation;  // π as a 0-based bijection on sites
  std::vector<bool> flips;       // flips[i] == true means s_i = NOT

  static HyperoctahedralElement identity(int n) {
    HyperoctahedralElement e;
    e.permutation.resize(n);
    std::iota(e.permutation.begin(), e.permutation.end(), 0);
    e.flips.assign(n, false);
    return e;
  }
};

namespace detail {

inline void check_element(const HyperoctahedralElement& b, int n) {
  if (static_cast<int>(b.permutation.size()) != n || static_cast<int>(b.flips.size()) != n)
    throw std::invalid_argument("group element has wrong arity");
  std::vector<bool> hit(n, false);
  for (int v : b.permutation) {
    if (v < 0 || v >= n || hit[v]) throw std::invalid_argument("permutation is not a bijection");
    hit[v] = true;
  }
}

inline size_t transform_input(const HyperoctahedralElement& b, size_t x, int n) {
  size_t y = 0;
  for (int i = 0; i < n; ++i) {
    bool bit = (x >> b.permutation[i]) & 1;
    if (b.flips[i]) bit = !bit;
    if (bit) y |= size_t{1} << i;
  }
  return y;
}

}  // namespace detail

template <class S>
BasicBehavior<S> apply_symmetry(const HyperoctahedralElement& b, const BasicBehavior<S>& beh) {
  const int n = beh.n_inputs();
  detail::check_element(b, n);
  std::vector<S> p1(beh.table_size());
  for (size_t x = 0; x < p1.size(); ++x) p1[x] = beh.p1(detail::transform_input(b, x, n));
  return BasicBehavior<S>(n, std::move(p1));
}

inline BooleanFunction apply_symmetry(const HyperoctahedralElement& b, const BooleanFunction& f) {
  const int n = f.n_inputs();
  detail::check_element(b, n);
  BooleanFunction g(n);
  for (size_t x = 0; x < g.table_size(); ++x) g.set(x, f.value(detail::transform_input(b, x, n)));
  return g;
}

/// Inversion around the center of the behavior space: P(a|x) -> 1 - P(a|x),
/// i.e. the output relabeling a -> ¬a. Maps the vertex of f to that of ¬f.
template <class S>
BasicBehavior<S> apply_inversion(const BasicBehavior<S>& beh) {
  std::vector<S> p1(beh.table_size());
  for (size_t x = 0; x < p1.size(); ++x) p1[x] = S(1) - beh.p1(x);
  return BasicBehavior<S>(beh.n_inputs(), std::move(p1));
}

}  // namespace carriers
