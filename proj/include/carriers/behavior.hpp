#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "carriers/rational.hpp"

namespace carriers {

namespace detail {

inline bool prob_in_range(const Rational& v) { return v >= 0 && v <= 1; }
inline bool prob_in_range(double v) { return v >= -1e-9 && v <= 1.0 + 1e-9; }

inline Rational clamp_prob(const Rational& v) { return v; }
inline double clamp_prob(double v) { return std::min(1.0, std::max(0.0, v)); }

/// In-place fast Walsh–Hadamard butterfly (Sylvester order, no scaling).
template <class S>
void walsh_hadamard_inplace(std::vector<S>& a) {
  const size_t n = a.size();
  for (size_t len = 1; len < n; len <<= 1) {
    for (size_t i = 0; i < n; i += len << 1) {
      for (size_t j = i; j < i + len; ++j) {
        S x = a[j];
        S y = a[j + len];
        a[j] = x + y;
        a[j + len] = x - y;
      }
    }
  }
}

}  // namespace detail

/// A behavior: the full table of conditional probabilities P(a|x) over all
/// N-bit inputs x, with a ∈ {0,1}. Only P(1|x) is stored; P(0|x) follows by
/// normalization. Input x is the integer whose bit i (0-based) carries the
/// value of site i. Immutable after construction.
template <class S>
class BasicBehavior {
 public:
  BasicBehavior(int n_inputs, std::vector<S> p1) : n_(n_inputs), p1_(std::move(p1)) {
    if (n_ < 1) throw std::invalid_argument("behavior needs at least one input site");
    if (n_ > 20) throw std::invalid_argument("behavior tables are dense; N > 20 is not supported");
    if (p1_.size() != (size_t{1} << n_)) throw std::invalid_argument("behavior table must have 2^N entries");
    for (auto& v : p1_) {
      if (!detail::prob_in_range(v)) throw std::invalid_argument("behavior entry outside [0,1]");
      v = detail::clamp_prob(v);
    }
  }

  static BasicBehavior constant(int n_inputs, S value) {
    return BasicBehavior(n_inputs, std::vector<S>(size_t{1} << n_inputs, value));
  }
  static BasicBehavior uniform(int n_inputs) { return constant(n_inputs, S(1) / S(2)); }

  int n_inputs() const { return n_; }
  size_t table_size() const { return p1_.size(); }
  const std::vector<S>& p1_table() const { return p1_; }
  S p1(size_t x) const { return p1_[x]; }
  S p0(size_t x) const { return S(1) - p1_[x]; }
  S p(int outcome, size_t x) const { return outcome ? p1(x) : p0(x); }

  bool operator==(const BasicBehavior& o) const { return n_ == o.n_ && p1_ == o.p1_; }

 private:
  int n_;
  std::vector<S> p1_;
};

using Behavior = BasicBehavior<double>;
using RationalBehavior = BasicBehavior<Rational>;

inline Behavior to_double(const RationalBehavior& b) {
  std::vector<double> t(b.table_size());
  for (size_t x = 0; x < t.size(); ++x) t[x] = static_cast<double>(b.p1(x));
  return Behavior(b.n_inputs(), std::move(t));
}

/// Exact lift; each double becomes the rational it denotes bit-for-bit.
inline RationalBehavior to_rational(const Behavior& b) {
  RatVec t(b.table_size());
  for (size_t x = 0; x < t.size(); ++x) t[x] = Rational(b.p1(x));
  return RationalBehavior(b.n_inputs(), std::move(t));
}

/// Walsh–Hadamard spectrum of the projection P' = (P(1|x))_x, normalized by
/// 2^{-N/2} so that the transform is an involution. coefficients[j] belongs
/// to the subset mask j; Sylvester bit order (bit i of j <-> input site i).
struct Spectrum {
  int n_inputs;
  std::vector<double> coefficients;

  /// Inverse transform (same matrix); recovers the P(1|x) table.
  std::vector<double> to_p1() const {
    std::vector<double> a = coefficients;
    detail::walsh_hadamard_inplace(a);
    const double scale = std::pow(2.0, -0.5 * n_inputs);
    for (auto& v : a) v *= scale;
    return a;
  }
};

inline Spectrum hadamard_spectrum(const Behavior& b) {
  std::vector<double> a(b.p1_table());
  detail::walsh_hadamard_inplace(a);
  const double scale = std::pow(2.0, -0.5 * b.n_inputs());
  for (auto& v : a) v *= scale;
  return Spectrum{b.n_inputs(), std::move(a)};
}

/// Exact spectrum in the "subset-sum" normalization z_j = 2^{-N} Σ_k (-1)^{|j∧k|} P(1|k).
/// This scale keeps every coefficient rational for all N (the involutive
/// normalization would need 2^{-N/2}); the inverse is the plain unscaled
/// butterfly, i.e. exact_inverse_spectrum(n, exact_spectrum(b)) == P'.
inline RatVec exact_spectrum(const RationalBehavior& b) {
  RatVec a(b.p1_table());
  detail::walsh_hadamard_inplace(a);
  const Rational scale = Rational(1, BigInt(1) << b.n_inputs());
  for (auto& v : a) v *= scale;
  return a;
}

inline RatVec exact_inverse_spectrum(const RatVec& z) {
  RatVec a = z;
  detail::walsh_hadamard_inplace(a);
  return a;
}

/// Alternating sum over the sub-cube spanned by `subset` (all other sites
/// pinned to 0):  Σ (-1)^{Σ x_j} P(0|x).  Vanishing of these sums for every
/// subset larger than K characterizes K-th order interference.
template <class S>
S interference_sum(const BasicBehavior<S>& b, const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("interference_sum: empty subset");
  uint32_t mask = 0;
  for (int j : subset) {
    if (j < 0 || j >= b.n_inputs()) throw std::invalid_argument("interference_sum: site index out of range");
    if (mask & (uint32_t{1} << j)) throw std::invalid_argument("interference_sum: repeated site index");
    mask |= uint32_t{1} << j;
  }
  // Iterate the sub-cube of the subset's bits.
  std::vector<uint32_t> bits;
  for (int j : subset) bits.push_back(uint32_t{1} << j);
  S total(0);
  const size_t m = subset.size();
  for (size_t assign = 0; assign < (size_t{1} << m); ++assign) {
    uint32_t x = 0;
    for (size_t l = 0; l < m; ++l)
      if (assign & (size_t{1} << l)) x |= bits[l];
    if (std::popcount(assign) & 1)
      total -= b.p0(x);
    else
      total += b.p0(x);
  }
  return total;
}

inline constexpr double kInterferenceTol = 1e-9;

/// Smallest K such that every spectrum coefficient above mask weight K is
/// below tol in magnitude; N when the top-weight coefficient survives.
inline int interference_order(const Behavior& b, double tol = kInterferenceTol) {
  Spectrum s = hadamard_spectrum(b);
  int order = 0;
  for (size_t j = 0; j < s.coefficients.size(); ++j) {
    if (std::abs(s.coefficients[j]) > tol) order = std::max(order, std::popcount(j));
  }
  return order;
}

/// Exact-arithmetic variant: a coefficient counts unless it is exactly zero.
inline int interference_order(const RationalBehavior& b) {
  RatVec z = exact_spectrum(b);
  int order = 0;
  for (size_t j = 0; j < z.size(); ++j) {
    if (z[j] != 0) order = std::max(order, std::popcount(j));
  }
  return order;
}

inline bool is_member_J(const Behavior& b, int k, double tol = kInterferenceTol) {
  return interference_order(b, tol) <= k;
}
inline bool is_member_J(const RationalBehavior& b, int k) { return interference_order(b) <= k; }

}  // namespace carriers
