#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace carriers {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>;

inline std::string rational_to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on anything else.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

/// Rank over Q by Gaussian elimination; destroys its copy of the matrix.
inline int rank_of(RatMatrix m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  size_t pr = 0;
  for (size_t c = 0; c < cols && pr < rows; ++c) {
    size_t piv = pr;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[pr], m[piv]);
    for (size_t r2 = pr + 1; r2 < rows; ++r2) {
      if (m[r2][c] == 0) continue;
      Rational f = m[r2][c] / m[pr][c];
      for (size_t c2 = c; c2 < cols; ++c2) m[r2][c2] -= f * m[pr][c2];
    }
    ++pr;
    ++rank;
  }
  return rank;
}

/// Rank of an integer matrix via fraction-free (Bareiss) elimination.
/// Exact, and much faster than rational pivoting on 0/1 inputs.
inline int rank_of_int(std::vector<std::vector<BigInt>> m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  size_t pr = 0;
  BigInt prev = 1;
  for (size_t c = 0; c < cols && pr < rows; ++c) {
    size_t piv = pr;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[pr], m[piv]);
    for (size_t r2 = pr + 1; r2 < rows; ++r2) {
      for (size_t c2 = c + 1; c2 < cols; ++c2)
        m[r2][c2] = (m[pr][c] * m[r2][c2] - m[r2][c] * m[pr][c2]) / prev;
      m[r2][c] = 0;
    }
    prev = m[pr][c];
    ++pr;
    ++rank;
  }
  return rank;
}

/// Solves the square system a x = b. Returns false when a is singular.
inline bool solve_square(RatMatrix a, RatVec b, RatVec& x) {
  const size_t n = a.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (size_t c2 = c; c2 < n; ++c2) a[r][c2] -= f * a[c][c2];
      b[r] -= f * b[c];
    }
  }
  x.resize(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

/// Scales a rational vector to coprime integers, keeping its direction
/// (multiplication by a positive rational only).
inline RatVec canonical_integer_direction(const RatVec& v) {
  BigInt lcm = 1;
  for (const auto& q : v) lcm = boost::multiprecision::lcm(lcm, denominator(q));
  std::vector<BigInt> w(v.size());
  BigInt g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = numerator(v[i]) * (lcm / denominator(v[i]));
    g = boost::multiprecision::gcd(g, abs(w[i]));
  }
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = (g == 0) ? Rational(0) : Rational(w[i] / g);
  return out;
}

}  // namespace carriers
