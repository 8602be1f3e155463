#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "carriers/behavior.hpp"
#include "carriers/errors.hpp"
#include "carriers/rational.hpp"

namespace carriers {

/// A Boolean function f : {0,1}^N -> {0,1} stored as a truth table indexed
/// by the usual integer encoding (bit i of the index = input site i).
class BooleanFunction {
 public:
  explicit BooleanFunction(int n_inputs) : n_(n_inputs), tt_(size_t{1} << n_inputs, false) {
    if (n_inputs < 0 || n_inputs > 24) throw std::invalid_argument("unsupported input count");
  }
  BooleanFunction(int n_inputs, std::vector<bool> truth_table) : n_(n_inputs), tt_(std::move(truth_table)) {
    if (n_inputs < 0 || n_inputs > 24) throw std::invalid_argument("unsupported input count");
    if (tt_.size() != (size_t{1} << n_)) throw std::invalid_argument("truth table must have 2^N entries");
  }

  static BooleanFunction constant(int n, bool v) {
    return BooleanFunction(n, std::vector<bool>(size_t{1} << n, v));
  }
  static BooleanFunction dictator(int n, int site) {
    BooleanFunction f(n);
    for (size_t x = 0; x < f.table_size(); ++x) f.set(x, (x >> site) & 1);
    return f;
  }
  static BooleanFunction conjunction(int n) {
    BooleanFunction f(n);
    f.set(f.table_size() - 1, true);
    return f;
  }
  static BooleanFunction parity(int n, uint32_t mask) {
    BooleanFunction f(n);
    for (size_t x = 0; x < f.table_size(); ++x) f.set(x, std::popcount(x & mask) & 1);
    return f;
  }

  int n_inputs() const { return n_; }
  size_t table_size() const { return tt_.size(); }
  bool value(size_t x) const { return tt_[x]; }
  void set(size_t x, bool v) { tt_[x] = v; }
  const std::vector<bool>& truth_table() const { return tt_; }

  bool operator==(const BooleanFunction& o) const { return n_ == o.n_ && tt_ == o.tt_; }
  bool operator<(const BooleanFunction& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return std::lexicographical_compare(tt_.begin(), tt_.end(), o.tt_.begin(), o.tt_.end());
  }

 private:
  int n_;
  std::vector<bool> tt_;
};

/// Hex encoding of the truth table, most significant input first: the table
/// read as the binary number tt[2^N-1] ... tt[0]. AND on two inputs -> "8".
inline std::string to_hex(const BooleanFunction& f) {
  const size_t bits = f.table_size();
  const size_t digits = (bits + 3) / 4;
  std::string s(digits, '0');
  for (size_t x = 0; x < bits; ++x) {
    if (!f.value(x)) continue;
    size_t digit = digits - 1 - x / 4;
    int cur = std::isdigit(s[digit]) ? s[digit] - '0' : s[digit] - 'a' + 10;
    cur |= 1 << (x % 4);
    s[digit] = cur < 10 ? char('0' + cur) : char('a' + cur - 10);
  }
  return s;
}

inline BooleanFunction boolean_function_from_hex(int n_inputs, const std::string& hex) {
  BooleanFunction f(n_inputs);
  const size_t bits = f.table_size();
  const size_t digits = (bits + 3) / 4;
  if (hex.size() != digits) throw std::invalid_argument("truth table hex has wrong length");
  for (size_t i = 0; i < digits; ++i) {
    char c = hex[i];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("truth table hex has invalid digit");
    for (int b = 0; b < 4; ++b) {
      size_t x = (digits - 1 - i) * 4 + b;
      if (x < bits && (v >> b & 1)) f.set(x, true);
    }
  }
  return f;
}

/// Sites whose value can change f: all i with f(x) != f(x ^ e_i) somewhere.
inline std::vector<int> effective_variables(const BooleanFunction& f) {
  std::vector<int> vars;
  for (int i = 0; i < f.n_inputs(); ++i) {
    const size_t bit = size_t{1} << i;
    bool depends = false;
    for (size_t x = 0; x < f.table_size() && !depends; ++x)
      if (!(x & bit) && f.value(x) != f.value(x | bit)) depends = true;
    if (depends) vars.push_back(i);
  }
  return vars;
}

inline bool is_k_junta(const BooleanFunction& f, int k) {
  return static_cast<int>(effective_variables(f).size()) <= k;
}

inline constexpr uint64_t kDefaultJuntaBudget = 4096;

namespace detail {
inline uint64_t junta_candidate_count(int n, int k) {
  // C(N,K) supports, 2^{2^K} functions per support.
  if (k >= 60) return UINT64_MAX;
  BigInt c = binomial(n, k) * (BigInt(1) << (uint64_t{1} << k));
  return c > UINT64_MAX ? UINT64_MAX : c.convert_to<uint64_t>();
}
}  // namespace detail

/// All Boolean functions on N inputs with at most K effective variables,
/// deduplicated, in lexicographic truth-table order.
inline std::vector<BooleanFunction> enumerate_k_juntas(int n, int k, uint64_t budget = kDefaultJuntaBudget) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("enumerate_k_juntas: need 1 <= N and 0 <= K <= N");
  const uint64_t candidates = detail::junta_candidate_count(n, k);
  if (candidates > budget)
    throw BudgetError("junta enumeration for N=" + std::to_string(n) + " K=" + std::to_string(k) +
                      " needs " + std::to_string(candidates) + " candidates, budget " + std::to_string(budget));

  std::set<std::vector<bool>> seen;
  // Iterate supports of size exactly K; functions ignoring part of the
  // support appear for several supports and collapse in the set.
  std::vector<int> support(k);
  for (int i = 0; i < k; ++i) support[i] = i;
  const size_t sub_tables = size_t{1} << (size_t{1} << k);
  while (true) {
    for (size_t g = 0; g < sub_tables; ++g) {
      std::vector<bool> tt(size_t{1} << n, false);
      for (size_t x = 0; x < tt.size(); ++x) {
        size_t sub = 0;
        for (int i = 0; i < k; ++i)
          if (x >> support[i] & 1) sub |= size_t{1} << i;
        tt[x] = g >> sub & 1;
      }
      seen.insert(std::move(tt));
    }
    // next K-combination of {0..N-1}
    int i = k - 1;
    while (i >= 0 && support[i] == n - k + i) --i;
    if (i < 0) break;
    ++support[i];
    for (int j = i + 1; j < k; ++j) support[j] = support[j - 1] + 1;
  }

  std::vector<BooleanFunction> out;
  out.reserve(seen.size());
  for (const auto& tt : seen) out.emplace_back(n, tt);
  return out;
}

/// Exact junta count: Σ_{k=0}^{K} C(N,k) Σ_{r=0}^{k} (-1)^{k-r} C(k,r) 2^{2^r}.
inline BigInt count_k_juntas(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("count_k_juntas: need 1 <= N and 0 <= K <= N");
  BigInt total = 0;
  for (int kk = 0; kk <= k; ++kk) {
    BigInt exact = 0;  // functions depending on exactly kk fixed variables
    for (int r = 0; r <= kk; ++r) {
      BigInt term = binomial(kk, r) * (BigInt(1) << (uint64_t{1} << r));
      exact += ((kk - r) & 1) ? -term : term;
    }
    total += binomial(n, kk) * exact;
  }
  return total;
}

template <class S>
BasicBehavior<S> to_behavior(const BooleanFunction& f) {
  std::vector<S> p1(f.table_size());
  for (size_t x = 0; x < p1.size(); ++x) p1[x] = S(f.value(x) ? 1 : 0);
  return BasicBehavior<S>(f.n_inputs(), std::move(p1));
}

/// Boolean Fourier degree: the largest mask weight carrying a nonzero
/// Walsh coefficient of the 0/1 table. Exact integer arithmetic.
inline int fourier_degree(const BooleanFunction& f) {
  std::vector<int64_t> a(f.table_size());
  for (size_t x = 0; x < a.size(); ++x) a[x] = f.value(x) ? 1 : 0;
  detail::walsh_hadamard_inplace(a);
  int deg = 0;
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j] != 0) deg = std::max(deg, std::popcount(j));
  return deg;
}

struct DegreeJuntaReport {
  int n_inputs = 0;
  int degree_bound = 0;       // the K that was scanned
  int junta_bound = 0;        // K * 2^{K-1}
  uint64_t functions_scanned = 0;
  uint64_t degree_bounded = 0;          // functions with deg <= K
  bool all_within_junta_bound = true;   // every such f is a junta_bound-junta
  // Functions with deg <= K that are not K-juntas (strictness witnesses).
  std::vector<BooleanFunction> strict_witnesses;
};

/// Scans every Boolean function on N inputs (N <= 4) and checks that a
/// Fourier degree of at most K forces at most K*2^{K-1} effective variables.
inline DegreeJuntaReport check_degree_junta_bound(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("check_degree_junta_bound: bad arguments");
  if (n > 4) throw BudgetError("degree/junta scan enumerates all 2^(2^N) functions; N > 4 exceeds the budget");
  DegreeJuntaReport rep;
  rep.n_inputs = n;
  rep.degree_bound = k;
  rep.junta_bound = k == 0 ? 0 : k << (k - 1);
  const size_t tables = size_t{1} << (size_t{1} << n);
  for (size_t g = 0; g < tables; ++g) {
    std::vector<bool> tt(size_t{1} << n);
    for (size_t x = 0; x < tt.size(); ++x) tt[x] = g >> x & 1;
    BooleanFunction f(n, std::move(tt));
    ++rep.functions_scanned;
    if (fourier_degree(f) > k) continue;
    ++rep.degree_bounded;
    const int eff = static_cast<int>(effective_variables(f).size());
    if (eff > rep.junta_bound) rep.all_within_junta_bound = false;
    if (eff > k) rep.strict_witnesses.push_back(std::move(f));
  }
  return rep;
}

}  // namespace carriers
