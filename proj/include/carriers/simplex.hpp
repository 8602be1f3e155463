#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "carriers/rational.hpp"

namespace carriers {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class S>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  S objective = S(0);
  std::vector<S> x;       // structural solution when Optimal
  std::vector<S> farkas;  // when Infeasible: y with y·A_j <= 0 for every column j and y·b > 0
};

namespace detail {

template <class S>
struct LpScalar {
  static bool is_zero(const S& v) { return v == 0; }
};
template <>
struct LpScalar<double> {
  static bool is_zero(double v) { return std::abs(v) <= 1e-9; }
};

/// Dense two-phase primal simplex on  max c·x  s.t.  A x = b, x >= 0.
/// Bland's rule in both phases, so the exact-rational instantiation is
/// guaranteed to terminate. The double instantiation uses a 1e-9 pivot
/// tolerance and is only meant as a fast fallback.
template <class S>
class SimplexTableau {
 public:
  SimplexTableau(const std::vector<std::vector<S>>& a, const std::vector<S>& b, const std::vector<S>& c)
      : m_(a.size()), n_(c.size()), cols_(n_ + m_), t_(m_, std::vector<S>(n_ + m_, S(0))), rhs_(m_),
        basis_(m_), allowed_(cols_, true), row_sign_(m_, 1) {
    for (size_t i = 0; i < m_; ++i) {
      if (a[i].size() != n_) throw std::invalid_argument("simplex: ragged constraint matrix");
      bool flip = b[i] < S(0);
      row_sign_[i] = flip ? -1 : 1;
      for (size_t j = 0; j < n_; ++j) t_[i][j] = flip ? -a[i][j] : a[i][j];
      t_[i][n_ + i] = S(1);
      rhs_[i] = flip ? -b[i] : b[i];
      basis_[i] = n_ + i;
    }
    c_ = c;
  }

  LpSolution<S> solve(const std::vector<std::vector<S>>& a, const std::vector<S>& b) {
    LpSolution<S> out;
    // Phase 1: maximize -(sum of artificials).
    std::vector<S> cc(cols_, S(0));
    for (size_t j = n_; j < cols_; ++j) cc[j] = S(-1);
    if (!run_phase(cc, /*artificials_may_enter=*/true))
      throw std::logic_error("simplex: phase 1 reported unbounded");
    if (!zero(obj_rhs_)) {
      out.status = LpStatus::Infeasible;
      out.farkas = farkas_certificate(a, b, cc);
      return out;
    }
    drive_out_artificials();
    for (size_t j = n_; j < cols_; ++j) allowed_[j] = false;

    // Phase 2: the real objective.
    cc.assign(cols_, S(0));
    for (size_t j = 0; j < n_; ++j) cc[j] = c_[j];
    if (!run_phase(cc, /*artificials_may_enter=*/false)) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    out.status = LpStatus::Optimal;
    out.objective = obj_rhs_;
    out.x.assign(n_, S(0));
    for (size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) out.x[basis_[i]] = rhs_[i];
    return out;
  }

 private:
  static bool zero(const S& v) { return LpScalar<S>::is_zero(v); }

  void rebuild_objective(const std::vector<S>& cc) {
    obj_.assign(cols_, S(0));
    for (size_t j = 0; j < cols_; ++j) obj_[j] = -cc[j];
    obj_rhs_ = S(0);
    for (size_t i = 0; i < m_; ++i) {
      const S& w = cc[basis_[i]];
      if (zero(w)) continue;
      for (size_t j = 0; j < cols_; ++j) obj_[j] += w * t_[i][j];
      obj_rhs_ += w * rhs_[i];
    }
  }

  void pivot(size_t row, size_t col) {
    const S piv = t_[row][col];
    for (size_t j = 0; j < cols_; ++j) t_[row][j] /= piv;
    rhs_[row] /= piv;
    for (size_t i = 0; i < m_; ++i) {
      if (i == row || zero(t_[i][col])) continue;
      const S f = t_[i][col];
      for (size_t j = 0; j < cols_; ++j) t_[i][j] -= f * t_[row][j];
      rhs_[i] -= f * rhs_[row];
      t_[i][col] = S(0);
    }
    if (!zero(obj_[col])) {
      const S f = obj_[col];
      for (size_t j = 0; j < cols_; ++j) obj_[j] -= f * t_[row][j];
      obj_rhs_ -= f * rhs_[row];
      obj_[col] = S(0);
    }
    basis_[row] = col;
  }

  // Returns false on unboundedness.
  bool run_phase(const std::vector<S>& cc, bool artificials_may_enter) {
    rebuild_objective(cc);
    while (true) {
      // Bland: lowest-index improving column.
      size_t enter = cols_;
      for (size_t j = 0; j < cols_; ++j) {
        if (!allowed_[j]) continue;
        if (!artificials_may_enter && j >= n_) continue;
        if (!zero(obj_[j]) && obj_[j] < S(0)) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;

      size_t leave = m_;
      S best_ratio(0);
      for (size_t i = 0; i < m_; ++i) {
        if (zero(t_[i][enter]) || t_[i][enter] < S(0)) continue;
        S ratio = rhs_[i] / t_[i][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;
      const size_t leaving_col = basis_[leave];
      pivot(leave, enter);
      if (leaving_col >= n_) allowed_[leaving_col] = false;  // artificials never come back
    }
  }

  void drive_out_artificials() {
    for (size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (size_t j = 0; j < n_; ++j) {
        if (!zero(t_[i][j])) {
          pivot(i, j);  // degenerate pivot, rhs stays 0
          break;
        }
      }
      // If the row is all zeros in the structural part it is redundant; the
      // artificial stays basic at value zero and never changes again.
    }
  }

  std::vector<S> farkas_certificate(const std::vector<std::vector<S>>& a, const std::vector<S>& b,
                                    const std::vector<S>& cc) {
    // Solve B^T y = cc_B for the final basis, then undo the row flips.
    RatMatrix bt(m_, RatVec(m_));
    RatVec cb(m_);
    if constexpr (!std::is_same_v<S, double>) {
      for (size_t i = 0; i < m_; ++i) {
        for (size_t k = 0; k < m_; ++k) {
          size_t col = basis_[k];
          Rational entry = col < n_ ? Rational(row_sign_[i]) * Rational(a[i][col])
                                    : Rational(col - n_ == i ? 1 : 0);
          bt[k][i] = entry;
        }
        cb[i] = Rational(cc[basis_[i]]);
      }
      RatVec y;
      if (!solve_square(bt, cb, y)) throw std::logic_error("simplex: singular basis in Farkas step");
      std::vector<S> f(m_);
      for (size_t i = 0; i < m_; ++i) f[i] = S(-Rational(row_sign_[i]) * y[i]);
      verify_farkas(a, b, f);
      return f;
    } else {
      // Double mode: same computation in floating point, unverified.
      std::vector<std::vector<double>> btd(m_, std::vector<double>(m_));
      std::vector<double> cbd(m_);
      for (size_t i = 0; i < m_; ++i) {
        for (size_t k = 0; k < m_; ++k) {
          size_t col = basis_[k];
          btd[k][i] = col < n_ ? row_sign_[i] * double(a[i][col]) : double(col - n_ == i ? 1 : 0);
        }
        cbd[i] = double(cc[basis_[i]]);
      }
      std::vector<S> f(m_, S(0));
      // Gaussian elimination with partial pivoting.
      std::vector<std::vector<double>> g = btd;
      std::vector<double> r = cbd;
      for (size_t c2 = 0; c2 < m_; ++c2) {
        size_t p = c2;
        for (size_t i = c2 + 1; i < m_; ++i)
          if (std::abs(g[i][c2]) > std::abs(g[p][c2])) p = i;
        std::swap(g[c2], g[p]);
        std::swap(r[c2], r[p]);
        if (std::abs(g[c2][c2]) < 1e-14) continue;
        for (size_t i = 0; i < m_; ++i) {
          if (i == c2) continue;
          double fac = g[i][c2] / g[c2][c2];
          for (size_t j = c2; j < m_; ++j) g[i][j] -= fac * g[c2][j];
          r[i] -= fac * r[c2];
        }
      }
      for (size_t i = 0; i < m_; ++i) f[i] = std::abs(g[i][i]) < 1e-14 ? 0.0 : -row_sign_[i] * r[i] / g[i][i];
      return f;
    }
  }

  void verify_farkas(const std::vector<std::vector<S>>& a, const std::vector<S>& b, const std::vector<S>& f) {
    S dot_b(0);
    for (size_t i = 0; i < m_; ++i) dot_b += f[i] * b[i];
    if (!(dot_b > S(0))) throw std::logic_error("simplex: Farkas certificate failed (y·b <= 0)");
    for (size_t j = 0; j < n_; ++j) {
      S d(0);
      for (size_t i = 0; i < m_; ++i) d += f[i] * a[i][j];
      if (d > S(0)) throw std::logic_error("simplex: Farkas certificate failed (y·A_j > 0)");
    }
  }

  size_t m_, n_, cols_;
  std::vector<std::vector<S>> t_;
  std::vector<S> rhs_;
  std::vector<S> obj_;
  S obj_rhs_ = S(0);
  std::vector<S> c_;
  std::vector<size_t> basis_;
  std::vector<bool> allowed_;
  std::vector<int> row_sign_;
};

}  // namespace detail

/// maximize c·x subject to A x = b, x >= 0.
template <class S>
LpSolution<S> simplex_max_eq(const std::vector<std::vector<S>>& a, const std::vector<S>& b,
                             const std::vector<S>& c) {
  detail::SimplexTableau<S> tab(a, b, c);
  return tab.solve(a, b);
}

/// Feasibility of A x = b, x >= 0; on failure the Farkas field separates.
template <class S>
LpSolution<S> lp_feasible_eq(const std::vector<std::vector<S>>& a, const std::vector<S>& b) {
  return simplex_max_eq(a, b, std::vector<S>(a.empty() ? 0 : a[0].size(), S(0)));
}

/// maximize c·x subject to A x <= b with x sign-unrestricted
/// (internally x = u - w plus slacks).
template <class S>
LpSolution<S> lp_max_ineq_free(const std::vector<std::vector<S>>& a, const std::vector<S>& b,
                               const std::vector<S>& c) {
  const size_t m = a.size(), n = c.size();
  std::vector<std::vector<S>> ae(m, std::vector<S>(2 * n + m, S(0)));
  std::vector<S> ce(2 * n + m, S(0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) {
      ae[i][j] = a[i][j];
      ae[i][n + j] = -a[i][j];
    }
    ae[i][2 * n + i] = S(1);
  }
  for (size_t j = 0; j < n; ++j) {
    ce[j] = c[j];
    ce[n + j] = -c[j];
  }
  LpSolution<S> sol = simplex_max_eq(ae, b, ce);
  if (sol.status == LpStatus::Optimal) {
    std::vector<S> x(n);
    for (size_t j = 0; j < n; ++j) x[j] = sol.x[j] - sol.x[n + j];
    sol.x = std::move(x);
  }
  return sol;
}

}  // namespace carriers
