#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "carriers/behavior.hpp"
#include "carriers/games.hpp"
#include "carriers/rational.hpp"

namespace carriers {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// A single-particle strategy in the canonical gauge: the carrier starts in
/// Σ_i √p_i |i⟩|χ⟩ with χ the first basis vector of the internal space, and
/// site i rotates χ to encoded_state(i) when its input bit is 1. Unitaries
/// are never materialized; only the images of χ matter.
class QuantumStrategy {
 public:
  QuantumStrategy(int n_inputs, int internal_dim, Eigen::VectorXd weights, std::vector<CVector> encoded)
      : n_(n_inputs), d_(internal_dim), weights_(std::move(weights)), encoded_(std::move(encoded)) {
    if (n_ < 1 || d_ < 1) throw std::invalid_argument("strategy needs N >= 1 sites and d >= 1");
    if (weights_.size() != n_ || static_cast<int>(encoded_.size()) != n_)
      throw std::invalid_argument("strategy needs one weight and one encoded state per site");
    double sum = 0.0;
    for (int i = 0; i < n_; ++i) {
      if (weights_[i] < -1e-12) throw std::invalid_argument("negative superposition weight");
      sum += weights_[i];
      if (encoded_[i].size() != d_) throw std::invalid_argument("encoded state has wrong dimension");
      if (std::abs(encoded_[i].norm() - 1.0) > 1e-12) throw std::invalid_argument("encoded state not normalized");
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("superposition weights must sum to 1");
  }

  static CVector reference_state(int d) {
    CVector chi = CVector::Zero(d);
    chi(0) = 1.0;
    return chi;
  }

  /// All sites identical, uniform weights.
  static QuantumStrategy symmetric(int n, int d, const CVector& chi1) {
    Eigen::VectorXd p = Eigen::VectorXd::Constant(n, 1.0 / n);
    return QuantumStrategy(n, d, p, std::vector<CVector>(n, chi1));
  }

  int n_inputs() const { return n_; }
  int internal_dim() const { return d_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const CVector& encoded_state(int site) const { return encoded_[site]; }

 private:
  int n_, d_;
  Eigen::VectorXd weights_;
  std::vector<CVector> encoded_;
};

/// ψ_x: block i equals √p_i χ if x_i = 0, else √p_i χ_i.
inline CVector encoded_pure_state(const QuantumStrategy& s, uint32_t x) {
  const int n = s.n_inputs(), d = s.internal_dim();
  const CVector chi = QuantumStrategy::reference_state(d);
  CVector psi(n * d);
  for (int i = 0; i < n; ++i) {
    const CVector& block = (x >> i & 1) ? s.encoded_state(i) : chi;
    psi.segment(i * d, d) = std::sqrt(s.weights()[i]) * block;
  }
  return psi;
}

/// A binary discrimination problem: states σ_0, σ_1 with priors q_0, q_1.
struct DiscriminationInstance {
  double q0 = 0.5, q1 = 0.5;
  CMatrix sigma0, sigma1;

  DiscriminationInstance(double q0_in, double q1_in, CMatrix s0, CMatrix s1)
      : q0(q0_in), q1(q1_in), sigma0(std::move(s0)), sigma1(std::move(s1)) {
    if (q0 < 0 || q1 < 0 || std::abs(q0 + q1 - 1.0) > 1e-12)
      throw std::invalid_argument("priors must be a probability pair");
    validate(sigma0);
    validate(sigma1);
  }

  static void validate(const CMatrix& s) {
    if (s.rows() != s.cols()) throw std::invalid_argument("state matrix not square");
    if ((s - s.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("state matrix not Hermitian");
    if (std::abs(s.trace().real() - 1.0) > 1e-10) throw std::invalid_argument("state matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(s, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) throw std::invalid_argument("state matrix not positive semidefinite");
  }

  CMatrix helstrom_operator() const { return q1 * sigma1 - q0 * sigma0; }
};

/// σ_a = (1/q_a) Σ_{v(x)=a} q_x ψ_x ψ_x†, with q_a the total weight on v = a.
inline DiscriminationInstance build_discrimination(const QuantumStrategy& s, const OracleGame<double>& g) {
  if (g.n_inputs != s.n_inputs()) throw std::invalid_argument("build_discrimination: arity mismatch");
  const int dim = s.n_inputs() * s.internal_dim();
  CMatrix acc0 = CMatrix::Zero(dim, dim), acc1 = CMatrix::Zero(dim, dim);
  double q0 = 0.0, q1 = 0.0;
  for (size_t x = 0; x < g.weights.size(); ++x) {
    const double w = g.weights[x];
    if (w == 0.0) continue;
    CVector psi = encoded_pure_state(s, static_cast<uint32_t>(x));
    if (g.target.value(x)) {
      acc1 += w * (psi * psi.adjoint());
      q1 += w;
    } else {
      acc0 += w * (psi * psi.adjoint());
      q0 += w;
    }
  }
  if (q0 <= 0.0 || q1 <= 0.0)
    throw std::invalid_argument("game puts no weight on one oracle value; nothing to discriminate");
  return DiscriminationInstance(q0, q1, acc0 / q0, acc1 / q1);
}

/// Helstrom bound 1/2 + ||q1 σ1 - q0 σ0||_1 / 2; the trace norm is the sum
/// of absolute eigenvalues of the Hermitian difference operator.
inline double helstrom_value(const DiscriminationInstance& inst) {
  CMatrix m = inst.helstrom_operator();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return 0.5 + 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// The behavior produced when the decoder measures the Helstrom projector:
/// outcome 1 on the nonnegative eigenspace of q1 σ1 - q0 σ0 (zero
/// eigenvalues land on outcome 1).
inline Behavior strategy_behavior(const QuantumStrategy& s, const OracleGame<double>& g) {
  DiscriminationInstance inst = build_discrimination(s, g);
  CMatrix m = inst.helstrom_operator();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const int dim = m.rows();
  CMatrix proj1 = CMatrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j)
    if (es.eigenvalues()(j) >= 0.0) proj1 += es.eigenvectors().col(j) * es.eigenvectors().col(j).adjoint();
  std::vector<double> p1(size_t{1} << s.n_inputs());
  for (size_t x = 0; x < p1.size(); ++x) {
    CVector psi = encoded_pure_state(s, static_cast<uint32_t>(x));
    p1[x] = std::clamp((psi.adjoint() * proj1 * psi)(0).real(), 0.0, 1.0);
  }
  return Behavior(s.n_inputs(), std::move(p1));
}

// ---------------------------------------------------------------------------
// Closed-form analysis of the symmetric strategy against the fingerprinting
// game. With identical sites and uniform weights the Helstrom operator is a
// block-circulant 2N x 2N matrix built from two 2x2 blocks; its trace norm
// and the optimal internal rotation have closed forms.
// ---------------------------------------------------------------------------

/// The Helstrom operator for the symmetric strategy with internal state
/// χ' = (e^{iφ} cos θ, e^{iψ} sin θ): diagonal blocks A, off-diagonal blocks
/// B, overall prefactor 1/(N(N+1)).
inline CMatrix symmetric_helstrom_matrix(int n, double theta, double phi, double psi) {
  if (n < 1) throw std::invalid_argument("need N >= 1");
  const double st = std::sin(theta), ct = std::cos(theta);
  const Complex i_unit(0.0, 1.0);
  Eigen::Matrix2cd a, b;
  a << ct * ct + n - 2.0, st * ct * std::exp(i_unit * (phi - psi)),
      st * ct * std::exp(-i_unit * (phi - psi)), st * st;
  b << 2.0 * ct * std::cos(phi) + n - 3.0, st * std::exp(-i_unit * psi),
      st * std::exp(i_unit * psi), 0.0;
  CMatrix m = CMatrix::Zero(2 * n, 2 * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.block<2, 2>(2 * r, 2 * c) = (r == c) ? a : b;
  return m / (double(n) * (n + 1.0));
}

/// Closed-form trace norm of the symmetric Helstrom operator; independent
/// of ψ.
inline double symmetric_trace_norm(int n, double theta, double phi) {
  const double c = std::cos(theta) * std::cos(phi);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double base = 2.0 * c + n - 2.0;
  const double root = std::sqrt(4.0 * n * s2 + (n - 1.0) * (n - 1.0) * base * base);
  return ((n - 1.0) * (2.0 - 2.0 * c) + root) / (double(n) * (n + 1.0));
}

/// Eigenvalues of the block-circulant operator, with multiplicities:
/// 0 and (2 - 2 cos θ cos φ), each N-1 times, plus the pair λ±. Includes
/// the 1/(N(N+1)) prefactor. Exactly one branch can be negative.
inline std::vector<double> block_circulant_eigenvalues(int n, double theta, double phi) {
  const double c = std::cos(theta) * std::cos(phi);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double base = 2.0 * c + n - 2.0;
  const double half_diff = 0.5 * std::sqrt((n - 1.0) * (n - 1.0) * base * base + 4.0 * n * s2);
  const double half_sum = 0.5 * (n - 1.0) * base;
  const double pref = 1.0 / (double(n) * (n + 1.0));
  std::vector<double> eig;
  eig.reserve(2 * n);
  for (int i = 0; i < n - 1; ++i) eig.push_back(0.0);
  for (int i = 0; i < n - 1; ++i) eig.push_back(pref * (2.0 - 2.0 * c));
  eig.push_back(pref * (half_sum + half_diff));
  eig.push_back(pref * (half_sum - half_diff));
  return eig;
}

/// Angle maximizing the symmetric trace norm (φ = 0): π up to N = 3, then
/// arccos((1-N)/(N²-3N+1)).
inline double optimal_symmetric_angle(int n) {
  if (n < 2) throw std::invalid_argument("need N >= 2");
  if (n <= 3) return std::numbers::pi;
  return std::acos((1.0 - n) / (double(n) * n - 3.0 * n + 1.0));
}

/// Maximal fingerprinting violation reachable with identical sites:
/// 1/3 and 1/6 for N = 2, 3, then 1/((N+1)(N²-3N+1)).
inline Rational optimal_symmetric_violation_exact(int n) {
  if (n < 2) throw std::invalid_argument("need N >= 2");
  if (n == 2) return Rational(1, 3);
  if (n == 3) return Rational(1, 6);
  return Rational(1, BigInt(n + 1) * (BigInt(n) * n - 3 * n + 1));
}

inline double optimal_symmetric_violation(int n) {
  return static_cast<double>(optimal_symmetric_violation_exact(n));
}

/// The strategy realizing the symmetric optimum: d = 2, uniform weights,
/// χ' = (cos θ*, sin θ*).
inline QuantumStrategy optimal_symmetric_strategy(int n) {
  const double theta = optimal_symmetric_angle(n);
  CVector chi1(2);
  chi1 << std::cos(theta), std::sin(theta);
  return QuantumStrategy::symmetric(n, 2, chi1);
}

}  // namespace carriers
