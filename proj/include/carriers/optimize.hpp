#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "carriers/games.hpp"
#include "carriers/quantum.hpp"

namespace carriers {

namespace detail {

/// Counter-derived deterministic RNG. Distributions are hand-rolled so runs
/// are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ^ 0x9E3779B97F4A7C15ULL) {
    next();
    next();
  }
  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  uint64_t state_;
};

inline uint64_t restart_seed(uint64_t master, int restart) {
  return master * 0x9E3779B97F4A7C15ULL + static_cast<uint64_t>(restart) + 1;
}

template <class F>
std::vector<std::invoke_result_t<F, int>> parallel_map(int count, F&& fn) {
  using R = std::invoke_result_t<F, int>;
  std::vector<R> out(count);
  const unsigned workers = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                                              static_cast<unsigned>(count));
  std::vector<std::future<void>> futs;
  std::atomic<int> cursor{0};
  for (unsigned w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&]() {
      for (int i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1)) out[i] = fn(i);
    }));
  }
  for (auto& f : futs) f.get();
  return out;
}

}  // namespace detail

struct NelderMeadOptions {
  int max_evals = 0;  // 0: min(200 * dim + 400, 4000) objective evaluations
  double f_tol = 1e-13;
  double x_tol = 1e-10;
  double init_step = 0.3;
};

/// Adaptive Nelder–Mead on an unconstrained objective. `x` holds the start
/// and receives the argmin; returns the minimum value and reports the
/// evaluation count through `evaluations` when given. The budget counts
/// objective evaluations (a shrink step costs a full simplex rebuild).
inline double nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double>& x, const NelderMeadOptions& opts = {},
                                   int* evaluations = nullptr) {
  const int n = static_cast<int>(x.size());
  if (n == 0) {
    if (evaluations) *evaluations = 1;
    return f(x);
  }
  const int max_evals = opts.max_evals > 0 ? opts.max_evals : std::min(200 * n + 400, 4000);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / n;
  const double gamma = 0.75 - 0.5 / n;
  const double delta = 1.0 - 1.0 / n;

  int evals = 0;
  auto eval = [&](const std::vector<double>& p) {
    ++evals;
    return f(p);
  };

  std::vector<std::vector<double>> pts(n + 1, x);
  for (int i = 0; i < n; ++i) pts[i + 1][i] += opts.init_step;
  std::vector<double> fv(n + 1);
  for (int i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

  std::vector<int> order(n + 1);
  while (evals < max_evals) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];

    double diam = 0.0;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j < n; ++j) diam = std::max(diam, std::abs(pts[i][j] - pts[best][j]));
    if (std::abs(fv[worst] - fv[best]) <= opts.f_tol && diam <= opts.x_tol) break;

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int j = 0; j < n; ++j) centroid[j] += pts[i][j];
    }
    for (int j = 0; j < n; ++j) centroid[j] /= n;

    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (int j = 0; j < n; ++j) p[j] = centroid[j] + t * (centroid[j] - pts[worst][j]);
      return p;
    };

    std::vector<double> xr = blend(alpha);
    double fr = eval(xr);
    if (fr < fv[best]) {
      std::vector<double> xe = blend(alpha * beta);
      double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = std::move(xe);
        fv[worst] = fe;
      } else {
        pts[worst] = std::move(xr);
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      pts[worst] = std::move(xr);
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      std::vector<double> xc = blend(outside ? alpha * gamma : -gamma);
      double fc = eval(xc);
      if (fc < std::min(fr, fv[worst])) {
        pts[worst] = std::move(xc);
        fv[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int j = 0; j < n; ++j) pts[i][j] = pts[best][j] + delta * (pts[i][j] - pts[best][j]);
          fv[i] = eval(pts[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  x = pts[best];
  if (evaluations) *evaluations = evals;
  return fv[best];
}

struct GradientDescentOptions {
  int max_iter = 400;
  double grad_tol = 1e-10;
  double fd_step = 1e-6;
};

/// Central-difference gradient descent with Armijo backtracking. Slower than
/// the simplex search on these objectives but useful as a cross-check.
inline double gradient_minimize(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double>& x, const GradientDescentOptions& opts = {},
                                int* iterations = nullptr) {
  const int n = static_cast<int>(x.size());
  double fx = f(x);
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    std::vector<double> g(n);
    double gnorm = 0.0;
    for (int j = 0; j < n; ++j) {
      std::vector<double> hi = x, lo = x;
      hi[j] += opts.fd_step;
      lo[j] -= opts.fd_step;
      g[j] = (f(hi) - f(lo)) / (2.0 * opts.fd_step);
      gnorm += g[j] * g[j];
    }
    gnorm = std::sqrt(gnorm);
    if (gnorm < opts.grad_tol) break;
    double step = 1.0;
    bool improved = false;
    for (int tries = 0; tries < 40; ++tries) {
      std::vector<double> cand(n);
      for (int j = 0; j < n; ++j) cand[j] = x[j] - step * g[j];
      double fc = f(cand);
      if (fc < fx - 1e-4 * step * gnorm * gnorm) {
        x = std::move(cand);
        fx = fc;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  if (iterations) *iterations = it;
  return fx;
}

enum class OptBackend { NelderMead, Gradient };

struct ViolationOptions {
  bool symmetric_unitaries = false;
  bool symmetric_weights = false;
  int restarts = 64;
  uint64_t seed = 0;
  OptBackend backend = OptBackend::NelderMead;
  int max_evals = 0;  // per-restart budget forwarded to the backend; 0 keeps its default
};

struct RestartRecord {
  int index = 0;
  uint64_t seed = 0;
  int iterations = 0;  // backend steps: objective evaluations (NM) or descent iterations
  double delta = 0.0;
};

struct ViolationResult {
  double delta = 0.0;
  QuantumStrategy strategy;
  std::vector<RestartRecord> restarts;
};

namespace detail {

struct ParamLayout {
  int n = 0, d = 0;
  bool sym_states = false, sym_weights = false;

  int angles_per_state() const { return d == 1 ? 1 : 2 * d - 1; }
  int state_blocks() const { return sym_states ? 1 : n; }
  int weight_params() const { return sym_weights ? 0 : n - 1; }
  int dim() const { return state_blocks() * angles_per_state() + weight_params(); }
};

/// Hyperspherical point on the unit sphere of R^{2d}, folded into C^d.
inline CVector decode_state(const double* angles, int d) {
  if (d == 1) {
    CVector v(1);
    v(0) = Complex(std::cos(angles[0]), std::sin(angles[0]));
    return v;
  }
  const int rd = 2 * d;
  std::vector<double> w(rd);
  double sinprod = 1.0;
  for (int k = 0; k < rd - 1; ++k) {
    w[k] = sinprod * std::cos(angles[k]);
    sinprod *= std::sin(angles[k]);
  }
  w[rd - 1] = sinprod;
  CVector v(d);
  for (int k = 0; k < d; ++k) v(k) = Complex(w[2 * k], w[2 * k + 1]);
  v.normalize();
  return v;
}

inline QuantumStrategy decode_strategy(const ParamLayout& lay, const std::vector<double>& params) {
  const int aps = lay.angles_per_state();
  std::vector<CVector> states(lay.n);
  for (int i = 0; i < lay.n; ++i) {
    const double* a = params.data() + (lay.sym_states ? 0 : i * aps);
    states[i] = decode_state(a, lay.d);
  }
  Eigen::VectorXd p(lay.n);
  if (lay.sym_weights) {
    p.setConstant(1.0 / lay.n);
  } else {
    const double* logits = params.data() + lay.state_blocks() * aps;
    double mx = 0.0;
    for (int i = 0; i < lay.n - 1; ++i) mx = std::max(mx, logits[i]);
    double total = 0.0;
    for (int i = 0; i < lay.n; ++i) {
      const double l = (i < lay.n - 1 ? logits[i] : 0.0) - mx;
      p(i) = std::exp(l);
      total += p(i);
    }
    p /= total;
  }
  return QuantumStrategy(lay.n, lay.d, p, states);
}

/// Deterministic structured starts: index 0 sits at the symmetric optimum
/// (phase flip when d = 1), index 1 at the plain phase-flip encoding.
inline std::vector<double> structured_start(const ParamLayout& lay, int which) {
  std::vector<double> x(lay.dim(), 0.0);
  const int aps = lay.angles_per_state();
  double first_angle;
  if (lay.d == 1) {
    first_angle = std::numbers::pi;
  } else {
    first_angle = which == 0 && lay.n >= 2 ? optimal_symmetric_angle(lay.n) : std::numbers::pi;
  }
  for (int blockstart = 0; blockstart < lay.state_blocks() * aps; blockstart += aps) {
    x[blockstart] = first_angle;
    if (lay.d > 1) x[blockstart + 1] = std::numbers::pi / 2.0;
  }
  return x;
}

inline std::vector<double> random_start(const ParamLayout& lay, Rng& rng) {
  std::vector<double> x(lay.dim());
  const int angle_count = lay.state_blocks() * lay.angles_per_state();
  for (int i = 0; i < angle_count; ++i) x[i] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  if (!lay.sym_weights) {
    // Dirichlet(1) via normalized exponentials, expressed as logits.
    std::vector<double> g(lay.n);
    for (int i = 0; i < lay.n; ++i) g[i] = -std::log(1.0 - rng.uniform());
    for (int i = 0; i < lay.n - 1; ++i) x[angle_count + i] = std::log(g[i]) - std::log(g[lay.n - 1]);
  }
  return x;
}

}  // namespace detail

/// Best fingerprinting violation found by restarted local search over the
/// strategy parameterization (hyperspherical encoded states, softmax
/// weights). Restart 0 starts at the symmetric closed-form optimum and
/// restart 1 at the phase-flip encoding; the rest are random. Deterministic
/// for a fixed seed, with restarts evaluated concurrently.
inline ViolationResult optimize_violation(int n, int d, const ViolationOptions& opts = {}) {
  if (n < 2 || d < 1 || opts.restarts < 1) throw std::invalid_argument("optimize_violation: bad arguments");
  detail::ParamLayout lay{n, d, opts.symmetric_unitaries, opts.symmetric_weights};
  const OracleGame<double> game = to_double(fingerprinting_game(n));
  const double bound = static_cast<double>(n) / (n + 1.0);

  auto objective = [&](const std::vector<double>& params) {
    QuantumStrategy s = detail::decode_strategy(lay, params);
    return -(helstrom_value(build_discrimination(s, game)) - bound);
  };

  struct Outcome {
    RestartRecord rec;
    std::vector<double> params;
  };
  auto outcomes = detail::parallel_map(opts.restarts, [&](int r) {
    detail::Rng rng(detail::restart_seed(opts.seed, r));
    std::vector<double> x = r < 2 ? detail::structured_start(lay, r) : detail::random_start(lay, rng);
    int iters = 0;
    double fmin;
    if (opts.backend == OptBackend::NelderMead) {
      NelderMeadOptions nm;
      nm.max_evals = opts.max_evals;
      fmin = nelder_mead_minimize(objective, x, nm, &iters);
    } else {
      GradientDescentOptions gd;
      if (opts.max_evals > 0) gd.max_iter = opts.max_evals;
      fmin = gradient_minimize(objective, x, gd, &iters);
    }
    Outcome o;
    o.rec = RestartRecord{r, detail::restart_seed(opts.seed, r), iters, -fmin};
    o.params = std::move(x);
    return o;
  });

  int best = 0;
  for (int r = 1; r < opts.restarts; ++r)
    if (outcomes[r].rec.delta > outcomes[best].rec.delta) best = r;

  ViolationResult result{outcomes[best].rec.delta, detail::decode_strategy(lay, outcomes[best].params), {}};
  result.restarts.reserve(opts.restarts);
  for (auto& o : outcomes) result.restarts.push_back(o.rec);
  return result;
}

struct DimensionSaturationReport {
  int n = 0;
  int d_low = 0, d_high = 0;
  double delta_low = 0.0, delta_high = 0.0;
  double difference = 0.0;  // delta_high - delta_low
  bool saturated = false;   // difference <= tol
};

/// Internal dimensions beyond N+1 cannot help: optimizes at d = N+1 and
/// d = N+2 with matched budgets and reports the gain of the larger space.
inline DimensionSaturationReport dimension_saturation_check(int n, double tol,
                                                            const ViolationOptions& base = {}) {
  ViolationOptions opts = base;
  DimensionSaturationReport rep;
  rep.n = n;
  rep.d_low = n + 1;
  rep.d_high = n + 2;
  rep.delta_low = optimize_violation(n, rep.d_low, opts).delta;
  rep.delta_high = optimize_violation(n, rep.d_high, opts).delta;
  rep.difference = rep.delta_high - rep.delta_low;
  rep.saturated = rep.difference <= tol;
  return rep;
}

}  // namespace carriers
