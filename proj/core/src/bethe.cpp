#include "dwpf/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dwpf/kernels.hpp"

namespace dwpf {

template <Scalar T>
void validate(const CouplingModel<T>& model) {
  if (model.g == T(0)) throw Error(ErrorKind::InvalidArgument, "coupling g must be nonzero");
  if (model.M > model.eps.size())
    throw Error(ErrorKind::InvalidArgument, "more excitations than levels");
  for (std::size_t i = 0; i < model.eps.size(); ++i)
    for (std::size_t j = i + 1; j < model.eps.size(); ++j)
      if (model.eps[i] == model.eps[j])
        throw Error(ErrorKind::DegenerateEpsilons,
                    "epsilon " + std::to_string(i + 1) + " equals epsilon " +
                        std::to_string(j + 1));
}

template <Scalar T>
std::vector<T> richardson_residuals(const RapidityState<T>& state,
                                    const CouplingModel<T>& model) {
  const auto& lam = state.lambdas;
  const T two(2);
  std::vector<T> r;
  r.reserve(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i) {
    T ri = two / model.g;
    for (std::size_t j = 0; j < lam.size(); ++j) {
      if (j == i) continue;
      if (lam[i] == lam[j])
        throw Error(ErrorKind::PoleAtEvaluationPoint, "coinciding rapidities");
      ri -= two / (lam[i] - lam[j]);
    }
    for (const T& e : model.eps) {
      if (e == lam[i])
        throw Error(ErrorKind::PoleAtEvaluationPoint, "rapidity sits on a level");
      ri -= T(1) / (e - lam[i]);
    }
    r.push_back(ri);
  }
  return r;
}

template <Scalar T>
SquareMatrix<T> richardson_jacobian(const RapidityState<T>& state,
                                    const CouplingModel<T>& model) {
  const auto& lam = state.lambdas;
  const T two(2);
  SquareMatrix<T> jac(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i) {
    T diag(0);
    for (std::size_t j = 0; j < lam.size(); ++j) {
      if (j == i) continue;
      const T d = lam[i] - lam[j];
      const T w = two / (d * d);
      diag += w;
      jac(i, j) = -w;
    }
    for (const T& e : model.eps) {
      const T d = e - lam[i];
      diag -= T(1) / (d * d);
    }
    jac(i, i) = diag;
  }
  return jac;
}

template <Scalar T>
std::vector<T> quad_residuals(const LambdaVars<T>& lv, const CouplingModel<T>& model) {
  const auto& x = lv.values;
  const auto& eps = model.eps;
  if (x.size() != eps.size())
    throw Error(ErrorKind::CardinalityMismatch, "need one Lambda per level");
  const T coupling = T(2) / model.g;
  std::vector<T> r;
  r.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    T ri = x[i] * x[i] - coupling * x[i];
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j == i) continue;
      if (eps[i] == eps[j])
        throw Error(ErrorKind::DegenerateEpsilons, "coinciding levels");
      ri -= (x[i] - x[j]) / (eps[i] - eps[j]);
    }
    r.push_back(ri);
  }
  return r;
}

template <Scalar T>
SquareMatrix<T> quad_jacobian(const LambdaVars<T>& lv, const CouplingModel<T>& model) {
  const auto& x = lv.values;
  const auto& eps = model.eps;
  SquareMatrix<T> jac(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    T diag = T(2) * x[i] - T(2) / model.g;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j == i) continue;
      const T w = T(1) / (eps[i] - eps[j]);
      diag -= w;
      jac(i, j) = w;
    }
    jac(i, i) = diag;
  }
  return jac;
}

template <Scalar T>
LambdaVars<T> lambdas_from_rapidities(const RapidityState<T>& state,
                                      std::span<const T> eps) {
  LambdaVars<T> lv;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    T sum(0);
    for (const T& l : state.lambdas) {
      if (l == eps[i])
        throw Error(ErrorKind::PoleAtEvaluationPoint, "rapidity sits on a level");
      sum += T(1) / (eps[i] - l);
    }
    lv.values.push_back(sum);
  }
  return lv;
}

template <Scalar T>
LambdaVars<T> dual_transform(const LambdaVars<T>& lv, const CouplingModel<T>& model) {
  const T shift = T(2) / model.g;
  LambdaVars<T> out = lv;
  for (T& x : out.values) x -= shift;
  return out;
}

template <Scalar T>
double max_abs(std::span<const T> residuals) {
  double m = 0.0;
  for (const T& r : residuals) m = std::max(m, magnitude(r));
  return m;
}

namespace {

constexpr double kInfinite = std::numeric_limits<double>::infinity();

double min_level_gap(std::span<const Complex> eps) {
  double gap = kInfinite;
  for (std::size_t i = 0; i < eps.size(); ++i)
    for (std::size_t j = i + 1; j < eps.size(); ++j)
      gap = std::min(gap, std::abs(eps[i] - eps[j]));
  return gap;
}

// Smallest k >= 0 with |g| / 2^k <= fraction * gap.
int homotopy_depth(Complex g, std::span<const Complex> eps, double fraction) {
  const double gap = min_level_gap(eps);
  int k = 0;
  while (std::abs(g) / std::ldexp(1.0, k) > fraction * gap && k < 200) ++k;
  return k;
}

// Damped Newton on `residual` at fixed coupling. Returns true once the largest
// residual drops below the tolerance.
template <class Residual, class Jacobian>
bool newton(std::vector<Complex>& x, Residual&& residual, Jacobian&& jacobian,
            const SolverOptions& options) {
  auto norm_at = [&](const std::vector<Complex>& y, std::vector<Complex>& r) {
    try {
      r = residual(y);
    } catch (const Error&) {
      return kInfinite;
    }
    const double n = max_abs<Complex>(r);
    return std::isfinite(n) ? n : kInfinite;
  };

  std::vector<Complex> r;
  double norm = norm_at(x, r);
  if (!std::isfinite(norm)) return false;
  for (int it = 0; it < options.max_newton_iterations; ++it) {
    if (norm < options.tolerance) return true;
    std::vector<Complex> dx;
    try {
      for (Complex& v : r) v = -v;
      dx = solve<Complex>(jacobian(x), r);
    } catch (const Error&) {
      return false;
    }
    double step = 1.0;
    std::vector<Complex> trial(x.size());
    std::vector<Complex> r_trial;
    double trial_norm = kInfinite;
    for (int h = 0; h < 30; ++h, step *= 0.5) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * dx[i];
      trial_norm = norm_at(trial, r_trial);
      if (trial_norm <= norm) break;
    }
    if (!(trial_norm <= norm)) {
      // Stalled at round-off level; accept only if already converged.
      return norm < options.tolerance;
    }
    x = trial;
    r = r_trial;
    norm = trial_norm;
  }
  return norm < options.tolerance;
}

// Continues a solution from s = 0 to s = 1 along coupling(s). Each accepted
// step ends converged; a failed step halves the increment.
template <class Path, class Solve>
void continue_along(int depth, Path&& coupling, Solve&& solve_at,
                    const SolverOptions& options) {
  if (depth == 0) return;
  const double full_step = 1.0 / depth;
  double s = 0.0;
  double ds = full_step;
  int halvings = 0;
  while (s < 1.0) {
    const double next = std::min(1.0, s + ds);
    if (solve_at(coupling(next))) {
      s = next;
      halvings = 0;
      ds = std::min(full_step, 2.0 * ds);
    } else {
      if (++halvings > options.max_halvings)
        throw NoConvergence("homotopy step failed after " +
                                std::to_string(options.max_halvings) + " halvings",
                            coupling(s));
      ds *= 0.5;
    }
  }
}

}  // namespace

LambdaVars<Complex> solve_quadratic_bethe(const CouplingModel<Complex>& model,
                                          std::span<const bool> occupation,
                                          const SolverOptions& options) {
  validate(model);
  const std::size_t n = model.eps.size();
  if (occupation.size() != n)
    throw Error(ErrorKind::CardinalityMismatch, "occupation needs one entry per level");
  if (static_cast<std::size_t>(std::count(occupation.begin(), occupation.end(), true)) !=
      model.M)
    throw Error(ErrorKind::InvalidArgument, "occupation does not hold M excitations");
  if (model.M == 0) return {std::vector<Complex>(n, 0.0)};

  const int depth = homotopy_depth(model.g, model.eps, options.start_fraction);
  auto coupling = [&](double s) { return model.g * std::exp2(depth * (s - 1.0)); };
  const Complex g0 = coupling(0.0);

  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = occupation[i] ? 2.0 / g0 : 0.0;

  // Every Bethe state with M excitations has sum_i Lambda_i = 2M/g; checking
  // it after each step keeps the continuation on the starting branch.
  auto on_branch = [&](const std::vector<Complex>& y, Complex g) {
    Complex sum(0.0);
    for (const Complex& v : y) sum += v;
    const Complex expected = 2.0 * static_cast<double>(model.M) / g;
    return std::abs(sum - expected) <= 1e-8 * (1.0 + std::abs(expected));
  };
  Complex g_current = g0;
  auto solve_at = [&](Complex g) {
    CouplingModel<Complex> m{g, model.eps, model.M};
    std::vector<Complex> trial = x;
    if (g != g_current) {
      // Euler predictor: J dLambda/dg = -(2/g^2) Lambda.
      CouplingModel<Complex> here{g_current, model.eps, model.M};
      std::vector<Complex> rhs(n);
      for (std::size_t i = 0; i < n; ++i) rhs[i] = -2.0 / (g_current * g_current) * x[i];
      try {
        std::vector<Complex> slope =
            solve<Complex>(quad_jacobian<Complex>({x}, here), std::span<const Complex>(rhs));
        for (std::size_t i = 0; i < n; ++i) trial[i] += slope[i] * (g - g_current);
      } catch (const Error&) {
      }
    }
    const std::vector<Complex> predicted = trial;
    bool ok = newton(
        trial, [&](const std::vector<Complex>& y) { return quad_residuals<Complex>({y}, m); },
        [&](const std::vector<Complex>& y) { return quad_jacobian<Complex>({y}, m); },
        options);
    if (ok && g != g_current) {
      double scale = 1.0, moved = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(x[i]));
        moved = std::max(moved, std::abs(trial[i] - predicted[i]));
      }
      ok = on_branch(trial, g) && moved <= 0.1 * scale;
    }
    if (ok) {
      x = std::move(trial);
      g_current = g;
    }
    return ok;
  };
  if (!solve_at(g0)) throw NoConvergence("no convergence at the starting coupling", g0);
  continue_along(depth, coupling, solve_at, options);
  return {x};
}

RapidityState<Complex> solve_richardson(const CouplingModel<Complex>& model,
                                        std::span<const std::size_t> initial_levels,
                                        const SolverOptions& options) {
  validate(model);
  if (initial_levels.size() != model.M)
    throw Error(ErrorKind::CardinalityMismatch, "need one starting level per rapidity");
  for (std::size_t a = 0; a < initial_levels.size(); ++a) {
    if (initial_levels[a] >= model.eps.size())
      throw Error(ErrorKind::InvalidArgument, "starting level out of range");
    for (std::size_t b = a + 1; b < initial_levels.size(); ++b)
      if (initial_levels[a] == initial_levels[b])
        throw Error(ErrorKind::InvalidArgument, "starting levels must be distinct");
  }
  if (model.M == 0) return {};

  const int depth = homotopy_depth(model.g, model.eps, options.start_fraction);
  auto coupling = [&](double s) {
    const Complex bump(1.0, 0.25 * std::sin(std::numbers::pi * s));
    return model.g * std::exp2(depth * (s - 1.0)) * bump;
  };
  const Complex g0 = coupling(0.0);

  std::vector<Complex> x;
  for (std::size_t level : initial_levels) x.push_back(model.eps[level] - g0 / 2.0);

  auto solve_at = [&](Complex g) {
    CouplingModel<Complex> m{g, model.eps, model.M};
    std::vector<Complex> trial = x;
    const bool ok = newton(
        trial,
        [&](const std::vector<Complex>& y) { return richardson_residuals<Complex>({y}, m); },
        [&](const std::vector<Complex>& y) { return richardson_jacobian<Complex>({y}, m); },
        options);
    if (ok) x = std::move(trial);
    return ok;
  };
  if (!solve_at(g0)) throw NoConvergence("no convergence at the starting coupling", g0);
  continue_along(depth, coupling, solve_at, options);
  return {x};
}

#define DWPF_BETHE_INSTANTIATE(T)                                                          \
  template void validate(const CouplingModel<T>&);                                        \
  template std::vector<T> richardson_residuals(const RapidityState<T>&,                   \
                                               const CouplingModel<T>&);                  \
  template SquareMatrix<T> richardson_jacobian(const RapidityState<T>&,                   \
                                               const CouplingModel<T>&);                  \
  template std::vector<T> quad_residuals(const LambdaVars<T>&, const CouplingModel<T>&);  \
  template SquareMatrix<T> quad_jacobian(const LambdaVars<T>&, const CouplingModel<T>&);  \
  template LambdaVars<T> lambdas_from_rapidities(const RapidityState<T>&,                 \
                                                 std::span<const T>);                     \
  template LambdaVars<T> dual_transform(const LambdaVars<T>&, const CouplingModel<T>&);   \
  template double max_abs(std::span<const T>);
DWPF_BETHE_INSTANTIATE(Rational)
DWPF_BETHE_INSTANTIATE(Complex)

}  // namespace dwpf
