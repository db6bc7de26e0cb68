#pragma once

// Spin-1/2 Richardson-Gaudin Bethe equations in rapidity form and in the
// eigenvalue-based form Lambda_i = sum_k 1/(eps_i - lambda_k), with
// coupling-homotopy Newton solvers for both.

#include <cstddef>
#include <span>
#include <vector>

#include "dwpf/matrix.hpp"

namespace dwpf {

template <Scalar T>
struct CouplingModel {
  T g;
  std::vector<T> eps;
  /// Excitation count, 0 <= M <= N.
  std::size_t M = 0;
};

template <Scalar T>
struct LambdaVars {
  std::vector<T> values;
};

template <Scalar T>
struct RapidityState {
  std::vector<T> lambdas;
};

/// Throws DegenerateEpsilons, or InvalidArgument for g = 0 or M > N.
template <Scalar T>
void validate(const CouplingModel<T>& model);

/// r_i = 2/g - sum_{j != i} 2/(lambda_i - lambda_j) - sum_k 1/(eps_k - lambda_i).
template <Scalar T>
std::vector<T> richardson_residuals(const RapidityState<T>& state,
                                    const CouplingModel<T>& model);

template <Scalar T>
SquareMatrix<T> richardson_jacobian(const RapidityState<T>& state,
                                    const CouplingModel<T>& model);

/// r_i = Lambda_i^2 - sum_{j != i} (Lambda_i - Lambda_j)/(eps_i - eps_j)
///       - (2/g) Lambda_i.
template <Scalar T>
std::vector<T> quad_residuals(const LambdaVars<T>& lv, const CouplingModel<T>& model);

/// d r_i / d Lambda_j of quad_residuals.
template <Scalar T>
SquareMatrix<T> quad_jacobian(const LambdaVars<T>& lv, const CouplingModel<T>& model);

template <Scalar T>
LambdaVars<T> lambdas_from_rapidities(const RapidityState<T>& state,
                                      std::span<const T> eps);

/// Lambda_i - 2/g: the eigenvalue-based variables of the dual representation.
template <Scalar T>
LambdaVars<T> dual_transform(const LambdaVars<T>& lv, const CouplingModel<T>& model);

struct SolverOptions {
  double tolerance = 1e-12;
  int max_halvings = 40;
  int max_newton_iterations = 60;
  /// |g0| <= start_fraction * (smallest level spacing).
  double start_fraction = 0.05;
};

/// Newton on quad_residuals with a geometric homotopy g0 = g/2^k -> g,
/// seeded at Lambda_i = (2/g0) occupation_i. Float mode only.
/// Throws NoConvergence carrying the last coupling reached.
LambdaVars<Complex> solve_quadratic_bethe(const CouplingModel<Complex>& model,
                                          std::span<const bool> occupation,
                                          const SolverOptions& options = {});

/// Newton on the rapidity equations from lambda_k = eps_{levels[k]} - g0/2,
/// continued to g along a path that leaves the real axis in between so that
/// rapidities never collide.
RapidityState<Complex> solve_richardson(const CouplingModel<Complex>& model,
                                        std::span<const std::size_t> initial_levels,
                                        const SolverOptions& options = {});

/// Largest |r_i|.
template <Scalar T>
double max_abs(std::span<const T> residuals);

#define DWPF_BETHE_EXTERN(T)                                                            \
  extern template void validate(const CouplingModel<T>&);                               \
  extern template std::vector<T> richardson_residuals(const RapidityState<T>&,          \
                                                      const CouplingModel<T>&);         \
  extern template SquareMatrix<T> richardson_jacobian(const RapidityState<T>&,          \
                                                      const CouplingModel<T>&);         \
  extern template std::vector<T> quad_residuals(const LambdaVars<T>&,                   \
                                                const CouplingModel<T>&);               \
  extern template SquareMatrix<T> quad_jacobian(const LambdaVars<T>&,                   \
                                                const CouplingModel<T>&);               \
  extern template LambdaVars<T> lambdas_from_rapidities(const RapidityState<T>&,        \
                                                        std::span<const T>);            \
  extern template LambdaVars<T> dual_transform(const LambdaVars<T>&,                    \
                                               const CouplingModel<T>&);                \
  extern template double max_abs(std::span<const T>);
DWPF_BETHE_EXTERN(Rational)
DWPF_BETHE_EXTERN(Complex)
#undef DWPF_BETHE_EXTERN

}  // namespace dwpf
