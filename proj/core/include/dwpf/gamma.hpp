#pragma once

// Lambda(z) = sum_i 1/(z - nu_i), its derivative tower, and the hierarchy
// Gamma_n(z) = -Q^(n)(z)/Q(z) with Q(z) = prod_i (z - nu_i). Gamma_n is
// available through two independent routes (symbolic recursion and the
// closed-form partition sum) that must agree.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "dwpf/spin_system.hpp"

namespace dwpf {

template <Scalar T>
struct LambdaDerivTable {
  T z;
  int order = 0;
  /// values[a] = Lambda^(a)(z), a = 0..order.
  std::vector<T> values;

  const T& operator[](std::size_t a) const { return values[a]; }
};

/// Lambda^(a)(z) = (-1)^a a! sum_i (z - nu_i)^-(a+1) for a = 0..n_max.
/// Throws PoleAtEvaluationPoint when z equals a rapidity.
template <Scalar T>
LambdaDerivTable<T> lambda_derivatives(std::span<const T> nu, const T& z, int n_max);

/// Integer polynomial in the tower variables Lambda^(0), Lambda^(1), ...
/// A term's key holds the exponents (k_0, k_1, ...), trailing zeros trimmed.
class TowerPolynomial {
 public:
  using Exponents = std::vector<unsigned>;

  static TowerPolynomial constant(long c);

  /// d/dz, using d Lambda^(a)/dz = Lambda^(a+1).
  TowerPolynomial derivative() const;
  /// Multiplication by Lambda^(0).
  TowerPolynomial times_lambda() const;
  TowerPolynomial operator+(const TowerPolynomial& other) const;

  /// Highest derivative order appearing; -1 for a constant.
  int max_order() const;
  const std::map<Exponents, mpz_class>& terms() const noexcept { return terms_; }
  mpz_class coefficient(Exponents k) const;

  template <Scalar T>
  T evaluate(const LambdaDerivTable<T>& lam) const;

 private:
  void add(Exponents k, const mpz_class& c);
  std::map<Exponents, mpz_class> terms_;
};

/// Gamma_n as a tower polynomial, built by Gamma_0 = -1 and
/// Gamma_n = Gamma_{n-1}' + Lambda Gamma_{n-1}.
TowerPolynomial gamma_polynomial(int n);

/// [Gamma_0, ..., Gamma_{n_max}] from the recursion above. Needs
/// lam.order >= n_max - 1 (InsufficientDerivatives otherwise).
template <Scalar T>
std::vector<T> gamma_recursive(const LambdaDerivTable<T>& lam, int n_max);

/// n! / prod_a [((a+1)!)^{k_a} k_a!] when sum_a (a+1) k_a = n, else 0.
/// k must have n+1 entries.
Rational gamma_partition_coefficient(std::span<const unsigned> k, unsigned n);

/// Gamma_n = -sum_k C^n_k prod_a (Lambda^(a))^{k_a}, summed over every k with
/// sum_a (a+1) k_a = n.
template <Scalar T>
T gamma_explicit(const LambdaDerivTable<T>& lam, int n);

/// Gamma_n(z) for one point, computed on demand.
template <Scalar T>
T gamma_at(std::span<const T> nu, const T& z, int n);

/// Gamma values feeding the N x N determinant.
template <Scalar T>
struct GammaTable {
  SpinSystem<T> system;
  /// Gamma_0(eps_1) ... Gamma_{2S}(eps_1).
  std::vector<T> gammas_at_eps1;
  /// Gamma_1(eps_j) for j = 2..N (index 0 is eps_2).
  std::vector<T> gamma1_at_others;
};

/// Throws CardinalityMismatch unless |nu| = omega, PoleAtEvaluationPoint if a
/// rapidity sits on an inhomogeneity.
template <Scalar T>
GammaTable<T> build_gamma_table(const SpinSystem<T>& system,
                                const RapiditySet<T>& nu);

/// w_n = (-1)^{n+1} Gamma_n / n!, the elementary symmetric function of degree
/// n in {1/(nu_i - z)}. The large-spin row of the determinant is linear in
/// these: w_0 = 1 and the residue of w_n at nu_k = z is w_{n-1} of the
/// remaining rapidities.
template <Scalar T>
std::vector<T> pole_weights(std::span<const T> gammas);

#define DWPF_GAMMA_EXTERN(T)                                                        \
  extern template LambdaDerivTable<T> lambda_derivatives(std::span<const T>,        \
                                                         const T&, int);            \
  extern template T TowerPolynomial::evaluate(const LambdaDerivTable<T>&) const;    \
  extern template std::vector<T> gamma_recursive(const LambdaDerivTable<T>&, int);  \
  extern template T gamma_explicit(const LambdaDerivTable<T>&, int);                \
  extern template T gamma_at(std::span<const T>, const T&, int);                    \
  extern template GammaTable<T> build_gamma_table(const SpinSystem<T>&,             \
                                                  const RapiditySet<T>&);           \
  extern template std::vector<T> pole_weights(std::span<const T>);
DWPF_GAMMA_EXTERN(Rational)
DWPF_GAMMA_EXTERN(Complex)
#undef DWPF_GAMMA_EXTERN

}  // namespace dwpf
