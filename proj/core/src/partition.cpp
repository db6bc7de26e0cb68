#include "dwpf/partition.hpp"

#include <algorithm>
#include <string>

#include "dwpf/combinatorics.hpp"

namespace dwpf {

namespace {

template <Scalar T>
void require_distinct(std::span<const T> eps) {
  for (std::size_t i = 0; i < eps.size(); ++i)
    for (std::size_t j = i + 1; j < eps.size(); ++j)
      if (eps[i] == eps[j])
        throw Error(ErrorKind::DegenerateEpsilons,
                    "epsilon " + std::to_string(i + 1) + " equals epsilon " +
                        std::to_string(j + 1));
}

template <Scalar T>
T factorial_as(unsigned n) {
  return from_rational<T>(Rational(factorial(n)));
}

// Sum over size-k multisets drawn from `ground` of the product of the chosen
// values.
template <Scalar T>
T multiset_product_sum(std::span<const T> ground, std::size_t k) {
  T sum(0);
  for_each_multiset(ground.size(), k, [&](std::span<const std::size_t> idx) {
    T term(1);
    for (std::size_t i : idx) term *= ground[i];
    sum += term;
  });
  return sum;
}

template <Scalar T>
SquareMatrix<T> assemble_J(const SpinSystem<T>& system,
                           const StructureCoefficients<T>& c,
                           std::span<const T> weights,
                           std::span<const T> gamma1_at_others) {
  const std::size_t n = system.n_spins();
  const auto two_S = static_cast<std::size_t>(system.two_S());
  const T scale = factorial_as<T>(static_cast<unsigned>(two_S));
  SquareMatrix<T> j(n);

  T first(0);
  for (std::size_t k = 0; k <= two_S; ++k) first += c.c11[k] * weights[k];
  j(0, 0) = scale * first;
  for (std::size_t col = 1; col < n; ++col) {
    T entry(0);
    for (std::size_t k = 0; k < two_S; ++k) entry += c.c1j[col][k] * weights[k];
    j(0, col) = scale * entry;
  }
  for (std::size_t row = 1; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col)
      j(row, col) = row == col ? c.c0_diag[row] + gamma1_at_others[row - 1]
                               : c.c0_off(row, col);
  }
  return j;
}

}  // namespace

template <Scalar T>
SquareMatrix<T> cauchy_matrix(std::span<const T> nu, std::span<const T> eps) {
  if (nu.size() != eps.size())
    throw Error(ErrorKind::CardinalityMismatch, "Cauchy matrix needs |nu| = |eps|");
  require_no_poles(nu, eps);
  SquareMatrix<T> c(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i)
    for (std::size_t j = 0; j < eps.size(); ++j) c(i, j) = T(1) / (nu[i] - eps[j]);
  return c;
}

template <Scalar T>
SquareMatrix<T> repeated_cauchy_matrix(const SpinSystem<T>& system,
                                       const RapiditySet<T>& nu) {
  if (nu.size() != system.omega())
    throw Error(ErrorKind::CardinalityMismatch,
                "expected " + std::to_string(system.omega()) + " rapidities");
  std::vector<T> columns(static_cast<std::size_t>(system.two_S()), system.epsilon(0));
  for (std::size_t j = 1; j < system.n_spins(); ++j) columns.push_back(system.epsilon(j));
  return cauchy_matrix<T>(nu.view(), columns);
}

template <Scalar T>
PartitionValue<T> z_permanent(const SpinSystem<T>& system, const RapiditySet<T>& nu) {
  const std::size_t omega = system.omega();
  if (nu.size() != omega)
    throw Error(ErrorKind::CardinalityMismatch,
                "expected " + std::to_string(omega) + " rapidities, got " +
                    std::to_string(nu.size()));
  if (omega > kMaxPermanentOmega)
    throw Error(ErrorKind::CostGuard, "permanent route refuses omega = " +
                                          std::to_string(omega) + " > " +
                                          std::to_string(kMaxPermanentOmega));
  require_no_poles(nu.view(), system.epsilons());

  const auto two_S = static_cast<std::size_t>(system.two_S());
  const T weight = factorial_as<T>(static_cast<unsigned>(two_S));
  const std::span<const T> half_spins = system.epsilons().subspan(1);
  std::vector<bool> in_subset(omega);
  std::vector<T> rest;
  T total(0);
  for_each_subset(omega, two_S, [&](std::span<const std::size_t> subset) {
    std::fill(in_subset.begin(), in_subset.end(), false);
    T term = weight;
    for (std::size_t a : subset) {
      in_subset[a] = true;
      term /= nu[a] - system.epsilon(0);
    }
    if (!half_spins.empty()) {
      rest.clear();
      for (std::size_t i = 0; i < omega; ++i)
        if (!in_subset[i]) rest.push_back(nu[i]);
      term *= permanent(cauchy_matrix<T>(rest, half_spins));
    }
    total += term;
  });
  return {total, Method::Permanent, system, nu};
}

template <Scalar T>
StructureCoefficients<T> structure_coefficients(const SpinSystem<T>& system) {
  const std::size_t n = system.n_spins();
  const auto two_S = static_cast<std::size_t>(system.two_S());
  const T& e1 = system.epsilon(0);

  // x_k = 1/(eps_1 - eps_k) over the spins 1/2.
  std::vector<T> x;
  for (std::size_t k = 1; k < n; ++k) x.push_back(T(1) / (e1 - system.epsilon(k)));

  StructureCoefficients<T> c;
  c.two_S = system.two_S();
  c.eps.assign(system.epsilons().begin(), system.epsilons().end());
  for (std::size_t k = 0; k <= two_S; ++k)
    c.c11.push_back(multiset_product_sum<T>(x, two_S - k));

  c.c1j.resize(n);
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<T> others;
    for (std::size_t k = 1; k < n; ++k)
      if (k != j) others.push_back(x[k - 1]);
    const T& xj = x[j - 1];
    for (std::size_t order = 0; order < two_S; ++order) {
      T bracket(0);
      for (std::size_t p = order; p < two_S; ++p) {
        T xj_power(1);
        for (std::size_t q = 0; q < two_S - p; ++q) xj_power *= xj;
        bracket += from_rational<T>(Rational(static_cast<long>(two_S - p))) * xj_power *
                   multiset_product_sum<T>(others, p - order);
      }
      c.c1j[j].push_back(-bracket);
    }
  }

  c.c0_diag.assign(n, T(0));
  for (std::size_t i = 1; i < n; ++i) {
    T d = from_rational<T>(Rational(static_cast<long>(two_S))) /
          (system.epsilon(i) - e1);
    for (std::size_t k = 1; k < n; ++k)
      if (k != i) d += T(1) / (system.epsilon(i) - system.epsilon(k));
    c.c0_diag[i] = d;
  }
  return c;
}

template <Scalar T>
SquareMatrix<T> build_J_spin_half(std::span<const T> eps, std::span<const T> nu) {
  if (nu.size() != eps.size())
    throw Error(ErrorKind::CardinalityMismatch, "need |nu| = |eps|");
  require_distinct(eps);
  require_no_poles(nu, eps);
  const std::size_t n = eps.size();
  SquareMatrix<T> j(n);
  for (std::size_t i = 0; i < n; ++i) {
    T d(0);
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) d += T(1) / (eps[i] - eps[k]);
    for (const T& v : nu) d -= T(1) / (eps[i] - v);
    j(i, i) = d;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) j(i, k) = T(1) / (eps[k] - eps[i]);
  }
  return j;
}

template <Scalar T>
SquareMatrix<T> build_J_higher(const SpinSystem<T>& system, const GammaTable<T>& gamma) {
  if (gamma.gammas_at_eps1.size() != static_cast<std::size_t>(system.two_S()) + 1 ||
      gamma.gamma1_at_others.size() + 1 != system.n_spins() || !(gamma.system == system))
    throw Error(ErrorKind::CardinalityMismatch, "Gamma table was built for another system");
  const auto weights = pole_weights<T>(gamma.gammas_at_eps1);
  return assemble_J(system, structure_coefficients(system), std::span<const T>(weights),
                    std::span<const T>(gamma.gamma1_at_others));
}

template <Scalar T>
SquareMatrix<T> build_J_limit(const SpinSystem<T>& system) {
  std::vector<T> weights(static_cast<std::size_t>(system.two_S()) + 1, T(0));
  weights[0] = T(1);
  const std::vector<T> gamma1(system.n_spins() - 1, T(0));
  return assemble_J(system, structure_coefficients(system), std::span<const T>(weights),
                    std::span<const T>(gamma1));
}

template <Scalar T>
PartitionValue<T> z_determinant(const SpinSystem<T>& system, const RapiditySet<T>& nu) {
  const auto table = build_gamma_table(system, nu);
  return {determinant(build_J_higher(system, table)), Method::Determinant, system, nu};
}

template <Scalar T>
BorchardtResult<T> borchardt_check(std::span<const T> nu, std::span<const T> eps) {
  require_distinct(eps);
  const auto c = cauchy_matrix(nu, eps);
  SquareMatrix<T> m(c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = 0; j < c.dim(); ++j) m(i, j) = c(i, j) * c(i, j);
  BorchardtResult<T> r{determinant(c), permanent(c), determinant(m), false};
  r.holds = agrees<T>(r.det_c * r.perm_c, r.det_m);
  return r;
}

template <Scalar T>
BosonSumResult<T> boson_sum_determinant(std::span<const T> nu, std::span<const T> eps) {
  const std::size_t n = eps.size();
  if (n == 0 || nu.size() < n)
    throw Error(ErrorKind::CardinalityMismatch, "need |nu| >= |eps| >= 1");
  if (nu.size() > kMaxBosonRapidities)
    throw Error(ErrorKind::CostGuard, "boson sum refuses N + M = " +
                                          std::to_string(nu.size()) + " > " +
                                          std::to_string(kMaxBosonRapidities));
  require_distinct(eps);
  require_no_poles(nu, eps);

  T sum(0);
  std::vector<T> chosen(n);
  for_each_subset(nu.size(), n, [&](std::span<const std::size_t> subset) {
    for (std::size_t q = 0; q < n; ++q) chosen[q] = nu[subset[q]];
    sum += permanent(cauchy_matrix<T>(chosen, eps));
  });

  SquareMatrix<T> jt(n);
  for (std::size_t i = 0; i < n; ++i) {
    T d(0);
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) d += T(1) / (eps[i] - eps[k]);
    for (const T& v : nu) d -= T(1) / (eps[i] - v);
    jt(i, i) = d;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) jt(i, k) = T(1) / (eps[i] - eps[k]);
  }
  BosonSumResult<T> r{sum, determinant(jt), false};
  r.holds = agrees<T>(r.sum_of_permanents, r.det_J_tilde);
  return r;
}

#define DWPF_PARTITION_INSTANTIATE(T)                                                   \
  template SquareMatrix<T> cauchy_matrix(std::span<const T>, std::span<const T>);       \
  template SquareMatrix<T> repeated_cauchy_matrix(const SpinSystem<T>&,                 \
                                                  const RapiditySet<T>&);               \
  template PartitionValue<T> z_permanent(const SpinSystem<T>&, const RapiditySet<T>&);  \
  template StructureCoefficients<T> structure_coefficients(const SpinSystem<T>&);       \
  template SquareMatrix<T> build_J_spin_half(std::span<const T>, std::span<const T>);   \
  template SquareMatrix<T> build_J_higher(const SpinSystem<T>&, const GammaTable<T>&);  \
  template SquareMatrix<T> build_J_limit(const SpinSystem<T>&);                         \
  template PartitionValue<T> z_determinant(const SpinSystem<T>&, const RapiditySet<T>&); \
  template BorchardtResult<T> borchardt_check(std::span<const T>, std::span<const T>);   \
  template BosonSumResult<T> boson_sum_determinant(std::span<const T>, std::span<const T>);
DWPF_PARTITION_INSTANTIATE(Rational)
DWPF_PARTITION_INSTANTIATE(Complex)

}  // namespace dwpf
