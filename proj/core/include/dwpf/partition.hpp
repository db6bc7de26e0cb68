#pragma once

// Domain-wall partition function Z of one spin S plus N-1 spins 1/2, by the
// exponential permanent definition and by the N x N determinant of J^S, plus
// the spin-1/2 Cauchy identities the construction starts from.

#include <cstddef>
#include <span>
#include <vector>

#include "dwpf/gamma.hpp"
#include "dwpf/kernels.hpp"
#include "dwpf/spin_system.hpp"

namespace dwpf {

/// Largest omega accepted by the permanent routes.
inline constexpr std::size_t kMaxPermanentOmega = 14;
/// Largest N + M accepted by boson_sum_determinant.
inline constexpr std::size_t kMaxBosonRapidities = 12;

enum class Method { Permanent, Determinant };

template <Scalar T>
struct PartitionValue {
  T value;
  Method method;
  SpinSystem<T> system;
  RapiditySet<T> rapidities;
};

/// C_ij = 1/(nu_i - eps_j).
template <Scalar T>
SquareMatrix<T> cauchy_matrix(std::span<const T> nu, std::span<const T> eps);

/// The omega x omega Cauchy matrix against the multiset
/// {eps_1 (two_S times), eps_2, ..., eps_N}.
template <Scalar T>
SquareMatrix<T> repeated_cauchy_matrix(const SpinSystem<T>& system,
                                       const RapiditySet<T>& nu);

/// Z = sum over 2S-subsets A of the rapidities of
///     (2S)! / prod_{a in A}(a - eps_1) * Perm C(rest, eps_2..eps_N).
/// Throws CostGuard for omega > kMaxPermanentOmega.
template <Scalar T>
PartitionValue<T> z_permanent(const SpinSystem<T>& system, const RapiditySet<T>& nu);

/// Coefficients of J^S. Large-spin row entries are expressed against the pole
/// weights w_n (see pole_weights): J_11 = (2S)! sum_n c11[n] w_n and
/// J_1j = (2S)! sum_n c1j[j-1][n] w_n.
template <Scalar T>
struct StructureCoefficients {
  int two_S = 0;
  /// C^n_11, n = 0..2S: sum over size-(2S-n) multisets E of {eps_2..eps_N} of
  /// prod_k 1/(eps_1 - E_k).
  std::vector<T> c11;
  /// C^n_1j for j = 2..N (outer index j-1, so c1j[0] is unused and empty),
  /// n = 0..2S-1. Signed: C^n_1j = -sum_{p=n}^{2S-1} sum_{E} (2S-p)/(eps_1 -
  /// eps_j)^{2S-p} prod_k 1/(eps_1 - E_k), E over size-(p-n) multisets
  /// avoiding eps_j.
  std::vector<std::vector<T>> c1j;
  /// C^0_ii for i = 2..N (index i-1; entry 0 unused): 2S/(eps_i - eps_1) +
  /// sum_{k != 1, i} 1/(eps_i - eps_k). C^1_ii = 1.
  std::vector<T> c0_diag;
  /// C^0_ij = 1/(eps_j - eps_i) for i >= 2, j != i.
  T c0_off(std::size_t i, std::size_t j) const { return T(1) / (eps[j] - eps[i]); }

  std::vector<T> eps;
};

template <Scalar T>
StructureCoefficients<T> structure_coefficients(const SpinSystem<T>& system);

/// J_ii = sum_{k != i} 1/(eps_i - eps_k) - sum_k 1/(eps_i - nu_k),
/// J_ij = 1/(eps_j - eps_i).
template <Scalar T>
SquareMatrix<T> build_J_spin_half(std::span<const T> eps, std::span<const T> nu);

template <Scalar T>
SquareMatrix<T> build_J_higher(const SpinSystem<T>& system, const GammaTable<T>& gamma);

/// J^S with every rapidity sent to infinity: w_0 = 1, all other pole weights
/// and the Gamma_1(eps_i) vanish.
template <Scalar T>
SquareMatrix<T> build_J_limit(const SpinSystem<T>& system);

template <Scalar T>
PartitionValue<T> z_determinant(const SpinSystem<T>& system, const RapiditySet<T>& nu);

template <Scalar T>
struct BorchardtResult {
  T det_c;
  T perm_c;
  T det_m;
  bool holds;
};

/// Det C * Perm C against Det M, M_ij = 1/(nu_i - eps_j)^2.
template <Scalar T>
BorchardtResult<T> borchardt_check(std::span<const T> nu, std::span<const T> eps);

template <Scalar T>
struct BosonSumResult {
  T sum_of_permanents;
  T det_J_tilde;
  bool holds;
};

/// Sum over N-subsets of nu (|nu| = N + M) of Perm C against det J~, where
/// J~_ii = sum_{k != i} 1/(eps_i - eps_k) - sum_{k=1}^{N+M} 1/(eps_i - nu_k)
/// and J~_ij = 1/(eps_i - eps_j).
template <Scalar T>
BosonSumResult<T> boson_sum_determinant(std::span<const T> nu, std::span<const T> eps);

#define DWPF_PARTITION_EXTERN(T)                                                        \
  extern template SquareMatrix<T> cauchy_matrix(std::span<const T>, std::span<const T>); \
  extern template SquareMatrix<T> repeated_cauchy_matrix(const SpinSystem<T>&,           \
                                                         const RapiditySet<T>&);         \
  extern template PartitionValue<T> z_permanent(const SpinSystem<T>&,                    \
                                                const RapiditySet<T>&);                  \
  extern template StructureCoefficients<T> structure_coefficients(const SpinSystem<T>&); \
  extern template SquareMatrix<T> build_J_spin_half(std::span<const T>,                  \
                                                    std::span<const T>);                 \
  extern template SquareMatrix<T> build_J_higher(const SpinSystem<T>&,                   \
                                                 const GammaTable<T>&);                  \
  extern template SquareMatrix<T> build_J_limit(const SpinSystem<T>&);                   \
  extern template PartitionValue<T> z_determinant(const SpinSystem<T>&,                  \
                                                  const RapiditySet<T>&);                \
  extern template BorchardtResult<T> borchardt_check(std::span<const T>,                 \
                                                     std::span<const T>);                \
  extern template BosonSumResult<T> boson_sum_determinant(std::span<const T>,            \
                                                          std::span<const T>);
DWPF_PARTITION_EXTERN(Rational)
DWPF_PARTITION_EXTERN(Complex)
#undef DWPF_PARTITION_EXTERN

}  // namespace dwpf
