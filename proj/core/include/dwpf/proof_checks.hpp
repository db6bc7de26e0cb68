#pragma once

// Executable versions of the pole/residue conditions, the vanishing limit at
// infinity and the randomized permanent = determinant sweeps.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dwpf/partition.hpp"

namespace dwpf {

struct InstanceTag {
  int two_S = 0;
  std::size_t n_spins = 0;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  /// Extra rapidities beyond N (boson suite only).
  std::size_t extra = 0;
};

template <Scalar T>
struct CheckReport {
  std::string check;
  InstanceTag instance;
  T left{};
  T right{};
  bool holds = false;
  Mode mode = ScalarTraits<T>::mode;
  /// Named diagnostics in insertion order (probe gaps, ratios, magnitudes).
  std::vector<std::pair<std::string, double>> metrics;

  double metric(const std::string& name) const;
};

/// Residues of Z as a function of the last rapidity, one per epsilon,
/// recovered exactly from Z(x) = sum_j R_j/(x - eps_j) sampled at N points
/// eps[pole] +- k/7. The `consistent` flag records an extra sample point.
template <Scalar T>
struct ResidueExtraction {
  std::vector<T> residues;
  bool consistent = false;
};

template <Scalar T>
ResidueExtraction<T> extract_residues(const SpinSystem<T>& system,
                                      const RapiditySet<T>& nu_prefix, std::size_t pole);

/// Residue at nu_omega = eps_1 against 2S Z^{S-1/2}(nu_prefix). For 2S = 1
/// the reduced system is the spin-1/2 chain eps_2..eps_N (Z = 1 when N = 1).
/// Also probes (nu_omega - eps_1) Z at eps_1 + t for t = 1/7, 1/11, 1/13 and
/// the symmetric average over eps_1 +- t for t = 10^-1, 10^-2, 10^-3.
template <Scalar T>
CheckReport<T> check_residue_eps1(const SpinSystem<T>& system,
                                  const RapiditySet<T>& nu_prefix);

/// Residue at nu_omega = eps_j (0-based j >= 1) against Z of the system with
/// spin j removed. Needs N >= 2.
template <Scalar T>
CheckReport<T> check_residue_epsj(const SpinSystem<T>& system,
                                  const RapiditySet<T>& nu_prefix, std::size_t j);

/// |Z(t nu)| strictly decreasing over increasing `scales`, and
/// det J^lim = 0 (exactly, or below 1e-9 times the row-norm product).
template <Scalar T>
CheckReport<T> check_infinity_limit(const SpinSystem<T>& system, const RapiditySet<T>& nu,
                                    std::span<const T> scales);

struct SweepConfig {
  /// (two_S, N) pairs; for the boson suite (N, M).
  std::vector<std::pair<int, std::size_t>> grid;
  std::size_t trials = 20;
  std::uint64_t seed = 42;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

/// z_permanent against z_determinant on random instances. Reports are
/// ordered by grid point, then trial. Throws CostGuard before doing any work
/// if a grid point exceeds kMaxPermanentOmega.
template <Scalar T>
std::vector<CheckReport<T>> identity_sweep(const SweepConfig& config);

/// check_residue_eps1 and check_residue_epsj (every j) on random prefixes.
template <Scalar T>
std::vector<CheckReport<T>> residue_sweep(const SweepConfig& config);

/// check_infinity_limit at scales 10^3 and 10^6 with a decay-factor metric.
template <Scalar T>
std::vector<CheckReport<T>> limit_sweep(const SweepConfig& config);

/// Borchardt identity for the grid's N values (two_S ignored).
template <Scalar T>
std::vector<CheckReport<T>> borchardt_sweep(const SweepConfig& config);

/// Sum-of-permanents identity; grid entries are (N, M).
template <Scalar T>
std::vector<CheckReport<T>> boson_sweep(const SweepConfig& config);

template <Scalar T>
bool all_hold(std::span<const CheckReport<T>> reports) {
  for (const auto& r : reports)
    if (!r.holds) return false;
  return true;
}

#define DWPF_CHECKS_EXTERN(T)                                                             \
  extern template struct CheckReport<T>;                                                  \
  extern template ResidueExtraction<T> extract_residues(const SpinSystem<T>&,             \
                                                        const RapiditySet<T>&,            \
                                                        std::size_t);                     \
  extern template CheckReport<T> check_residue_eps1(const SpinSystem<T>&,                 \
                                                    const RapiditySet<T>&);               \
  extern template CheckReport<T> check_residue_epsj(const SpinSystem<T>&,                 \
                                                    const RapiditySet<T>&, std::size_t);  \
  extern template CheckReport<T> check_infinity_limit(                                    \
      const SpinSystem<T>&, const RapiditySet<T>&, std::span<const T>);                   \
  extern template std::vector<CheckReport<T>> identity_sweep<T>(const SweepConfig&);      \
  extern template std::vector<CheckReport<T>> residue_sweep<T>(const SweepConfig&);       \
  extern template std::vector<CheckReport<T>> limit_sweep<T>(const SweepConfig&);         \
  extern template std::vector<CheckReport<T>> borchardt_sweep<T>(const SweepConfig&);     \
  extern template std::vector<CheckReport<T>> boson_sweep<T>(const SweepConfig&);
DWPF_CHECKS_EXTERN(Rational)
DWPF_CHECKS_EXTERN(Complex)
#undef DWPF_CHECKS_EXTERN

}  // namespace dwpf
