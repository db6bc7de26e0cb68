#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dwpf/error.hpp"
#include "dwpf/scalar.hpp"

namespace dwpf {

/// One spin of length S = two_S/2 at epsilons[0] plus N-1 spins 1/2 at the
/// remaining inhomogeneities. The DWBC overlap needs omega = two_S + N - 1
/// rapidities.
template <Scalar T>
class SpinSystem {
 public:
  /// Throws InvalidArgument for two_S < 1 or no spins, DegenerateEpsilons for
  /// repeated inhomogeneities.
  SpinSystem(int two_S, std::vector<T> epsilons)
      : two_S_(two_S), epsilons_(std::move(epsilons)) {
    if (two_S_ < 1)
      throw Error(ErrorKind::InvalidArgument, "two_S must be at least 1");
    if (epsilons_.empty())
      throw Error(ErrorKind::InvalidArgument, "at least one spin is required");
    for (std::size_t i = 0; i < epsilons_.size(); ++i)
      for (std::size_t j = i + 1; j < epsilons_.size(); ++j)
        if (epsilons_[i] == epsilons_[j])
          throw Error(ErrorKind::DegenerateEpsilons,
                      "epsilon " + std::to_string(i + 1) + " equals epsilon " +
                          std::to_string(j + 1));
  }

  int two_S() const noexcept { return two_S_; }
  std::size_t n_spins() const noexcept { return epsilons_.size(); }
  std::size_t omega() const noexcept {
    return static_cast<std::size_t>(two_S_) + epsilons_.size() - 1;
  }
  std::span<const T> epsilons() const noexcept { return epsilons_; }
  const T& epsilon(std::size_t i) const { return epsilons_[i]; }

  /// Same spins with the large spin lowered by 1/2 (two_S >= 2).
  SpinSystem lowered() const { return SpinSystem(two_S_ - 1, epsilons_); }

  /// Same large spin with spin-1/2 number `j` (0-based, j >= 1) removed.
  SpinSystem without_spin(std::size_t j) const {
    if (j == 0 || j >= epsilons_.size())
      throw Error(ErrorKind::InvalidArgument, "only a spin-1/2 can be removed");
    std::vector<T> rest;
    for (std::size_t k = 0; k < epsilons_.size(); ++k)
      if (k != j) rest.push_back(epsilons_[k]);
    return SpinSystem(two_S_, std::move(rest));
  }

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

 private:
  int two_S_;
  std::vector<T> epsilons_;
};

/// The rapidities nu_1..nu_omega of the DWBC overlap. Repeated values are
/// allowed.
template <Scalar T>
struct RapiditySet {
  std::vector<T> values;

  std::size_t size() const noexcept { return values.size(); }
  std::span<const T> view() const noexcept { return values; }
  const T& operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const RapiditySet&, const RapiditySet&) = default;
};

/// Throws PoleAtEvaluationPoint if any rapidity sits on any inhomogeneity.
template <Scalar T>
void require_no_poles(std::span<const T> nu, std::span<const T> eps) {
  for (std::size_t i = 0; i < nu.size(); ++i)
    for (std::size_t j = 0; j < eps.size(); ++j)
      if (nu[i] == eps[j])
        throw Error(ErrorKind::PoleAtEvaluationPoint,
                    "rapidity " + std::to_string(i + 1) + " coincides with epsilon " +
                        std::to_string(j + 1));
}

template <Scalar T>
SpinSystem<T> convert_system(const SpinSystem<Rational>& s) {
  std::vector<T> eps;
  for (const Rational& e : s.epsilons()) eps.push_back(from_rational<T>(e));
  return SpinSystem<T>(s.two_S(), std::move(eps));
}

template <Scalar T>
RapiditySet<T> convert_rapidities(const RapiditySet<Rational>& nu) {
  RapiditySet<T> out;
  for (const Rational& v : nu.values) out.values.push_back(from_rational<T>(v));
  return out;
}

}  // namespace dwpf
