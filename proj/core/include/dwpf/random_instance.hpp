#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dwpf/spin_system.hpp"

namespace dwpf {

/// Exact test instance: eps_i = i - 1 and omega rapidities p/q with
/// p in [-999, 999], q in [1, 64], redrawn while they hit an epsilon.
struct Instance {
  SpinSystem<Rational> system;
  RapiditySet<Rational> nu;
};

/// Engine for trial `trial` of a sweep; depends only on its arguments.
std::mt19937_64 trial_engine(std::uint64_t seed, int two_S, std::size_t n_spins,
                             std::size_t trial);

/// Draws one p/q rapidity that avoids every value in `forbidden`.
Rational random_rapidity(std::mt19937_64& rng, std::span<const Rational> forbidden);

std::vector<Rational> integer_epsilons(std::size_t n_spins);

/// Random rational in [-range, range] with denominator up to max_den.
Rational random_rational(std::mt19937_64& rng, long range = 999, long max_den = 64);

Instance random_instance(int two_S, std::size_t n_spins, std::mt19937_64& rng);

}  // namespace dwpf
