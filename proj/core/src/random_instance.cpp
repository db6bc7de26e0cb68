#include "dwpf/random_instance.hpp"

#include <algorithm>

namespace dwpf {

std::mt19937_64 trial_engine(std::uint64_t seed, int two_S, std::size_t n_spins,
                             std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(two_S), static_cast<std::uint32_t>(n_spins),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

Rational random_rational(std::mt19937_64& rng, long range, long max_den) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, max_den);
  Rational q{mpz_class(num(rng)), mpz_class(den(rng))};
  q.canonicalize();
  return q;
}

Rational random_rapidity(std::mt19937_64& rng, std::span<const Rational> forbidden) {
  while (true) {
    Rational q = random_rational(rng);
    if (std::find(forbidden.begin(), forbidden.end(), q) == forbidden.end()) return q;
  }
}

std::vector<Rational> integer_epsilons(std::size_t n_spins) {
  std::vector<Rational> eps;
  for (std::size_t i = 0; i < n_spins; ++i) eps.emplace_back(static_cast<long>(i));
  return eps;
}

Instance random_instance(int two_S, std::size_t n_spins, std::mt19937_64& rng) {
  SpinSystem<Rational> system(two_S, integer_epsilons(n_spins));
  RapiditySet<Rational> nu;
  for (std::size_t k = 0; k < system.omega(); ++k)
    nu.values.push_back(random_rapidity(rng, system.epsilons()));
  return {std::move(system), std::move(nu)};
}

}  // namespace dwpf
