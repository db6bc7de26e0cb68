#pragma once

#include <random>
#include <string>
#include <vector>

#include "dwpf/matrix.hpp"
#include "dwpf/random_instance.hpp"
#include "oracles.hpp"

namespace testing_support {

using dwpf::Rational;

inline Rational q(const std::string& s) { return dwpf::parse_rational(s); }

inline std::vector<Rational> qs(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(q(x));
  return out;
}

/// n distinct random rationals avoiding `forbidden`.
inline std::vector<Rational> distinct_rationals(std::mt19937_64& rng, std::size_t n,
                                                std::vector<Rational> forbidden = {}) {
  std::vector<Rational> out;
  while (out.size() < n) {
    Rational r = dwpf::random_rapidity(rng, forbidden);
    out.push_back(r);
    forbidden.push_back(r);
  }
  return out;
}

inline dwpf::SquareMatrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t n) {
  dwpf::SquareMatrix<Rational> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dwpf::random_rational(rng, 20, 7);
  return m;
}

template <class T>
oracle::Grid to_grid(const dwpf::SquareMatrix<T>& m) {
  oracle::Grid g(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) g[i].push_back(m(i, j));
  return g;
}

}  // namespace testing_support
