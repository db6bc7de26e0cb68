#include "dwpf/gamma.hpp"

#include <string>

#include "dwpf/combinatorics.hpp"

namespace dwpf {

namespace {

void require_order(int have, int need) {
  if (have < need)
    throw Error(ErrorKind::InsufficientDerivatives,
                "derivative table has order " + std::to_string(have) +
                    ", need " + std::to_string(need));
}

template <Scalar T>
T power(const T& x, unsigned e) {
  T r(1);
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

template <Scalar T>
LambdaDerivTable<T> lambda_derivatives(std::span<const T> nu, const T& z, int n_max) {
  if (n_max < 0) throw Error(ErrorKind::InvalidArgument, "negative derivative order");
  std::vector<T> sums(static_cast<std::size_t>(n_max) + 1, T(0));
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] == z)
      throw Error(ErrorKind::PoleAtEvaluationPoint,
                  "evaluation point equals rapidity " + std::to_string(i + 1));
    const T inv = T(1) / (z - nu[i]);
    T p = inv;
    for (auto& s : sums) {
      s += p;
      p *= inv;
    }
  }
  LambdaDerivTable<T> table{z, n_max, {}};
  table.values.reserve(sums.size());
  for (int a = 0; a <= n_max; ++a) {
    Rational coeff(factorial(static_cast<unsigned>(a)));
    if (a % 2 == 1) coeff = -coeff;
    table.values.push_back(from_rational<T>(coeff) * sums[a]);
  }
  return table;
}

TowerPolynomial TowerPolynomial::constant(long c) {
  TowerPolynomial p;
  p.add({}, mpz_class(c));
  return p;
}

void TowerPolynomial::add(Exponents k, const mpz_class& c) {
  while (!k.empty() && k.back() == 0) k.pop_back();
  auto [it, inserted] = terms_.try_emplace(std::move(k), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else if (c == 0) {
    terms_.erase(it);
  }
}

TowerPolynomial TowerPolynomial::derivative() const {
  TowerPolynomial d;
  for (const auto& [k, c] : terms_) {
    for (std::size_t b = 0; b < k.size(); ++b) {
      if (k[b] == 0) continue;
      Exponents next = k;
      if (next.size() < b + 2) next.resize(b + 2, 0);
      next[b] -= 1;
      next[b + 1] += 1;
      d.add(std::move(next), c * k[b]);
    }
  }
  return d;
}

TowerPolynomial TowerPolynomial::times_lambda() const {
  TowerPolynomial p;
  for (const auto& [k, c] : terms_) {
    Exponents next = k;
    if (next.empty()) next.push_back(0);
    next[0] += 1;
    p.add(std::move(next), c);
  }
  return p;
}

TowerPolynomial TowerPolynomial::operator+(const TowerPolynomial& other) const {
  TowerPolynomial sum = *this;
  for (const auto& [k, c] : other.terms_) sum.add(k, c);
  return sum;
}

int TowerPolynomial::max_order() const {
  int order = -1;
  for (const auto& [k, c] : terms_) order = std::max(order, static_cast<int>(k.size()) - 1);
  return order;
}

mpz_class TowerPolynomial::coefficient(Exponents k) const {
  while (!k.empty() && k.back() == 0) k.pop_back();
  auto it = terms_.find(k);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

template <Scalar T>
T TowerPolynomial::evaluate(const LambdaDerivTable<T>& lam) const {
  require_order(lam.order, max_order());
  T total(0);
  for (const auto& [k, c] : terms_) {
    T term = from_rational<T>(Rational(c));
    for (std::size_t a = 0; a < k.size(); ++a) term *= power(lam[a], k[a]);
    total += term;
  }
  return total;
}

TowerPolynomial gamma_polynomial(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative Gamma index");
  TowerPolynomial g = TowerPolynomial::constant(-1);
  for (int m = 1; m <= n; ++m) g = g.derivative() + g.times_lambda();
  return g;
}

template <Scalar T>
std::vector<T> gamma_recursive(const LambdaDerivTable<T>& lam, int n_max) {
  if (n_max < 0) throw Error(ErrorKind::InvalidArgument, "negative Gamma index");
  require_order(lam.order, n_max - 1);
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  TowerPolynomial g = TowerPolynomial::constant(-1);
  out.push_back(g.evaluate(lam));
  for (int m = 1; m <= n_max; ++m) {
    g = g.derivative() + g.times_lambda();
    out.push_back(g.evaluate(lam));
  }
  return out;
}

Rational gamma_partition_coefficient(std::span<const unsigned> k, unsigned n) {
  if (k.size() != n + 1)
    throw Error(ErrorKind::InvalidArgument, "partition vector must have n+1 entries");
  unsigned long weight = 0;
  for (std::size_t a = 0; a < k.size(); ++a) weight += (a + 1) * k[a];
  if (weight != n) return Rational(0);
  mpz_class denominator = 1;
  for (std::size_t a = 0; a < k.size(); ++a) {
    mpz_class f = factorial(static_cast<unsigned>(a + 1));
    mpz_class fk;
    mpz_pow_ui(fk.get_mpz_t(), f.get_mpz_t(), k[a]);
    denominator *= fk * factorial(k[a]);
  }
  Rational c(factorial(n), denominator);
  c.canonicalize();
  return c;
}

template <Scalar T>
T gamma_explicit(const LambdaDerivTable<T>& lam, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative Gamma index");
  require_order(lam.order, n - 1);
  const auto un = static_cast<unsigned>(n);
  T sum(0);
  for (const auto& k : weighted_partitions(un)) {
    T term = from_rational<T>(gamma_partition_coefficient(k, un));
    for (std::size_t a = 0; a < k.size(); ++a)
      if (k[a] != 0) term *= power(lam[a], k[a]);
    sum += term;
  }
  return -sum;
}

template <Scalar T>
T gamma_at(std::span<const T> nu, const T& z, int n) {
  const auto lam = lambda_derivatives(nu, z, std::max(n - 1, 0));
  return gamma_recursive(lam, n).back();
}

template <Scalar T>
GammaTable<T> build_gamma_table(const SpinSystem<T>& system, const RapiditySet<T>& nu) {
  if (nu.size() != system.omega())
    throw Error(ErrorKind::CardinalityMismatch,
                "expected " + std::to_string(system.omega()) + " rapidities, got " +
                    std::to_string(nu.size()));
  require_no_poles(nu.view(), system.epsilons());
  GammaTable<T> table{system, {}, {}};
  const int top = system.two_S();
  const auto lam = lambda_derivatives(nu.view(), system.epsilon(0), top - 1);
  table.gammas_at_eps1 = gamma_recursive(lam, top);
  for (std::size_t j = 1; j < system.n_spins(); ++j) {
    const auto lj = lambda_derivatives(nu.view(), system.epsilon(j), 0);
    table.gamma1_at_others.push_back(-lj[0]);
  }
  return table;
}

template <Scalar T>
std::vector<T> pole_weights(std::span<const T> gammas) {
  std::vector<T> w;
  w.reserve(gammas.size());
  for (std::size_t n = 0; n < gammas.size(); ++n) {
    Rational scale(mpz_class(1), factorial(static_cast<unsigned>(n)));
    if (n % 2 == 0) scale = -scale;
    w.push_back(from_rational<T>(scale) * gammas[n]);
  }
  return w;
}

#define DWPF_GAMMA_INSTANTIATE(T)                                                    \
  template LambdaDerivTable<T> lambda_derivatives(std::span<const T>, const T&, int); \
  template T TowerPolynomial::evaluate(const LambdaDerivTable<T>&) const;            \
  template std::vector<T> gamma_recursive(const LambdaDerivTable<T>&, int);          \
  template T gamma_explicit(const LambdaDerivTable<T>&, int);                        \
  template T gamma_at(std::span<const T>, const T&, int);                            \
  template GammaTable<T> build_gamma_table(const SpinSystem<T>&,                     \
                                           const RapiditySet<T>&);                   \
  template std::vector<T> pole_weights(std::span<const T>);
DWPF_GAMMA_INSTANTIATE(Rational)
DWPF_GAMMA_INSTANTIATE(Complex)

}  // namespace dwpf
