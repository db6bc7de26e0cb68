#include "dwpf/kernels.hpp"

#include <bit>
#include <complex>
#include <type_traits>
#include <cstdint>
#include <string>

namespace dwpf {

namespace {

template <Scalar T>
void require_finite(const SquareMatrix<T>& m) {
  if constexpr (std::same_as<T, Complex>) {
    for (const Complex& x : m.entries())
      if (!is_finite(x))
        throw Error(ErrorKind::NonFiniteEntry, "matrix has a non-finite entry");
  }
}

template <Scalar T>
T require_finite_result(T value, const char* what) {
  if (!is_finite(value))
    throw Error(ErrorKind::NonFiniteEntry,
                std::string(what) + " overflowed to a non-finite value");
  return value;
}

Rational bareiss_determinant(const SquareMatrix<Rational>& m) {
  const std::size_t n = m.dim();
  // Scale each row by the lcm of its denominators; det(m) = det(b) / prod(lcm).
  std::vector<mpz_class> b(n * n);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class row_lcm = 1;
    for (std::size_t j = 0; j < n; ++j)
      mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(),
              m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j)
      b[i * n + j] = m(i, j).get_num() * (row_lcm / m(i, j).get_den());
    scale *= row_lcm;
  }
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return b[i * n + j]; };

  int sign = 1;
  mpz_class previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && at(r, k) == 0) ++r;
      if (r == n) return Rational(0);
      for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
      }
      at(i, k) = 0;
    }
    previous = at(k, k);
  }
  Rational det(mpz_class(sign * at(n - 1, n - 1)), scale);
  det.canonicalize();
  return det;
}

// Float-mode elimination and Ryser sums run in extended precision; Cauchy-like
// inputs lose several digits to cancellation in plain double.
using Wide = std::complex<long double>;

Wide widen(const Complex& x) { return {x.real(), x.imag()}; }
Complex narrow(const Wide& x) {
  return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
}

Complex lu_determinant(const SquareMatrix<Complex>& m) {
  const std::size_t n = m.dim();
  std::vector<Wide> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = widen(m(i, j));
  auto at = [&](std::size_t i, std::size_t j) -> Wide& { return a[i * n + j]; };
  Wide det = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(at(r, k)) > std::abs(at(pivot, k))) pivot = r;
    if (at(pivot, k) == 0.0L) return 0.0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(pivot, j), at(k, j));
      det = -det;
    }
    det *= at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Wide f = at(i, k) / at(k, k);
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
    }
  }
  return narrow(det);
}

template <class W, Scalar T>
W ryser(const SquareMatrix<T>& m) {
  const std::size_t n = m.dim();
  auto entry = [&](std::size_t i, std::size_t j) -> W {
    if constexpr (std::same_as<W, Wide>) return widen(m(i, j));
    else return m(i, j);
  };
  std::vector<W> row_sums(n, W(0));
  W total(0);
  W term;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int column = std::countr_zero(k);
    const std::uint64_t gray = k ^ (k >> 1);
    if (gray & (std::uint64_t{1} << column)) {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] += entry(i, column);
    } else {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] -= entry(i, column);
    }
    term = row_sums[0];
    for (std::size_t i = 1; i < n; ++i) term *= row_sums[i];
    if (std::popcount(gray) % 2 == 1)
      total -= term;
    else
      total += term;
  }
  if (n % 2 == 1) total = -total;
  return total;
}

}  // namespace

template <Scalar T>
T permanent(const SquareMatrix<T>& m) {
  const std::size_t n = m.dim();
  if (n > kMaxPermanentDim)
    throw Error(ErrorKind::DimensionTooLarge,
                "permanent of dimension " + std::to_string(n) + " exceeds " +
                    std::to_string(kMaxPermanentDim));
  require_finite(m);

  T total;
  if constexpr (std::same_as<T, Rational>) total = ryser<Rational>(m);
  else total = narrow(ryser<Wide>(m));
  return require_finite_result(total, "permanent");
}

template <Scalar T>
T determinant(const SquareMatrix<T>& m) {
  require_finite(m);
  if constexpr (std::same_as<T, Rational>) {
    return bareiss_determinant(m);
  } else {
    return require_finite_result(lu_determinant(m), "determinant");
  }
}

template <Scalar T>
std::vector<T> solve(const SquareMatrix<T>& m, std::span<const T> rhs) {
  const std::size_t n = m.dim();
  if (rhs.size() != n)
    throw Error(ErrorKind::CardinalityMismatch, "right-hand side has wrong length");
  require_finite(m);
  using W = std::conditional_t<std::same_as<T, Rational>, Rational, Wide>;
  auto up = [](const T& v) -> W {
    if constexpr (std::same_as<T, Rational>) return v;
    else return widen(v);
  };
  std::vector<W> a(n * n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = up(rhs[i]);
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = up(m(i, j));
  }
  auto at = [&](std::size_t i, std::size_t j) -> W& { return a[i * n + j]; };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    if constexpr (std::same_as<T, Rational>) {
      while (pivot < n && at(pivot, k) == 0) ++pivot;
      if (pivot == n) throw Error(ErrorKind::SingularMatrix, "singular system");
    } else {
      for (std::size_t r = k + 1; r < n; ++r)
        if (std::abs(at(r, k)) > std::abs(at(pivot, k))) pivot = r;
      if (at(pivot, k) == 0.0L) throw Error(ErrorKind::SingularMatrix, "singular system");
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(pivot, j), at(k, j));
      std::swap(x[pivot], x[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (at(i, k) == W(0)) continue;
      const W f = at(i, k) / at(k, k);
      for (std::size_t j = k; j < n; ++j) at(i, j) -= f * at(k, j);
      x[i] -= f * x[k];
    }
  }
  std::vector<T> out(n);
  for (std::size_t k = n; k-- > 0;) {
    W acc = x[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= at(k, j) * x[j];
    x[k] = acc / at(k, k);
    if constexpr (std::same_as<T, Rational>) out[k] = x[k];
    else out[k] = narrow(x[k]);
  }
  for (const T& v : out) require_finite_result(v, "solve");
  return out;
}

template Rational permanent(const SquareMatrix<Rational>&);
template Complex permanent(const SquareMatrix<Complex>&);
template Rational determinant(const SquareMatrix<Rational>&);
template Complex determinant(const SquareMatrix<Complex>&);
template std::vector<Rational> solve(const SquareMatrix<Rational>&,
                                     std::span<const Rational>);
template std::vector<Complex> solve(const SquareMatrix<Complex>&,
                                    std::span<const Complex>);

}  // namespace dwpf
