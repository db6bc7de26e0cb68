#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dwpf/matrix.hpp"

namespace dwpf {

/// Largest dimension permanent() accepts; Ryser costs O(2^n n).
inline constexpr std::size_t kMaxPermanentDim = 20;

/// Permanent by Ryser's inclusion-exclusion formula, visiting column subsets
/// in Gray-code order so each step updates the row sums by one column.
/// Throws DimensionTooLarge above kMaxPermanentDim and NonFiniteEntry when a
/// float entry or the result is not finite.
template <Scalar T>
T permanent(const SquareMatrix<T>& m);

/// Exact mode: rows are scaled to integers and reduced by fraction-free
/// (Bareiss) elimination over GMP integers. Float mode: LU with partial
/// pivoting.
template <Scalar T>
T determinant(const SquareMatrix<T>& m);

/// Solves m x = rhs. Throws SingularMatrix when no pivot is found.
template <Scalar T>
std::vector<T> solve(const SquareMatrix<T>& m, std::span<const T> rhs);

extern template Rational permanent(const SquareMatrix<Rational>&);
extern template Complex permanent(const SquareMatrix<Complex>&);
extern template Rational determinant(const SquareMatrix<Rational>&);
extern template Complex determinant(const SquareMatrix<Complex>&);
extern template std::vector<Rational> solve(const SquareMatrix<Rational>&,
                                            std::span<const Rational>);
extern template std::vector<Complex> solve(const SquareMatrix<Complex>&,
                                           std::span<const Complex>);

}  // namespace dwpf
