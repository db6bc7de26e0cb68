#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "dwpf/error.hpp"
#include "dwpf/scalar.hpp"

namespace dwpf {

/// Dense dim x dim matrix, row-major. The element type fixes the arithmetic
/// mode of everything that consumes it.
template <Scalar T>
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, T(0)) {
    if (dim == 0)
      throw Error(ErrorKind::InvalidArgument, "matrix dimension must be positive");
  }

  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows)
      : SquareMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != dim_)
        throw Error(ErrorKind::CardinalityMismatch, "ragged matrix literal");
      std::size_t j = 0;
      for (const auto& x : row) (*this)(i, j++) = x;
      ++i;
    }
  }

  std::size_t dim() const noexcept { return dim_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

  std::span<const T> row(std::size_t i) const {
    return {entries_.data() + i * dim_, dim_};
  }
  std::span<const T> entries() const noexcept { return entries_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < dim_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < dim_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }

  friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) {
    return x.dim_ == y.dim_ && x.entries_ == y.entries_;
  }

 private:
  std::size_t dim_;
  std::vector<T> entries_;
};

}  // namespace dwpf
