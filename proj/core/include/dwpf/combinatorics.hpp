#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dwpf {

mpz_class factorial(unsigned n);
std::uint64_t binomial(unsigned n, unsigned k);

/// Visits every size-k multiset drawn from {0, ..., ground_size-1} as a
/// nondecreasing index tuple, in lexicographic order. The empty multiset is
/// visited once when k = 0, even for an empty ground set.
template <class Visit>
void for_each_multiset(std::size_t ground_size, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k, 0);
  if (k == 0) {
    visit(std::span<const std::size_t>(idx));
    return;
  }
  if (ground_size == 0) return;
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == ground_size - 1) --pos;
    if (pos == 0) return;
    const std::size_t next = idx[pos - 1] + 1;
    for (std::size_t q = pos - 1; q < k; ++q) idx[q] = next;
  }
}

/// Visits every k-subset of {0, ..., n-1} as an increasing index tuple.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t q = 0; q < k; ++q) idx[q] = q;
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

/// All k = (k_0, ..., k_n) with sum_a (a+1) k_a = n, sorted lexicographically
/// by (k_n, ..., k_0).
std::vector<std::vector<unsigned>> weighted_partitions(unsigned n);

}  // namespace dwpf
