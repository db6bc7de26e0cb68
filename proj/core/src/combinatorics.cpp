#include "dwpf/combinatorics.hpp"

#include <algorithm>

namespace dwpf {

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b.get_ui();
}

namespace {

// Fills k[part..0] top-down so the emitted order is already lexicographic in
// (k_n, ..., k_0).
void fill_partitions(unsigned remaining, unsigned part, std::vector<unsigned>& k,
                     std::vector<std::vector<unsigned>>& out) {
  if (part == 0) {
    k[0] = remaining;
    out.push_back(k);
    return;
  }
  const unsigned weight = part + 1;
  for (unsigned count = 0; count * weight <= remaining; ++count) {
    k[part] = count;
    fill_partitions(remaining - count * weight, part - 1, k, out);
  }
  k[part] = 0;
}

}  // namespace

std::vector<std::vector<unsigned>> weighted_partitions(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> k(n + 1, 0);
  if (n == 0) {
    out.push_back(k);
    return out;
  }
  fill_partitions(n, n, k, out);
  return out;
}

}  // namespace dwpf
