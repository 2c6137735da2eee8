#pragma once

#include "pml/errors.hpp"
#include "pml/matrix.hpp"

#include <bit>
#include <cstdint>

namespace pml {

inline constexpr int kPermanentMaxDim = 20;

// Ryser inclusion-exclusion over column subsets with Gray-code updates,
// O(2^k * k). Exact for rational T; summation order is fixed, so floating
// results are reproducible. k = 0 yields 1 (empty product).
template <typename T>
T permanent(const SquareMatrix<T>& m) {
  const int n = m.size();
  if (n > kPermanentMaxDim) throw InputError("dimension too large (permanent budget is k <= 20)");
  if (n == 0) return T(1);
  std::vector<T> row_sum(n, T(0));
  T total(0);
  std::uint32_t gray = 0;
  int bits = 0;
  const std::uint32_t count = std::uint32_t{1} << n;
  for (std::uint32_t it = 1; it < count; ++it) {
    const std::uint32_t next = it ^ (it >> 1);
    const std::uint32_t diff = gray ^ next;
    const int j = std::countr_zero(diff);
    if (next & diff) {
      for (int i = 0; i < n; ++i) row_sum[i] += m(i, j);
      ++bits;
    } else {
      for (int i = 0; i < n; ++i) row_sum[i] -= m(i, j);
      --bits;
    }
    gray = next;
    T prod = row_sum[0];
    for (int i = 1; i < n; ++i) prod *= row_sum[i];
    if ((n - bits) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

}  // namespace pml
