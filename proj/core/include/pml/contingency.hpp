#pragma once

#include "pml/errors.hpp"
#include "pml/numeric.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pml {

// Element of A_{k,M}: k x k non-negative integers with all margins M.
struct ContingencyTable {
  int k = 0;
  int M = 0;
  std::vector<int> a;  // row-major

  ContingencyTable() = default;
  ContingencyTable(int k_, int M_) : k(k_), M(M_), a(static_cast<std::size_t>(k_) * k_, 0) {}

  int& at(int i, int j) { return a[static_cast<std::size_t>(i) * k + j]; }
  int at(int i, int j) const { return a[static_cast<std::size_t>(i) * k + j]; }

  bool margins_ok() const;
};

// Upper bound on |A_{k,M}|: compositions of M into k parts, per free row.
// Saturates at UINT64_MAX.
std::uint64_t estimate_table_count(int k, int M);

// Emits every element of A_{k,M} exactly once, in lexicographic row-major
// order: rows are filled cell by cell against the residual column sums, and
// the last row is forced. The count estimate is checked against the budget
// up front. Returns the number of tables visited.
std::uint64_t enumerate_tables(int k, int M, std::uint64_t budget,
                               const std::function<void(const ContingencyTable&)>& visit);

std::vector<ContingencyTable> all_tables(int k, int M, std::uint64_t budget);

}  // namespace pml
