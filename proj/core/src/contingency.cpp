#include "pml/contingency.hpp"

namespace pml {

bool ContingencyTable::margins_ok() const {
  for (int i = 0; i < k; ++i) {
    long long rs = 0, cs = 0;
    for (int j = 0; j < k; ++j) {
      if (at(i, j) < 0) return false;
      rs += at(i, j);
      cs += at(j, i);
    }
    if (rs != M || cs != M) return false;
  }
  return true;
}

std::uint64_t estimate_table_count(int k, int M) {
  if (k == 1) return 1;
  if (k == 2) return static_cast<std::uint64_t>(M) + 1;
  const BigInt per_row = binomial(static_cast<unsigned>(M + k - 1), static_cast<unsigned>(k - 1));
  const BigInt est = ipow(per_row, static_cast<unsigned>(k - 1));
  if (est > BigInt(UINT64_MAX)) return UINT64_MAX;
  return est.convert_to<std::uint64_t>();
}

namespace {

struct Enumerator {
  int k;
  int M;
  ContingencyTable table;
  std::vector<int> colres;
  const std::function<void(const ContingencyTable&)>* visit;
  std::uint64_t count = 0;

  void fill_row(int row, int col, int rowrem) {
    if (col == k - 1) {
      if (rowrem <= colres[col]) {
        table.at(row, col) = rowrem;
        colres[col] -= rowrem;
        next_row(row + 1);
        colres[col] += rowrem;
      }
      return;
    }
    // Remaining cells of this row can absorb at most the residual columns.
    int cap_rest = 0;
    for (int j = col + 1; j < k; ++j) cap_rest += colres[j];
    const int hi = rowrem < colres[col] ? rowrem : colres[col];
    const int lo = rowrem - cap_rest > 0 ? rowrem - cap_rest : 0;
    for (int v = lo; v <= hi; ++v) {
      table.at(row, col) = v;
      colres[col] -= v;
      fill_row(row, col + 1, rowrem - v);
      colres[col] += v;
    }
  }

  void next_row(int row) {
    if (row == k - 1) {
      for (int j = 0; j < k; ++j) table.at(row, j) = colres[j];
      ++count;
      (*visit)(table);
      return;
    }
    fill_row(row, 0, M);
  }
};

}  // namespace

std::uint64_t enumerate_tables(int k, int M, std::uint64_t budget,
                               const std::function<void(const ContingencyTable&)>& visit) {
  if (k < 1 || M < 0) throw InputError("need k >= 1 and M >= 0");
  const std::uint64_t est = estimate_table_count(k, M);
  if (est > budget)
    throw BudgetError("table count estimate " + std::to_string(est) + " for k=" + std::to_string(k) +
                      ", M=" + std::to_string(M) + " exceeds budget " + std::to_string(budget));
  Enumerator e;
  e.k = k;
  e.M = M;
  e.table = ContingencyTable(k, M);
  e.colres.assign(static_cast<std::size_t>(k), M);
  e.visit = &visit;
  if (k == 1) {
    e.table.at(0, 0) = M;
    ++e.count;
    visit(e.table);
  } else {
    e.next_row(0);
  }
  return e.count;
}

std::vector<ContingencyTable> all_tables(int k, int M, std::uint64_t budget) {
  std::vector<ContingencyTable> out;
  enumerate_tables(k, M, budget, [&](const ContingencyTable& t) { out.push_back(t); });
  return out;
}

}  // namespace pml
