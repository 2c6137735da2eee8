#include "pml/assignment.hpp"

#include "pml/errors.hpp"

#include <cmath>
#include <limits>

namespace pml {

// Shortest-augmenting-path Hungarian algorithm with dual potentials, O(n^3).
// Rows are inserted in order and columns scanned in ascending index, which
// fixes the tie-breaking.
std::vector<int> assignment_min(const SquareMatrix<double>& cost) {
  const int n = cost.size();
  if (n == 0) return {};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(cost(i, j))) throw InputError("assignment cost must be finite");

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // match[j] = row assigned to column j (1-based)
  std::vector<int> way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> pi(n);
  for (int j = 1; j <= n; ++j) pi[match[j] - 1] = j - 1;
  return pi;
}

}  // namespace pml
