#pragma once

#include "pml/matrix.hpp"

#include <vector>

namespace pml {

// Minimum-cost assignment: returns the permutation pi with pi[i] = column
// assigned to row i, minimizing sum_i cost(i, pi[i]). Deterministic; for a
// constant cost matrix the result is the identity (lexicographically least
// permutation). This is the linear oracle of the Frank-Wolfe solver: the
// vertices of the doubly stochastic polytope are exactly the permutations.
std::vector<int> assignment_min(const SquareMatrix<double>& cost);

}  // namespace pml
