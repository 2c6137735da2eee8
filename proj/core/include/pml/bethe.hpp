#pragma once

#include "pml/matrix.hpp"
#include "pml/pattern_prob.hpp"

#include <vector>

namespace pml {

// Element of D_k: non-negative with unit row and column sums (tol 1e-9).
struct DoublyStochasticMatrix {
  SquareMatrix<double> gamma;

  static DoublyStochasticMatrix uniform(int k);
  static DoublyStochasticMatrix checked(SquareMatrix<double> gamma, double tol = 1e-9);
  int k() const { return gamma.size(); }
};

// F_B(Gamma, Theta) = U_B - H_B with
//   U_B = -sum gamma_ij log theta_ij
//   H_B = -sum gamma_ij log gamma_ij + sum (1-gamma_ij) log(1-gamma_ij)
// and the conventions 0 log 0 = 0 and F_B = +infinity whenever some
// gamma_ij > 0 meets theta_ij = 0.
double bethe_free_energy(const SquareMatrix<double>& gamma, const SquareMatrix<double>& theta);

struct BetheOptions {
  double tol = 1e-8;          // Frank-Wolfe duality-gap target
  int max_iterations = 100000;
  bool record_trace = false;  // keep the F_B value per iteration
};

struct BetheResult {
  SquareMatrix<double> gamma_star;
  double free_energy = 0;  // F_B at the final iterate
  double bethe_perm = 0;   // exp(-free_energy)
  double gap = 0;          // Frank-Wolfe duality gap certificate (>= F - F*)
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

// Minimizes the Bethe free energy over the doubly stochastic polytope by
// Frank-Wolfe from the uniform start. The linear oracle is a minimum-cost
// assignment on the gradient; the step is an exact line search by bisection
// on the directional derivative (the restriction of F_B to a segment is
// convex). Iterates stay strictly interior, where the gradient is finite,
// and the duality gap certifies optimality. Requires theta > 0 entrywise.
BetheResult minimize_bethe(const SquareMatrix<double>& theta, const BetheOptions& opts = {});

// P_B(psi; p) = perm_B(Theta(psi; p)) / (k-m)!. Requires p strictly positive.
double bethe_pattern_probability(const Pattern& psi, const Pmf<double>& p, double tol = 1e-8);

}  // namespace pml
