#pragma once

#include "pml/matrix.hpp"

#include <cstdint>
#include <vector>

namespace pml {

// Measure on Z^d proportional to v(x) = exp(-x'Vx / (2 beta)) with V
// symmetric positive definite.
struct LatticeGaussian {
  int d = 0;
  SquareMatrix<double> V;
  double beta = 0;
};

// Validates symmetry (1e-12) and positive definiteness.
LatticeGaussian make_lattice_gaussian(SquareMatrix<double> V, double beta);

struct JacobiEigen {
  std::vector<double> eigenvalues;    // ascending
  SquareMatrix<double> vectors;       // columns are the eigenvectors
};

// Cyclic Jacobi rotations to 1e-12 off-diagonal norm. Dimensions here are
// tiny ((k-1)^2 with k <= 4), so robustness wins over speed.
JacobiEigen jacobi_eigen(const SquareMatrix<double>& A);

// Truncation radius making the discarded Gaussian tail < 1e-16 of the total:
// ceil(sqrt(2 beta ln(1e16) / lambda_min)).
int auto_radius(const LatticeGaussian& g);
int auto_dual_terms(const LatticeGaussian& g);

inline constexpr std::uint64_t kDefaultBoxBudget = 200'000'000;

// Z = sum over the box [-radius, radius]^d of v(x). Requires d <= 4 and a box
// within the budget.
double dg_partition_direct(const LatticeGaussian& g, int radius,
                           std::uint64_t budget = kDefaultBoxBudget);

// Z via Poisson summation: Z = (2 pi beta)^{d/2} / sqrt(det V) * Z* with
// Z* = sum_xi exp(-(1/2) 4 pi^2 beta xi' V^{-1} xi) over the dual box.
// The beta exponent is d/2; the single-variable form beta^{1/2} matches the
// direct sum only at d = 1.
double dg_partition_poisson(const LatticeGaussian& g, int terms);

struct QuadExpectation {
  double expected = 0;    // E[X'VX] by direct weighted sum
  double prediction = 0;  // beta * d
  double residual = 0;    // expected - prediction
};

QuadExpectation dg_expected_quadratic(const LatticeGaussian& g, int radius,
                                      std::uint64_t budget = kDefaultBoxBudget);

struct TailBound {
  double empirical = 0;  // (1/Z) sum_{x'Vx >= R} x'Vx v(x)
  double bound = 0;      // beta d tau^{-(d/2+1)} exp(-(1-tau) R / (2 beta))
};

TailBound dg_tail_bound(const LatticeGaussian& g, double R, double tau, int radius,
                        std::uint64_t budget = kDefaultBoxBudget);

}  // namespace pml
