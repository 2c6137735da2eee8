#pragma once

#include "pml/contingency.hpp"
#include "pml/lognumber.hpp"
#include "pml/matrix.hpp"
#include "pml/pattern_prob.hpp"

#include <cstdint>
#include <vector>

namespace pml {

inline constexpr int kLiftDimBudget = 18;  // permanent budget for Theta (.) Lambda

// w(A) = prod_{i,j} (M - a_ij)! / (a_ij)!
LogNumber weight_w(const ContingencyTable& A);
Rational weight_w_exact(const ContingencyTable& A);

struct LiftedExact {
  int k = 0;
  int M = 0;
  LogNumber mth_power;  // (M!)^{2k-k^2} * sum_A w(A) prod theta^a
  double value = 0;     // mth_power^{1/M} = perm_{B,M}(Theta)
};

// Degree-M lifted permanent via the contingency-table sum, in log space with
// a two-pass max shift. theta >= 0; zero entries only admit tables with
// a_ij = 0 there.
LiftedExact lifted_permanent_exact(const SquareMatrix<double>& theta, int M,
                                   std::uint64_t budget = kDefaultBudget);

// Exact big-rational M-th power of perm_{B,M}(Theta); the root itself is
// irrational in general and is taken in floating point by the caller.
Rational lifted_permanent_power_exact(const SquareMatrix<Rational>& theta, int M,
                                      std::uint64_t budget = kDefaultBudget);

// Block-permutation lift: a kM x kM matrix of M x M permutation blocks.
struct BlockPermutationLift {
  int k = 0;
  int M = 0;
  std::vector<std::vector<int>> blocks;  // k*k entries, each a permutation of [M]

  const std::vector<int>& block(int i, int j) const { return blocks[static_cast<std::size_t>(i) * k + j]; }
};

BlockPermutationLift sample_lift(int k, int M, std::uint64_t seed);
SquareMatrix<double> lift_product(const SquareMatrix<double>& theta, const BlockPermutationLift& lift);

struct LiftedMc {
  double estimate = 0;       // mean^{1/M}
  double mean = 0;           // sample mean of perm(Theta (.) Lambda)
  double stderr_mean = 0;    // standard error of the un-rooted mean
  double stderr_estimate = 0;  // delta-method propagation through the root
  int samples = 0;
  std::uint64_t seed = 0;
};

// Monte-Carlo evaluation per the definition: Lambda uniform on P_M^{k x k},
// averaging perm(Theta (.) Lambda). Sample s draws from an RNG seeded with
// split_seed(seed, s), so the estimate is independent of any partitioning of
// samples across workers.
LiftedMc lifted_permanent_mc(const SquareMatrix<double>& theta, int M, int samples,
                             std::uint64_t seed);

// beta_{k,M}(psi; p) = perm_{B,M}(Theta(psi; p)), with k taken from p.
double beta_kM(const Pattern& psi, const Pmf<double>& p, int M,
               std::uint64_t budget = kDefaultBudget);

}  // namespace pml
