#include "pml/lifted.hpp"

#include "pml/permanent.hpp"

#include <cmath>
#include <random>

namespace pml {

LogNumber weight_w(const ContingencyTable& A) {
  double lg = 0;
  for (int v : A.a) lg += std::lgamma(A.M - v + 1.0) - std::lgamma(v + 1.0);
  return LogNumber::from_log(lg);
}

Rational weight_w_exact(const ContingencyTable& A) {
  Rational w = 1;
  for (int v : A.a)
    w *= Rational(factorial(static_cast<unsigned>(A.M - v)), factorial(static_cast<unsigned>(v)));
  return w;
}

LiftedExact lifted_permanent_exact(const SquareMatrix<double>& theta, int M, std::uint64_t budget) {
  const int k = theta.size();
  if (M < 1) throw InputError("degree M must be >= 1");
  SquareMatrix<double> lth(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (theta(i, j) < 0) throw InputError("theta must be non-negative");
      lth(i, j) = theta(i, j) > 0 ? std::log(theta(i, j)) : 0;
    }
  std::vector<double> lfact(static_cast<std::size_t>(M) + 1);
  for (int v = 0; v <= M; ++v) lfact[v] = std::lgamma(v + 1.0);

  std::vector<double> terms;
  enumerate_tables(k, M, budget, [&](const ContingencyTable& A) {
    double t = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const int a = A.at(i, j);
        t += lfact[M - a] - lfact[a];
        if (a > 0) {
          if (theta(i, j) == 0) return;  // theta^a = 0: term vanishes
          t += a * lth(i, j);
        }
      }
    terms.push_back(t);
  });

  LiftedExact out;
  out.k = k;
  out.M = M;
  const double prefactor = (2.0 * k - static_cast<double>(k) * k) * std::lgamma(M + 1.0);
  out.mth_power = log_sum_exp(terms) * LogNumber::from_log(prefactor);
  out.value = out.mth_power.root(M);
  return out;
}

Rational lifted_permanent_power_exact(const SquareMatrix<Rational>& theta, int M,
                                      std::uint64_t budget) {
  const int k = theta.size();
  if (M < 1) throw InputError("degree M must be >= 1");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (theta(i, j) < 0) throw InputError("theta must be non-negative");

  Rational sum = 0;
  enumerate_tables(k, M, budget, [&](const ContingencyTable& A) {
    Rational term = weight_w_exact(A);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const int a = A.at(i, j);
        if (a > 0) term *= rpow(theta(i, j), static_cast<unsigned>(a));
      }
    sum += term;
  });

  const int e = 2 * k - k * k;  // <= 0 for k >= 2
  const BigInt mf = factorial(static_cast<unsigned>(M));
  if (e >= 0)
    sum *= Rational(ipow(mf, static_cast<unsigned>(e)));
  else
    sum /= Rational(ipow(mf, static_cast<unsigned>(-e)));
  return sum;
}

BlockPermutationLift sample_lift(int k, int M, std::uint64_t seed) {
  BlockPermutationLift lift;
  lift.k = k;
  lift.M = M;
  lift.blocks.resize(static_cast<std::size_t>(k) * k);
  std::mt19937_64 rng(seed);
  for (auto& perm : lift.blocks) {
    perm.resize(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) perm[i] = i;
    for (int i = M - 1; i > 0; --i) {
      std::uniform_int_distribution<int> dist(0, i);
      std::swap(perm[i], perm[dist(rng)]);
    }
  }
  return lift;
}

SquareMatrix<double> lift_product(const SquareMatrix<double>& theta,
                                  const BlockPermutationLift& lift) {
  const int k = theta.size();
  const int M = lift.M;
  SquareMatrix<double> big(k * M, 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const auto& perm = lift.block(i, j);
      for (int r = 0; r < M; ++r) big(i * M + r, j * M + perm[r]) = theta(i, j);
    }
  return big;
}

LiftedMc lifted_permanent_mc(const SquareMatrix<double>& theta, int M, int samples,
                             std::uint64_t seed) {
  const int k = theta.size();
  if (M < 1) throw InputError("degree M must be >= 1");
  if (samples < 2) throw InputError("need at least 2 samples");
  if (k * M > kLiftDimBudget)
    throw BudgetError("lifted dimension k*M = " + std::to_string(k * M) + " exceeds budget " +
                      std::to_string(kLiftDimBudget));

  double mean = 0, m2 = 0;
  for (int s = 0; s < samples; ++s) {
    const BlockPermutationLift lift = sample_lift(k, M, split_seed(seed, static_cast<std::uint64_t>(s)));
    const double x = permanent(lift_product(theta, lift));
    const double d = x - mean;
    mean += d / (s + 1);
    m2 += d * (x - mean);
  }
  LiftedMc out;
  out.samples = samples;
  out.seed = seed;
  out.mean = mean;
  out.stderr_mean = std::sqrt(m2 / (samples - 1.0) / samples);
  out.estimate = mean > 0 ? std::pow(mean, 1.0 / M) : 0.0;
  out.stderr_estimate =
      mean > 0 ? out.stderr_mean * std::pow(mean, 1.0 / M - 1.0) / M : 0.0;
  return out;
}

double beta_kM(const Pattern& psi, const Pmf<double>& p, int M, std::uint64_t budget) {
  return lifted_permanent_exact(theta_matrix(psi, p), M, budget).value;
}

}  // namespace pml
