#pragma once

#include "pml/errors.hpp"
#include "pml/matrix.hpp"
#include "pml/numeric.hpp"
#include "pml/pattern.hpp"
#include "pml/permanent.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace pml {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Probability vector over [k]. Rational instances must sum to exactly 1;
// floating instances to within 1e-12.
template <typename T>
struct Pmf {
  std::vector<T> p;

  int k() const { return static_cast<int>(p.size()); }

  static Pmf checked(std::vector<T> probs) {
    if (probs.empty()) throw InputError("pmf must be non-empty");
    T sum(0);
    for (const T& v : probs) {
      if (v < T(0)) throw InputError("pmf entries must be non-negative");
      sum += v;
    }
    if constexpr (std::is_same_v<T, Rational>) {
      if (sum != 1) throw InputError("pmf must sum to exactly 1");
    } else {
      if (std::abs(static_cast<double>(sum) - 1.0) > 1e-12)
        throw InputError("pmf must sum to 1 (tolerance 1e-12)");
    }
    return Pmf{std::move(probs)};
  }

  static Pmf uniform(int k) {
    if (k < 1) throw InputError("support size must be positive");
    return Pmf{std::vector<T>(static_cast<std::size_t>(k), T(1) / T(k))};
  }
};

template <typename T>
T pow_nonneg(const T& base, int e) {
  if constexpr (std::is_same_v<T, Rational>) {
    return e == 0 ? Rational(1) : rpow(base, static_cast<unsigned>(e));
  } else {
    return e == 0 ? T(1) : static_cast<T>(std::pow(base, e));  // 0^0 = 1
  }
}

// Theta(psi; p): k x k matrix with theta_{i,j} = p_i^{mu_j}, where mu_j = 0
// for j > m (all-ones padding columns, using 0^0 = 1).
template <typename T>
SquareMatrix<T> theta_matrix(const Pattern& psi, const Pmf<T>& p) {
  const int k = p.k();
  if (k < psi.m) throw InputError("support smaller than pattern size");
  SquareMatrix<T> th(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) th(i, j) = pow_nonneg(p.p[i], j < psi.m ? psi.mu[j] : 0);
  return th;
}

inline std::uint64_t injection_count(int k, int m) {
  std::uint64_t c = 1;
  for (int i = 0; i < m; ++i) {
    const std::uint64_t f = static_cast<std::uint64_t>(k - i);
    if (c > UINT64_MAX / f) return UINT64_MAX;
    c *= f;
  }
  return c;
}

// P(psi; p) as the sum over one-to-one maps sigma: [m] -> [k] of
// prod_i p_{sigma(i)}^{mu_i}. Injections are visited in lexicographic order
// of the image tuple. Returns 0 when m > k (no injections exist).
template <typename T>
T pattern_probability(const Pattern& psi, const Pmf<T>& p,
                      std::uint64_t budget = kDefaultBudget) {
  const int k = p.k();
  const int m = psi.m;
  if (m > k) return T(0);
  const std::uint64_t count = injection_count(k, m);
  if (count > budget)
    throw BudgetError("injection count " + std::to_string(count) + " exceeds budget " +
                      std::to_string(budget));
  // powers[j][i] = p_j^{mu_i}
  std::vector<std::vector<T>> powers(k, std::vector<T>(m));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < m; ++i) powers[j][i] = pow_nonneg(p.p[j], psi.mu[i]);

  T total(0);
  std::vector<int> image(m, -1);
  std::vector<bool> used(k, false);
  std::vector<T> prefix(m + 1, T(1));
  int depth = 0;
  int j = 0;
  while (depth >= 0) {
    if (j >= k) {
      --depth;
      if (depth >= 0) {
        used[image[depth]] = false;
        j = image[depth] + 1;
      }
      continue;
    }
    if (used[j]) {
      ++j;
      continue;
    }
    image[depth] = j;
    prefix[depth + 1] = prefix[depth] * powers[j][depth];
    if (depth == m - 1) {
      total += prefix[m];
      ++j;
    } else {
      used[j] = true;
      ++depth;
      j = 0;
    }
  }
  return total;
}

// P(psi; p) = perm(Theta(psi; p)) / (k - m)!.
template <typename T>
T pattern_probability_via_perm(const Pattern& psi, const Pmf<T>& p) {
  const int k = p.k();
  const T perm = permanent(theta_matrix(psi, p));
  if constexpr (std::is_same_v<T, Rational>) {
    return perm / Rational(factorial(static_cast<unsigned>(k - psi.m)));
  } else {
    return static_cast<T>(perm / std::tgamma(static_cast<double>(k - psi.m) + 1.0));
  }
}

}  // namespace pml
