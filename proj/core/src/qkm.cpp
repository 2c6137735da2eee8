#include "pml/qkm.hpp"

#include <algorithm>
#include <cmath>

namespace pml {

QkmStats qkm_stats(int k, int M, std::uint64_t budget) {
  if (k < 1 || M < 0) throw InputError("need k >= 1 and M >= 0");
  // Per-entry integer factor (M-a)! * M!/a!, so that
  // w(A) * (M!)^{k^2} = prod over entries of factor[a] is a big integer and
  // the accumulation stays in exact integer arithmetic.
  std::vector<BigInt> fact(static_cast<std::size_t>(M) + 1);
  for (int v = 0; v <= M; ++v) fact[v] = factorial(static_cast<unsigned>(v));
  std::vector<BigInt> entry_factor(static_cast<std::size_t>(M) + 1);
  for (int v = 0; v <= M; ++v) entry_factor[v] = fact[M - v] * (fact[M] / fact[v]);

  BigInt sum_w = 0, sum_a = 0, sum_a2 = 0, sum_row = 0, sum_diag = 0;
  enumerate_tables(k, M, budget, [&](const ContingencyTable& A) {
    BigInt n = entry_factor[A.a[0]];
    for (std::size_t idx = 1; idx < A.a.size(); ++idx) n *= entry_factor[A.a[idx]];
    const long long a11 = A.at(0, 0);
    sum_w += n;
    sum_a += n * a11;
    sum_a2 += n * (a11 * a11);
    if (k >= 2) {
      sum_row += n * (a11 * A.at(0, 1));
      sum_diag += n * (a11 * A.at(1, 1));
    }
  });

  const BigInt scale = ipow(fact[M], static_cast<unsigned>(k) * static_cast<unsigned>(k));
  QkmStats s;
  s.k = k;
  s.M = M;
  s.Z_exact = Rational(sum_w, scale);
  s.Z = LogNumber::from_log(log_big(sum_w) - log_big(scale));
  s.mean_a = Rational(sum_a, sum_w);
  s.second_moment = Rational(sum_a2, sum_w);
  s.variance = s.second_moment - s.mean_a * s.mean_a;
  if (k >= 2) {
    s.cross_row = Rational(sum_row, sum_w);
    s.cross_diag = Rational(sum_diag, sum_w);
  }
  return s;
}

MaximizerResult maximizer_u(int k, int M) {
  if (k < 1 || M < 0) throw InputError("need k >= 1 and M >= 0");
  MaximizerResult res;
  MaximizerU& u = res.u;
  u.k = k;
  u.M = M;
  u.q = M / k;
  u.r = M - k * u.q;
  u.table = ContingencyTable(k, M);
  std::vector<int> first(static_cast<std::size_t>(k), u.q);
  for (int j = 0; j < u.r; ++j) first[j] = u.q + 1;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) u.table.at(i, j) = first[(j - i + k) % k];

  // w(U) = [ (M-q-1)! / (q+1)! ]^{kr} * [ (M-q)! / q! ]^{k(k-r)}
  const unsigned kr = static_cast<unsigned>(k) * static_cast<unsigned>(u.r);
  const unsigned kkr = static_cast<unsigned>(k) * static_cast<unsigned>(k - u.r);
  Rational w = 1;
  if (kr > 0)
    w *= rpow(Rational(factorial(static_cast<unsigned>(M - u.q - 1)),
                       factorial(static_cast<unsigned>(u.q + 1))),
              kr);
  w *= rpow(Rational(factorial(static_cast<unsigned>(M - u.q)), factorial(static_cast<unsigned>(u.q))),
            kkr);
  res.w_star_exact = w;
  res.w_star = LogNumber::from_log(log_big(w));
  return res;
}

bool majorizes(const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != y.size()) throw InputError("majorization requires equal lengths");
  std::vector<int> xs = x, ys = y;
  std::sort(xs.rbegin(), xs.rend());
  std::sort(ys.rbegin(), ys.rend());
  long long px = 0, py = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    px += xs[i];
    py += ys[i];
    if (px < py) return false;
  }
  px += xs.empty() ? 0 : xs.back();
  py += ys.empty() ? 0 : ys.back();
  return px == py;
}

LogNumber phi(const std::vector<int>& x) {
  long long total = 0;
  for (int v : x) {
    if (v < 0) throw InputError("phi requires non-negative entries");
    total += v;
  }
  double lg = 0;
  for (int v : x) lg += std::lgamma(static_cast<double>(total - v) + 1.0) - std::lgamma(v + 1.0);
  return LogNumber::from_log(lg);
}

Rational phi_exact(const std::vector<int>& x) {
  long long total = 0;
  for (int v : x) {
    if (v < 0) throw InputError("phi requires non-negative entries");
    total += v;
  }
  Rational r = 1;
  for (int v : x)
    r *= Rational(factorial(static_cast<unsigned>(total - v)), factorial(static_cast<unsigned>(v)));
  return r;
}

double normalized_Z(const QkmStats& stats) {
  const int k = stats.k;
  const int M = stats.M;
  const double lg =
      (2.0 * k - static_cast<double>(k) * k) * std::lgamma(M + 1.0) + stats.Z.log();
  return std::exp(lg / M);
}

double normalized_Z(int k, int M, std::uint64_t budget) { return normalized_Z(qkm_stats(k, M, budget)); }

double normalized_Z_limit(int k) {
  if (k < 3) throw InputError("limit defined for k >= 3");
  return std::exp(static_cast<double>(k) * (k - 1) * std::log(k - 1.0) -
                  static_cast<double>(k) * (k - 2) * std::log(static_cast<double>(k)));
}

double variance_rate_limit(int k) {
  if (k < 3) throw InputError("limit defined for k >= 3");
  const double km1 = k - 1.0;
  return km1 * km1 * km1 / (static_cast<double>(k) * k * k * (k - 2.0));
}

double gaussian_weight(const ContingencyTable& A) {
  const int k = A.k;
  if (k < 3) throw InputError("gaussian weight defined for k >= 3");
  const MaximizerResult mu = maximizer_u(k, A.M);
  const double rho = static_cast<double>(A.M) / k;
  double sum_t2 = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double t = A.at(i, j) - mu.u.table.at(i, j);
      sum_t2 += t * t;
    }
  return std::exp(-0.5 * ((k - 2.0) / (k - 1.0)) / rho * sum_t2);
}

GaussError gauss_error(const ContingencyTable& A) {
  const int k = A.k;
  const int M = A.M;
  if (k < 3) throw InputError("gauss_error defined for k >= 3");
  if (M < 4 * k) throw InputError("outside Lemma 5 regime: need rho = M/k >= 4");
  const MaximizerResult mu = maximizer_u(k, M);
  int max_abs_t = 0;
  long long sum_abs = 0;
  double sum_cube = 0, sum_t2 = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const int t = A.at(i, j) - mu.u.table.at(i, j);
      const int at = t < 0 ? -t : t;
      max_abs_t = std::max(max_abs_t, at);
      sum_abs += at;
      sum_cube += std::pow(at + 1.0, 3.0);
      sum_t2 += static_cast<double>(t) * t;
    }
  // max |t| <= rho/9  <=>  9 k max|t| <= M
  if (9LL * k * max_abs_t > M)
    throw InputError("outside Lemma 5 regime: need max |t_ij| <= rho/9");

  const double rho = static_cast<double>(M) / k;
  const Rational ratio = weight_w_exact(A) / mu.w_star_exact;
  const double log_w_ratio = log_big(ratio);
  const double log_wt_ratio = -0.5 * ((k - 2.0) / (k - 1.0)) / rho * sum_t2;
  GaussError e;
  e.lhs = std::abs(log_w_ratio - log_wt_ratio);
  e.bound = 4.0 / (rho * rho) * sum_cube + 1.5 / rho * static_cast<double>(sum_abs);
  return e;
}

SquareMatrix<int> build_B(int k) {
  if (k < 2) throw InputError("build_B requires k >= 2");
  const int d = (k - 1) * (k - 1);
  // Linear functional of each full-matrix entry over the free entries
  // (row-major (i,j), 1 <= i,j <= k-1), then B = sum of outer products.
  SquareMatrix<int> B(d, 0);
  std::vector<int> coeff(static_cast<std::size_t>(d));
  auto add_outer = [&](const std::vector<int>& c) {
    for (int a = 0; a < d; ++a) {
      if (c[a] == 0) continue;
      for (int b = 0; b < d; ++b) B(a, b) += c[a] * c[b];
    }
  };
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      std::fill(coeff.begin(), coeff.end(), 0);
      if (i < k - 1 && j < k - 1) {
        coeff[i * (k - 1) + j] = 1;
      } else if (i < k - 1) {  // t_{i,k} = -sum_j t_{i,j}
        for (int jj = 0; jj < k - 1; ++jj) coeff[i * (k - 1) + jj] = -1;
      } else if (j < k - 1) {  // t_{k,j} = -sum_i t_{i,j}
        for (int ii = 0; ii < k - 1; ++ii) coeff[ii * (k - 1) + j] = -1;
      } else {  // t_{k,k} = sum_{i,j} t_{i,j}
        std::fill(coeff.begin(), coeff.end(), 1);
      }
      add_outer(coeff);
    }
  }
  return B;
}

GaussianApprox gaussian_approx(int k, int M) {
  if (k < 3) throw InputError("gaussian approximation defined for k >= 3");
  GaussianApprox g;
  g.k = k;
  g.M = M;
  g.rho = static_cast<double>(M) / k;
  g.sigma_sq = (k - 1.0) / (k - 2.0) * g.rho;
  g.B = build_B(k);
  return g;
}

}  // namespace pml
