#pragma once

#include "pml/contingency.hpp"
#include "pml/lifted.hpp"
#include "pml/lognumber.hpp"
#include "pml/matrix.hpp"

#include <cstdint>
#include <vector>

namespace pml {

// Exact moments of the distribution on A_{k,M} that weights each table A by
// w(A) = prod (M-a_ij)!/(a_ij)!. All moments are exact rationals; Z is also
// reported in log space since it overflows doubles for large M.
struct QkmStats {
  int k = 0;
  int M = 0;
  LogNumber Z;
  Rational Z_exact = 0;
  Rational mean_a = 0;         // E[a_{1,1}]  (= M/k)
  Rational second_moment = 0;  // E[a_{1,1}^2]
  Rational variance = 0;       // E[a^2] - E[a]^2
  Rational cross_row = 0;      // E[a_{1,1} a_{1,2}]  (0 when k = 1)
  Rational cross_diag = 0;     // E[a_{1,1} a_{2,2}]  (0 when k = 1)
};

QkmStats qkm_stats(int k, int M, std::uint64_t budget = kDefaultBudget);

// Circulant maximizer of w(A): first row has r entries q+1 followed by
// k-r entries q, with q = floor(M/k), r = M - kq.
struct MaximizerU {
  int k = 0;
  int M = 0;
  int q = 0;
  int r = 0;
  ContingencyTable table;
};

struct MaximizerResult {
  MaximizerU u;
  LogNumber w_star;
  Rational w_star_exact = 0;
};

MaximizerResult maximizer_u(int k, int M);

// Whether x majorizes y: equal totals and the sorted prefix sums of x
// dominate those of y.
bool majorizes(const std::vector<int>& x, const std::vector<int>& y);

// phi(x_1..x_k) = prod_j (sum_{l != j} x_l)! / x_j!. Schur-concave; w(A) is
// the product of phi over the rows of A.
LogNumber phi(const std::vector<int>& x);
Rational phi_exact(const std::vector<int>& x);

// [(M!)^{2k-k^2} Z_{k,M}]^{1/M}, in log space.
double normalized_Z(int k, int M, std::uint64_t budget = kDefaultBudget);
double normalized_Z(const QkmStats& stats);

// Limits of normalized_Z and Var/M as M grows, for k >= 3.
double normalized_Z_limit(int k);
double variance_rate_limit(int k);

// Discrete-Gaussian surrogate weight around U:
//   wtilde(A) = exp{-(1/2) ((k-2)/(k-1)) (1/rho) sum t_ij^2},  T = A - U.
// Requires k >= 3.
double gaussian_weight(const ContingencyTable& A);

// Quality of the surrogate for a single table, valid when rho = M/k >= 4 and
// max |t_ij| <= rho/9:
//   lhs   = | log(w(A)/w(U)) - log(wtilde(A)/wtilde(U)) |
//   bound = (4/rho^2) sum (|t|+1)^3 + (3/(2 rho)) sum |t|
struct GaussError {
  double lhs = 0;
  double bound = 0;
};

GaussError gauss_error(const ContingencyTable& A);

// Integer Gram matrix of the free-entry embedding: for T with zero margins
// and t the row-major vector of t_ij, 1 <= i,j <= k-1, t'Bt = sum_{i,j} T_ij^2
// after completing the k-th row and column from the margin constraints.
SquareMatrix<int> build_B(int k);

struct GaussianApprox {
  int k = 0;
  int M = 0;
  double rho = 0;       // M/k
  double sigma_sq = 0;  // (k-1)/(k-2) * M/k
  SquareMatrix<int> B;
};

GaussianApprox gaussian_approx(int k, int M);

}  // namespace pml
