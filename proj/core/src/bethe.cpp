#include "pml/bethe.hpp"

#include "pml/assignment.hpp"
#include "pml/errors.hpp"

#include <cmath>
#include <limits>

namespace pml {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTinyEntry = 1e-300;  // log guard for near-boundary iterates
constexpr double kMaxStep = 1.0 - 1e-12;
constexpr double kStepTol = 1e-12;

double safe_log(double x) { return std::log(x < kTinyEntry ? kTinyEntry : x); }

// dF/dgamma_ij = log gamma + log(1-gamma) - log theta + 2.
SquareMatrix<double> gradient(const SquareMatrix<double>& g, const SquareMatrix<double>& th) {
  const int k = g.size();
  SquareMatrix<double> out(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out(i, j) = safe_log(g(i, j)) + safe_log(1.0 - g(i, j)) - std::log(th(i, j)) + 2.0;
  return out;
}

}  // namespace

DoublyStochasticMatrix DoublyStochasticMatrix::uniform(int k) {
  if (k < 1) throw InputError("dimension must be positive");
  return {SquareMatrix<double>(k, 1.0 / k)};
}

DoublyStochasticMatrix DoublyStochasticMatrix::checked(SquareMatrix<double> gamma, double tol) {
  const int k = gamma.size();
  if (k < 1) throw InputError("dimension must be positive");
  for (int i = 0; i < k; ++i) {
    double rs = 0, cs = 0;
    for (int j = 0; j < k; ++j) {
      if (gamma(i, j) < -tol || gamma(i, j) > 1 + tol)
        throw InputError("doubly stochastic entries must lie in [0,1]");
      rs += gamma(i, j);
      cs += gamma(j, i);
    }
    if (std::abs(rs - 1) > tol || std::abs(cs - 1) > tol)
      throw InputError("row/column sums must equal 1 (tolerance 1e-9)");
  }
  return {std::move(gamma)};
}

double bethe_free_energy(const SquareMatrix<double>& gamma, const SquareMatrix<double>& theta) {
  const int k = gamma.size();
  if (theta.size() != k) throw InputError("dimension mismatch between Gamma and Theta");
  double u = 0, h = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double g = gamma(i, j);
      const double th = theta(i, j);
      if (g > 0) {
        if (th <= 0) return kInf;
        u -= g * std::log(th);
        h -= g * std::log(g);
      }
      const double c = 1.0 - g;
      if (c > 0) h += c * std::log(c);
    }
  }
  return u - h;
}

BetheResult minimize_bethe(const SquareMatrix<double>& theta, const BetheOptions& opts) {
  const int k = theta.size();
  if (k < 1) throw InputError("dimension must be positive");
  if (opts.tol <= 0) throw InputError("tolerance must be positive");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (!(theta(i, j) > 0)) throw InputError("strictly positive matrix required");

  BetheResult res;
  if (k == 1) {  // D_1 = {[1]}
    res.gamma_star = SquareMatrix<double>(1, 1.0);
    res.free_energy = -std::log(theta(0, 0));
    res.bethe_perm = theta(0, 0);
    res.gap = 0;
    res.converged = true;
    return res;
  }

  SquareMatrix<double> g = DoublyStochasticMatrix::uniform(k).gamma;
  double f = bethe_free_energy(g, theta);
  res.gap = kInf;

  for (int it = 0; it < opts.max_iterations; ++it) {
    res.iterations = it;
    if (opts.record_trace) res.trace.push_back(f);

    const SquareMatrix<double> grad = gradient(g, theta);
    const std::vector<int> pi = assignment_min(grad);

    // gap = <grad, Gamma - S> with S the oracle vertex.
    double gap = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) gap += grad(i, j) * g(i, j);
      gap -= grad(i, pi[i]);
    }
    res.gap = gap;
    if (gap <= opts.tol) {
      res.converged = true;
      break;
    }

    // Directional derivative along d = S - Gamma at step a.
    auto dphi = [&](double a) {
      double s = 0;
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          const double d = (pi[i] == j ? 1.0 : 0.0) - g(i, j);
          if (d == 0.0) continue;
          const double x = g(i, j) + a * d;
          s += d * (safe_log(x) + safe_log(1.0 - x) - std::log(theta(i, j)) + 2.0);
        }
      }
      return s;
    };

    double step = kMaxStep;
    if (dphi(kMaxStep) > 0) {
      double lo = 0, hi = kMaxStep;
      while (hi - lo > kStepTol) {
        const double mid = 0.5 * (lo + hi);
        (dphi(mid) > 0 ? hi : lo) = mid;
      }
      step = lo;
    }
    if (step <= 0) break;  // stalled at bisection resolution

    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const double d = (pi[i] == j ? 1.0 : 0.0) - g(i, j);
        g(i, j) += step * d;
      }
    f = bethe_free_energy(g, theta);
  }

  if (opts.record_trace && (res.trace.empty() || res.trace.back() != f)) res.trace.push_back(f);
  res.gamma_star = std::move(g);
  res.free_energy = f;
  res.bethe_perm = std::exp(-f);
  return res;
}

double bethe_pattern_probability(const Pattern& psi, const Pmf<double>& p, double tol) {
  for (double v : p.p)
    if (!(v > 0)) throw InputError("pmf must be strictly positive for the Bethe objective");
  const int k = p.k();
  BetheOptions opts;
  opts.tol = tol;
  const BetheResult r = minimize_bethe(theta_matrix(psi, p), opts);
  return r.bethe_perm / std::tgamma(static_cast<double>(k - psi.m) + 1.0);
}

}  // namespace pml
