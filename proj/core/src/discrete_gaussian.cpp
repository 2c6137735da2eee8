#include "pml/discrete_gaussian.hpp"

#include "pml/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pml {

namespace {

constexpr double kPi = 3.14159265358979323846;

double quad_form(const SquareMatrix<double>& V, const std::vector<int>& x) {
  const int d = V.size();
  double q = 0;
  for (int i = 0; i < d; ++i) {
    double row = 0;
    for (int j = 0; j < d; ++j) row += V(i, j) * x[j];
    q += x[i] * row;
  }
  return q;
}

// Odometer walk over the box [-radius, radius]^d.
template <typename F>
void for_each_lattice_point(int d, int radius, F&& fn) {
  std::vector<int> x(static_cast<std::size_t>(d), -radius);
  for (;;) {
    fn(x);
    int i = 0;
    while (i < d && x[i] == radius) {
      x[i] = -radius;
      ++i;
    }
    if (i == d) return;
    ++x[i];
  }
}

void check_box(int d, int radius, std::uint64_t budget) {
  if (d < 1 || d > 4) throw InputError("lattice dimension must be in [1,4]");
  if (radius < 0) throw InputError("radius must be non-negative");
  const double points = std::pow(2.0 * radius + 1.0, d);
  if (points > static_cast<double>(budget))
    throw BudgetError("lattice box of " + std::to_string(points) + " points exceeds budget " +
                      std::to_string(budget));
}

}  // namespace

JacobiEigen jacobi_eigen(const SquareMatrix<double>& A) {
  const int d = A.size();
  double scale = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) scale = std::max(scale, std::abs(A(i, j)));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(A(i, j) - A(j, i)) > 1e-12 * std::max(1.0, scale))
        throw InputError("matrix must be symmetric (tolerance 1e-12)");

  SquareMatrix<double> a = A;
  SquareMatrix<double> q = SquareMatrix<double>::identity(d);
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) off += a(i, j) * a(i, j);
    if (std::sqrt(2 * off) <= 1e-12 * std::max(1.0, scale)) break;
    for (int p = 0; p < d - 1; ++p) {
      for (int r = p + 1; r < d; ++r) {
        if (a(p, r) == 0) continue;
        const double theta = (a(r, r) - a(p, p)) / (2 * a(p, r));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1.0 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (int i = 0; i < d; ++i) {
          const double aip = a(i, p), air = a(i, r);
          a(i, p) = c * aip - s * air;
          a(i, r) = s * aip + c * air;
        }
        for (int j = 0; j < d; ++j) {
          const double apj = a(p, j), arj = a(r, j);
          a(p, j) = c * apj - s * arj;
          a(r, j) = s * apj + c * arj;
        }
        for (int i = 0; i < d; ++i) {
          const double qip = q(i, p), qir = q(i, r);
          q(i, p) = c * qip - s * qir;
          q(i, r) = s * qip + c * qir;
        }
      }
    }
  }

  JacobiEigen e;
  e.eigenvalues.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) e.eigenvalues[i] = a(i, i);
  // Sort ascending, permuting eigenvector columns alongside.
  std::vector<int> order(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return e.eigenvalues[x] < e.eigenvalues[y]; });
  JacobiEigen sorted;
  sorted.eigenvalues.resize(static_cast<std::size_t>(d));
  sorted.vectors = SquareMatrix<double>(d);
  for (int c = 0; c < d; ++c) {
    sorted.eigenvalues[c] = e.eigenvalues[order[c]];
    for (int i = 0; i < d; ++i) sorted.vectors(i, c) = q(i, order[c]);
  }
  return sorted;
}

LatticeGaussian make_lattice_gaussian(SquareMatrix<double> V, double beta) {
  if (!(beta > 0)) throw InputError("beta must be positive");
  const JacobiEigen e = jacobi_eigen(V);  // also validates symmetry
  if (e.eigenvalues.front() <= 0) throw InputError("V must be positive definite");
  LatticeGaussian g;
  g.d = V.size();
  g.V = std::move(V);
  g.beta = beta;
  return g;
}

int auto_radius(const LatticeGaussian& g) {
  const double lambda_min = jacobi_eigen(g.V).eigenvalues.front();
  return static_cast<int>(std::ceil(std::sqrt(2.0 * g.beta * std::log(1e16) / lambda_min)));
}

int auto_dual_terms(const LatticeGaussian& g) {
  const double lambda_max = jacobi_eigen(g.V).eigenvalues.back();
  const double t = std::sqrt(std::log(1e16) * lambda_max / (2.0 * kPi * kPi * g.beta));
  return static_cast<int>(std::ceil(t)) + 1;
}

double dg_partition_direct(const LatticeGaussian& g, int radius, std::uint64_t budget) {
  check_box(g.d, radius, budget);
  double z = 0;
  for_each_lattice_point(g.d, radius, [&](const std::vector<int>& x) {
    z += std::exp(-quad_form(g.V, x) / (2.0 * g.beta));
  });
  return z;
}

double dg_partition_poisson(const LatticeGaussian& g, int terms) {
  if (terms < 0) throw InputError("terms must be non-negative");
  const JacobiEigen e = jacobi_eigen(g.V);
  double det = 1;
  for (double lam : e.eigenvalues) det *= lam;
  // V^{-1} through the eigendecomposition.
  const int d = g.d;
  SquareMatrix<double> vinv(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0;
      for (int c = 0; c < d; ++c) s += e.vectors(i, c) * e.vectors(j, c) / e.eigenvalues[c];
      vinv(i, j) = s;
    }
  double zstar = 0;
  for_each_lattice_point(d, terms, [&](const std::vector<int>& xi) {
    zstar += std::exp(-0.5 * 4.0 * kPi * kPi * g.beta * quad_form(vinv, xi));
  });
  const double lead = std::pow(2.0 * kPi * g.beta, d / 2.0) / std::sqrt(det);
  return lead * zstar;
}

QuadExpectation dg_expected_quadratic(const LatticeGaussian& g, int radius, std::uint64_t budget) {
  check_box(g.d, radius, budget);
  double z = 0, qsum = 0;
  for_each_lattice_point(g.d, radius, [&](const std::vector<int>& x) {
    const double q = quad_form(g.V, x);
    const double v = std::exp(-q / (2.0 * g.beta));
    z += v;
    qsum += q * v;
  });
  QuadExpectation out;
  out.expected = qsum / z;
  out.prediction = g.beta * g.d;
  out.residual = out.expected - out.prediction;
  return out;
}

TailBound dg_tail_bound(const LatticeGaussian& g, double R, double tau, int radius,
                        std::uint64_t budget) {
  if (!(tau > 0 && tau < 1)) throw InputError("tau must lie in (0,1)");
  if (R < 0) throw InputError("R must be non-negative");
  check_box(g.d, radius, budget);
  double z = 0, tail = 0;
  for_each_lattice_point(g.d, radius, [&](const std::vector<int>& x) {
    const double q = quad_form(g.V, x);
    const double v = std::exp(-q / (2.0 * g.beta));
    z += v;
    if (q >= R) tail += q * v;
  });
  TailBound out;
  out.empirical = tail / z;
  out.bound = g.beta * g.d * std::pow(tau, -(g.d / 2.0 + 1.0)) *
              std::exp(-(1.0 - tau) * R / (2.0 * g.beta));
  return out;
}

}  // namespace pml
