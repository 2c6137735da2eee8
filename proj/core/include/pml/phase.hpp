#pragma once

#include "pml/numeric.hpp"
#include "pml/pattern.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pml {

enum class ThresholdCase { all_ones, m2_equal, m2_unequal, no_real_roots, two_roots };

std::string to_string(ThresholdCase c);

// Thresholds and the quadratic-root analysis for a pattern. The quadratic is
// q(x) = x^2 (U - n) - x (U + n^2 - 2n) + n^2 with discriminant
// D = (n^2 + 2n - U)^2 - 4 n^3, computed exactly in integers.
struct ThresholdReport {
  int n = 0;
  int m = 0;
  long long u_sum = 0;  // U = sum mu_i^2
  ExtendedReal upsilon;
  BigInt discriminant = 0;
  std::optional<double> rho1;  // present when U > n and D >= 0
  std::optional<double> rho2;
  double upsilon_b = 0;  // +infinity allowed
  double delta = 0;      // the delta used in the m = 2 finite cases
  ThresholdCase case_tag = ThresholdCase::all_ones;
};

ThresholdReport threshold_report(const Pattern& psi, double delta);

// Closed-form second derivative of the degree-M map at the uniform point:
//   G''(0) = [(M!)^{2k-k^2}]^{1/M} Z^{1/M} k^{1-n}
//            [ k^2/(k-1)^2 * Var/M * (k U - n^2) - n ]
// with Z and Var exact from the table statistics.
double second_deriv_formula(const Pattern& psi, int k, int M,
                            std::uint64_t budget = 10'000'000);

// Large-M limit of G''(0): for k = 2 it is -n 2^{1-n} when 2U = n^2 (equal
// multiplicities) and +infinity otherwise; for k >= 3 the closed form applies.
double second_deriv_limit(const Pattern& psi, int k);

enum class ProbeTarget { pml, lifted_m, bethe };
enum class ProbeClass { local_max, local_min, mixed, inconclusive };

std::string to_string(ProbeClass c);
std::string to_string(ProbeTarget t);

struct ProbeOptions {
  int n_dirs = 20;
  double step = 1e-3;
  std::uint64_t seed = 1;
  std::uint64_t budget = 10'000'000;
  double bethe_tol = 1e-8;
};

// Classification of the uniform point from central finite differences along
// random zero-sum unit directions. Differences are taken at step h and h/2
// and both classifications must agree. When the target is pml and k equals
// the threshold exactly, the point is a saddle and is reported as mixed.
struct ProbeResult {
  int k = 0;
  int M = 0;  // 0 when not applicable
  int directions = 0;
  std::vector<double> second_diffs;       // at step h
  std::vector<double> second_diffs_half;  // at step h/2
  std::vector<double> first_diffs;        // central first differences at h
  std::vector<double> first_diffs_half;   // at h/2; ~1/4 of the above when g'(0) = 0
  double f0 = 0;
  double margin = 0;
  double step = 0;
  ProbeClass classification = ProbeClass::inconclusive;
  bool exploratory = false;  // set for the bethe target
};

ProbeResult probe_extremum(ProbeTarget target, const Pattern& psi, int k, std::optional<int> M,
                           const ProbeOptions& opts = {});

struct PhaseScanRow {
  int k = 0;
  int M = 0;
  double formula = 0;
  double limit = 0;
  ProbeClass probe_class = ProbeClass::inconclusive;
  double min_diff = 0;
  double max_diff = 0;
};

// Degree-M sweep combining the closed form, its limit, and the numerical
// probe classification, one row per (k, M).
std::vector<PhaseScanRow> phase_scan(const Pattern& psi, const std::vector<int>& ks,
                                     const std::vector<int>& Ms, const ProbeOptions& opts = {});

std::string phase_scan_csv(const std::vector<PhaseScanRow>& rows);

}  // namespace pml
