#include <doctest.h>

#include "pml/phase.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace pml;

namespace {

// Exact integer root-bound checks for q(x) = a x^2 - b x + c with
// a = U - n, b = U + n^2 - 2n, c = n^2, discriminant D = b^2 - 4ac.
struct RootChecks {
  bool rho1_gt_1 = false;
  bool rho1_le_2 = false;
  bool rho1_eq_2 = false;
  bool rho2_lt_upsilon = false;
  bool rho2_ge_upsilon_m1 = false;
  bool rho2_eq_upsilon_m1 = false;
};

RootChecks exact_root_checks(long long n, long long u) {
  const BigInt a = BigInt(u) - n;
  const BigInt b = BigInt(u) + BigInt(n) * n - 2 * n;
  const BigInt c = BigInt(n) * n;
  const BigInt D = b * b - 4 * a * c;
  RootChecks r;
  // rho1 > 1  <=>  b - 2a > sqrt(D)
  {
    const BigInt lhs = b - 2 * a;
    r.rho1_gt_1 = lhs > 0 && lhs * lhs > D;
  }
  // rho1 <= 2  <=>  b - 4a <= sqrt(D)
  {
    const BigInt lhs = b - 4 * a;
    r.rho1_le_2 = lhs <= 0 || lhs * lhs <= D;
    r.rho1_eq_2 = lhs >= 0 && lhs * lhs == D;
  }
  // rho2 < Upsilon  <=>  sqrt(D) < 2(n^2-n) - b
  {
    const BigInt rhs = 2 * (BigInt(n) * n - n) - b;
    r.rho2_lt_upsilon = rhs > 0 && D < rhs * rhs;
  }
  // rho2 >= Upsilon - 1  <=>  sqrt(D) >= 2(n^2-n) - 2a - b
  {
    const BigInt rhs = 2 * (BigInt(n) * n - n) - 2 * a - b;
    r.rho2_ge_upsilon_m1 = rhs <= 0 || D >= rhs * rhs;
    r.rho2_eq_upsilon_m1 = rhs >= 0 && D == rhs * rhs;
  }
  return r;
}

bool claim41_rhs(long long n, long long u) {
  // Upsilon < (sqrt(n)+1)/(sqrt(n)-1)  <=>  n (N-a)^2 < (N+a)^2,
  // N = n^2 - n, a = U - n (valid for n < U < n^2).
  const BigInt N = BigInt(n) * n - n;
  const BigInt a = BigInt(u) - n;
  return n * (N - a) * (N - a) < (N + a) * (N + a);
}

}  // namespace

TEST_CASE("threshold report: 1122") {
  const auto r = threshold_report(parse_pattern("1122"), 0.5);
  CHECK(r.n == 4);
  CHECK(r.m == 2);
  CHECK(r.u_sum == 8);
  CHECK(r.upsilon.value == 3);
  CHECK(r.discriminant == 0);  // q(x) = 4x^2 - 16x + 16
  REQUIRE(r.rho1.has_value());
  REQUIRE(r.rho2.has_value());
  CHECK(*r.rho1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(*r.rho2 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.case_tag == ThresholdCase::m2_equal);
  CHECK(r.upsilon_b == doctest::Approx(2.5));
}

TEST_CASE("threshold report: m = 2 unequal") {
  const auto r = threshold_report(parse_pattern("112"), 0.25);
  CHECK(r.discriminant == -8);
  CHECK(!r.rho1.has_value());
  CHECK(r.case_tag == ThresholdCase::m2_unequal);
  CHECK(r.upsilon_b == doctest::Approx(1.25));
}

TEST_CASE("threshold report: m >= 3 two-roots case") {
  const auto r = threshold_report(parse_pattern("3,2,3,1"), 0.5);
  CHECK(r.u_sum == 23);
  CHECK(r.upsilon.value == Rational(72, 14));
  CHECK(r.discriminant == 2860);
  CHECK(r.case_tag == ThresholdCase::two_roots);
  CHECK(r.upsilon_b == doctest::Approx((86.0 + std::sqrt(2860.0)) / 28.0).epsilon(1e-14));
  CHECK(r.upsilon_b == doctest::Approx(4.98135).epsilon(1e-4));
  // Bracket Upsilon - 1 <= Upsilon_B < Upsilon.
  CHECK(r.upsilon_b >= r.upsilon.as_double() - 1.0);
  CHECK(r.upsilon_b < r.upsilon.as_double());
}

TEST_CASE("threshold report: all-ones and the D < 0 case") {
  const auto inf_case = threshold_report(parse_pattern("12345"), 0.5);
  CHECK(inf_case.case_tag == ThresholdCase::all_ones);
  CHECK(std::isinf(inf_case.upsilon_b));
  CHECK(inf_case.upsilon.infinite);

  // mu = (9,1,1): Upsilon = 110/72 < (sqrt(11)+1)/(sqrt(11)-1), D = -1724.
  const auto r = threshold_report(parse_pattern("9,1,1"), 0.5);
  CHECK(r.discriminant == -1724);
  CHECK(r.case_tag == ThresholdCase::no_real_roots);
  CHECK(r.upsilon_b == doctest::Approx(r.upsilon.as_double()));

  CHECK_THROWS_AS(threshold_report(parse_pattern("111"), 0.5), InputError);
  CHECK_THROWS_AS(threshold_report(parse_pattern("1122"), 1.5), InputError);
}

TEST_CASE("root bounds hold on random (n, U) pairs") {
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<long long> nd(2, 40);
  int seen = 0;
  while (seen < 200) {
    const long long n = nd(rng);
    if (n + 1 > n * n - 1) continue;
    std::uniform_int_distribution<long long> ud(n + 1, n * n - 1);
    const long long u = ud(rng);
    const BigInt D =
        (BigInt(n) * n + 2 * n - u) * (BigInt(n) * n + 2 * n - u) - 4 * BigInt(n) * n * n;
    // Claim 4.1: D < 0 iff Upsilon < (sqrt(n)+1)/(sqrt(n)-1).
    CHECK((D < 0) == claim41_rhs(n, u));
    if (D < 0) continue;
    ++seen;
    const auto rc = exact_root_checks(n, u);
    CHECK(rc.rho1_gt_1);
    CHECK(rc.rho1_le_2);
    CHECK(rc.rho2_lt_upsilon);
    CHECK(rc.rho2_ge_upsilon_m1);
    if (rc.rho1_eq_2 || rc.rho2_eq_upsilon_m1) {
      CHECK(n == 4);
      CHECK(u == 8);
    }
  }
  // The equality case is attained at (4,8).
  const auto eq = exact_root_checks(4, 8);
  CHECK(eq.rho1_eq_2);
  CHECK(eq.rho2_eq_upsilon_m1);
}

TEST_CASE("second derivative formula: k = 2 signs") {
  // Equal multiplicities: negative for every M.
  const Pattern p33 = parse_pattern("3,3");
  for (int M : {1, 2, 4, 8, 16}) CHECK(second_deriv_formula(p33, 2, M) < 0);

  // mu = (2,1): positive for large M (here M >= 8), negative at small M.
  const Pattern p21 = parse_pattern("112");
  CHECK(second_deriv_formula(p21, 2, 4) < 0);
  CHECK(second_deriv_formula(p21, 2, 8) > 0);
  CHECK(second_deriv_formula(p21, 2, 16) > 0);

  // Closed k = 2 form: (M+1)^{1/M} 2^{1-n} [ 4 Var/M (2U - n^2) - n ].
  const double got = second_deriv_formula(p33, 2, 6);
  const double want = std::pow(7.0, 1.0 / 6.0) * std::pow(2.0, -5.0) * (-6.0);
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("second derivative limit") {
  CHECK(second_deriv_limit(parse_pattern("3,3"), 2) ==
        doctest::Approx(-6.0 * std::pow(2.0, -5.0)).epsilon(1e-14));
  CHECK(std::isinf(second_deriv_limit(parse_pattern("112"), 2)));
  CHECK(second_deriv_limit(parse_pattern("123"), 3) < 0);  // U = n case: q(k) < 0

  // The finite-M formula approaches the limit.
  const Pattern p22 = parse_pattern("1122");
  const double lim = second_deriv_limit(p22, 3);
  const double e1 = std::abs(second_deriv_formula(p22, 3, 6) - lim);
  const double e2 = std::abs(second_deriv_formula(p22, 3, 12) - lim);
  const double e3 = std::abs(second_deriv_formula(p22, 3, 24) - lim);
  CHECK(e2 < e1);
  CHECK(e3 < e2);
}

TEST_CASE("probe matches the closed-form second derivative") {
  const Pattern p22 = parse_pattern("1122");
  ProbeOptions opts;
  opts.n_dirs = 20;
  opts.seed = 5;
  const double formula = second_deriv_formula(p22, 3, 6);
  const auto r = probe_extremum(ProbeTarget::lifted_m, p22, 3, 6, opts);
  for (double sd : r.second_diffs) CHECK(sd == doctest::Approx(formula).epsilon(1e-3));
  // Direction independence: the spread across directions is tiny.
  for (double sd : r.second_diffs)
    CHECK(std::abs(sd - r.second_diffs.front()) <= 1e-4 * std::abs(formula));
  // First differences vanish, shrinking at the h^2 truncation rate.
  for (int d = 0; d < r.directions; ++d) {
    CHECK(std::abs(r.first_diffs[d]) <= 1e-3 * std::abs(formula));
    CHECK(std::abs(r.first_diffs_half[d]) <=
          0.5 * std::abs(r.first_diffs[d]) + r.margin * r.step);
  }
}

TEST_CASE("probe classification follows the threshold comparison") {
  const Pattern slp = parse_pattern("3,2,3,1");  // Upsilon = 36/7 ~ 5.14
  ProbeOptions opts;
  opts.seed = 5;
  CHECK(probe_extremum(ProbeTarget::pml, slp, 4, {}, opts).classification == ProbeClass::local_max);
  CHECK(probe_extremum(ProbeTarget::pml, slp, 5, {}, opts).classification == ProbeClass::local_max);
  CHECK(probe_extremum(ProbeTarget::pml, slp, 6, {}, opts).classification == ProbeClass::local_min);
  CHECK(probe_extremum(ProbeTarget::pml, slp, 7, {}, opts).classification == ProbeClass::local_min);

  // k = Upsilon exactly: saddle, reported as mixed.
  CHECK(probe_extremum(ProbeTarget::pml, parse_pattern("1122"), 3, {}, opts).classification ==
        ProbeClass::mixed);

  // Random patterns: classification matches the k vs Upsilon comparison.
  std::mt19937_64 rng(606);
  int done = 0;
  while (done < 8) {
    std::vector<int> mu;
    int left = 2 + static_cast<int>(rng() % 7);
    while (left > 0) {
      const int v = 1 + static_cast<int>(rng() % left);
      mu.push_back(v);
      left -= v;
    }
    const Pattern psi = Pattern::from_multiplicities(mu);
    if (psi.m < 2) continue;
    const ExtendedReal ups = upsilon(psi);
    for (int k = psi.m; k <= psi.m + 4; ++k) {
      if (ups.equals(k)) continue;
      const auto r = probe_extremum(ProbeTarget::pml, psi, k, {}, opts);
      const ProbeClass want = ups.greater_than(k) ? ProbeClass::local_max : ProbeClass::local_min;
      CHECK(r.classification == want);
    }
    ++done;
  }
}

TEST_CASE("probe input validation") {
  const Pattern psi = parse_pattern("1122");
  ProbeOptions opts;
  opts.step = 0.4;  // >= 1/(2k)
  CHECK_THROWS_AS(probe_extremum(ProbeTarget::pml, psi, 2, {}, opts), InputError);
  opts.step = -1;
  CHECK_THROWS_AS(probe_extremum(ProbeTarget::pml, psi, 2, {}, opts), InputError);
  opts.step = 1e-3;
  CHECK_THROWS_AS(probe_extremum(ProbeTarget::pml, psi, 1, {}, opts), InputError);
  CHECK_THROWS_AS(probe_extremum(ProbeTarget::lifted_m, psi, 2, {}, opts), InputError);
}

TEST_CASE("bethe probe is exploratory") {
  ProbeOptions opts;
  opts.n_dirs = 4;
  opts.seed = 3;
  const auto r = probe_extremum(ProbeTarget::bethe, parse_pattern("112"), 2, {}, opts);
  CHECK(r.exploratory);
  CHECK(r.directions == 4);
}

TEST_CASE("phase scan") {
  const Pattern p22 = parse_pattern("1122");
  ProbeOptions opts;
  opts.n_dirs = 6;
  opts.seed = 9;
  const auto rows = phase_scan(p22, {2}, {2, 4, 8}, opts);
  REQUIRE(rows.size() == 3);
  // Formula values trend toward the limit -n 2^{1-n} = -0.5.
  const double lim = second_deriv_limit(p22, 2);
  CHECK(lim == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::abs(rows[2].formula - lim) < std::abs(rows[1].formula - lim));
  CHECK(std::abs(rows[1].formula - lim) < std::abs(rows[0].formula - lim));
  for (const auto& row : rows) {
    CHECK(row.formula < 0);
    CHECK(row.probe_class == ProbeClass::local_max);
    CHECK(row.min_diff <= row.max_diff);
  }

  // mu = (2,1), k = 3: positive for M in {4, 8}.
  const auto rows21 = phase_scan(parse_pattern("112"), {3}, {4, 8}, opts);
  REQUIRE(rows21.size() == 2);
  for (const auto& row : rows21) {
    CHECK(row.formula > 0);
    CHECK(row.probe_class == ProbeClass::local_min);
  }

  const std::string csv = phase_scan_csv(rows);
  CHECK(csv.find("k,M,formula,limit,probe_class,min_diff,max_diff") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
}
