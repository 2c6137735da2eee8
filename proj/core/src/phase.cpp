#include "pml/phase.hpp"

#include "pml/bethe.hpp"
#include "pml/contingency.hpp"
#include "pml/errors.hpp"
#include "pml/lifted.hpp"
#include "pml/lognumber.hpp"
#include "pml/pattern_prob.hpp"
#include "pml/qkm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace pml {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(ThresholdCase c) {
  switch (c) {
    case ThresholdCase::all_ones: return "all-ones";
    case ThresholdCase::m2_equal: return "m2-equal";
    case ThresholdCase::m2_unequal: return "m2-unequal";
    case ThresholdCase::no_real_roots: return "no-real-roots";
    case ThresholdCase::two_roots: return "two-roots";
  }
  return "?";
}

std::string to_string(ProbeClass c) {
  switch (c) {
    case ProbeClass::local_max: return "local-max";
    case ProbeClass::local_min: return "local-min";
    case ProbeClass::mixed: return "mixed";
    case ProbeClass::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(ProbeTarget t) {
  switch (t) {
    case ProbeTarget::pml: return "pml";
    case ProbeTarget::lifted_m: return "lifted";
    case ProbeTarget::bethe: return "bethe";
  }
  return "?";
}

ThresholdReport threshold_report(const Pattern& psi, double delta) {
  if (psi.m < 2) throw InputError("threshold report requires pattern size m >= 2");
  if (!(delta > 0 && delta < 1)) throw InputError("delta must lie in (0,1)");
  ThresholdReport r;
  r.n = psi.n;
  r.m = psi.m;
  r.u_sum = psi.mu_square_sum();
  r.upsilon = upsilon(psi);
  r.delta = delta;

  const BigInt n(psi.n);
  const BigInt u(r.u_sum);
  r.discriminant = (n * n + 2 * n - u) * (n * n + 2 * n - u) - 4 * n * n * n;

  if (r.u_sum > psi.n && r.discriminant >= 0) {
    const double sqrt_d = std::sqrt(r.discriminant.convert_to<double>());
    const double b = static_cast<double>(r.u_sum) + static_cast<double>(psi.n) * psi.n - 2.0 * psi.n;
    const double a2 = 2.0 * (static_cast<double>(r.u_sum) - psi.n);
    r.rho1 = (b - sqrt_d) / a2;
    r.rho2 = (b + sqrt_d) / a2;
  }

  if (psi.m == 2) {
    if (psi.mu[0] == 1 && psi.mu[1] == 1) {
      r.case_tag = ThresholdCase::all_ones;
      r.upsilon_b = kInf;
    } else if (psi.mu[0] == psi.mu[1]) {
      r.case_tag = ThresholdCase::m2_equal;
      r.upsilon_b = 2.0 + delta;
    } else {
      r.case_tag = ThresholdCase::m2_unequal;
      r.upsilon_b = 1.0 + delta;
    }
  } else if (r.u_sum == psi.n) {
    r.case_tag = ThresholdCase::all_ones;
    r.upsilon_b = kInf;
  } else if (r.discriminant < 0) {
    r.case_tag = ThresholdCase::no_real_roots;
    r.upsilon_b = r.upsilon.as_double();
  } else {
    r.case_tag = ThresholdCase::two_roots;
    r.upsilon_b = *r.rho2;
  }
  return r;
}

double second_deriv_formula(const Pattern& psi, int k, int M, std::uint64_t budget) {
  if (k < 2) throw InputError("second derivative formula requires k >= 2");
  const QkmStats stats = qkm_stats(k, M, budget);
  const double pref =
      std::exp(((2.0 * k - static_cast<double>(k) * k) * std::lgamma(M + 1.0) + stats.Z.log()) / M);
  const double var_over_m = to_double(stats.variance) / M;
  const double n = psi.n;
  const double u = static_cast<double>(psi.mu_square_sum());
  const double kk = k;
  const double bracket = kk * kk / ((kk - 1) * (kk - 1)) * var_over_m * (kk * u - n * n) - n;
  return pref * std::exp((1.0 - n) * std::log(kk)) * bracket;
}

double second_deriv_limit(const Pattern& psi, int k) {
  if (k < 2) throw InputError("second derivative limit requires k >= 2");
  const double n = psi.n;
  const long long u = psi.mu_square_sum();
  if (k == 2) {
    if (2 * u == static_cast<long long>(psi.n) * psi.n)
      return -n * std::exp((1.0 - n) * std::log(2.0));
    return kInf;
  }
  const double kk = k;
  const double bracket = (kk - 1) / (kk * (kk - 2)) * (kk * static_cast<double>(u) - n * n) - n;
  return normalized_Z_limit(k) * std::exp((1.0 - n) * std::log(kk)) * bracket;
}

namespace {

// Zero-sum unit direction: Gaussian sample with the all-ones component
// projected out, then normalized.
std::vector<double> sample_direction(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> xi(static_cast<std::size_t>(k));
  for (;;) {
    double mean = 0;
    for (auto& v : xi) {
      v = normal(rng);
      mean += v;
    }
    mean /= k;
    double norm2 = 0;
    for (auto& v : xi) {
      v -= mean;
      norm2 += v * v;
    }
    if (norm2 > 1e-12) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& v : xi) v *= inv;
      return xi;
    }
  }
}

// For the degree-M target the table sum collapses to row statistics:
// log prod theta_ij^{a_ij} = sum_i s_i log p_i with s_i = sum_j mu_j a_ij.
// Tables sharing the vector s are aggregated once, which makes repeated
// evaluations at perturbed p cheap.
struct LiftedProfile {
  int k = 0;
  int M = 0;
  double pref_log = 0;
  std::vector<std::pair<std::vector<int>, double>> groups;  // (s, log sum of w)

  static LiftedProfile build(const Pattern& psi, int k, int M, std::uint64_t budget) {
    LiftedProfile prof;
    prof.k = k;
    prof.M = M;
    prof.pref_log = (2.0 * k - static_cast<double>(k) * k) * std::lgamma(M + 1.0);
    std::vector<double> lfact(static_cast<std::size_t>(M) + 1);
    for (int v = 0; v <= M; ++v) lfact[v] = std::lgamma(v + 1.0);
    std::map<std::vector<int>, LogNumber> acc;
    std::vector<int> s(static_cast<std::size_t>(k));
    enumerate_tables(k, M, budget, [&](const ContingencyTable& A) {
      double lw = 0;
      for (int i = 0; i < k; ++i) {
        long long si = 0;
        for (int j = 0; j < k; ++j) {
          const int a = A.at(i, j);
          lw += lfact[M - a] - lfact[a];
          if (j < psi.m) si += static_cast<long long>(psi.mu[j]) * a;
        }
        s[i] = static_cast<int>(si);
      }
      acc[s] += LogNumber::from_log(lw);
    });
    prof.groups.reserve(acc.size());
    for (auto& [key, val] : acc) prof.groups.emplace_back(key, val.log());
    return prof;
  }

  double eval(const std::vector<double>& p) const {
    std::vector<double> lp(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) lp[i] = std::log(p[i]);
    double mx = -kInf;
    std::vector<double> terms(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      double t = groups[g].second;
      for (int i = 0; i < k; ++i) t += groups[g].first[i] * lp[i];
      terms[g] = t;
      if (t > mx) mx = t;
    }
    double sum = 0;
    for (double t : terms) sum += std::exp(t - mx);
    return std::exp((pref_log + mx + std::log(sum)) / M);
  }
};

ProbeClass classify(const std::vector<double>& diffs, double margin) {
  bool has_pos = false, has_neg = false, all_pos = true, all_neg = true;
  for (double d : diffs) {
    if (d > margin) has_pos = true;
    else all_pos = false;
    if (d < -margin) has_neg = true;
    else all_neg = false;
  }
  if (all_neg) return ProbeClass::local_max;
  if (all_pos) return ProbeClass::local_min;
  if (has_pos && has_neg) return ProbeClass::mixed;
  return ProbeClass::inconclusive;
}

}  // namespace

ProbeResult probe_extremum(ProbeTarget target, const Pattern& psi, int k, std::optional<int> M,
                           const ProbeOptions& opts) {
  if (k < psi.m) throw InputError("probe requires k >= m");
  if (!(opts.step > 0)) throw InputError("step must be positive");
  if (opts.step >= 1.0 / (2.0 * k))
    throw InputError("step too large: need step < 1/(2k) to stay inside the simplex");
  if (opts.n_dirs < 1) throw InputError("need at least one direction");
  if (target == ProbeTarget::lifted_m && !M) throw InputError("lifted target requires M");

  // Target map evaluated at p = U_k + t xi.
  std::function<double(const std::vector<double>&)> f;
  LiftedProfile profile;
  switch (target) {
    case ProbeTarget::pml:
      f = [&](const std::vector<double>& p) {
        return pattern_probability(psi, Pmf<double>{p}, opts.budget);
      };
      break;
    case ProbeTarget::lifted_m:
      profile = LiftedProfile::build(psi, k, *M, opts.budget);
      f = [&](const std::vector<double>& p) { return profile.eval(p); };
      break;
    case ProbeTarget::bethe:
      f = [&](const std::vector<double>& p) {
        BetheOptions bo;
        bo.tol = opts.bethe_tol;
        return minimize_bethe(theta_matrix(psi, Pmf<double>{p}), bo).bethe_perm;
      };
      break;
  }

  ProbeResult res;
  res.k = k;
  res.M = M.value_or(0);
  res.directions = opts.n_dirs;
  res.step = opts.step;
  res.exploratory = target == ProbeTarget::bethe;

  const double h = opts.step;
  std::vector<double> p0(static_cast<std::size_t>(k), 1.0 / k);
  res.f0 = f(p0);

  auto at = [&](const std::vector<double>& xi, double t) {
    std::vector<double> p(p0);
    for (int i = 0; i < k; ++i) p[i] += t * xi[i];
    return f(p);
  };

  double max_abs_f = std::abs(res.f0);
  for (int d = 0; d < opts.n_dirs; ++d) {
    std::mt19937_64 rng(split_seed(opts.seed, static_cast<std::uint64_t>(d)));
    const std::vector<double> xi = sample_direction(k, rng);
    const double fp = at(xi, h), fm = at(xi, -h);
    const double fp2 = at(xi, h / 2), fm2 = at(xi, -h / 2);
    for (double v : {fp, fm, fp2, fm2}) max_abs_f = std::max(max_abs_f, std::abs(v));
    res.second_diffs.push_back((fp - 2 * res.f0 + fm) / (h * h));
    res.second_diffs_half.push_back((fp2 - 2 * res.f0 + fm2) / (h * h / 4));
    res.first_diffs.push_back((fp - fm) / (2 * h));
    res.first_diffs_half.push_back((fp2 - fm2) / h);
  }

  const double noise =
      max_abs_f * (target == ProbeTarget::bethe ? std::max(1e-12, opts.bethe_tol) : 1e-12);
  res.margin = 10.0 * noise / (h * h);
  const ProbeClass ch = classify(res.second_diffs, res.margin);
  const ProbeClass ch2 = classify(res.second_diffs_half, 4.0 * res.margin);
  res.classification = (ch == ch2) ? ch : ProbeClass::inconclusive;

  // At k = Upsilon exactly the classification theorem does not apply; the
  // uniform point is a saddle there (e.g. 1122 at k = 3), so report it as
  // mixed rather than forcing an extremum from even-order differences.
  if (target == ProbeTarget::pml) {
    const ExtendedReal ups = upsilon(psi);
    if (ups.equals(k)) res.classification = ProbeClass::mixed;
  }
  return res;
}

std::vector<PhaseScanRow> phase_scan(const Pattern& psi, const std::vector<int>& ks,
                                     const std::vector<int>& Ms, const ProbeOptions& opts) {
  std::vector<PhaseScanRow> rows;
  for (int k : ks) {
    for (int M : Ms) {
      PhaseScanRow row;
      row.k = k;
      row.M = M;
      row.formula = second_deriv_formula(psi, k, M, opts.budget);
      row.limit = second_deriv_limit(psi, k);
      const ProbeResult pr = probe_extremum(ProbeTarget::lifted_m, psi, k, M, opts);
      row.probe_class = pr.classification;
      row.min_diff = *std::min_element(pr.second_diffs.begin(), pr.second_diffs.end());
      row.max_diff = *std::max_element(pr.second_diffs.begin(), pr.second_diffs.end());
      rows.push_back(row);
    }
  }
  return rows;
}

std::string phase_scan_csv(const std::vector<PhaseScanRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  os << "k,M,formula,limit,probe_class,min_diff,max_diff\n";
  for (const auto& r : rows) {
    os << r.k << ',' << r.M << ',' << r.formula << ',' << r.limit << ',' << to_string(r.probe_class)
       << ',' << r.min_diff << ',' << r.max_diff << '\n';
  }
  return os.str();
}

}  // namespace pml
