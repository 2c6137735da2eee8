#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace pml {

// Non-negative magnitude stored as its natural log. Factorial products such
// as w(A) and Z_{k,M} overflow doubles near M ~ 90, so sums and products of
// them are carried out in log space.
class LogNumber {
 public:
  LogNumber() : lg_(-std::numeric_limits<double>::infinity()) {}  // zero

  static LogNumber zero() { return LogNumber(); }
  static LogNumber one() { return from_log(0.0); }
  static LogNumber from_log(double lg) {
    LogNumber x;
    x.lg_ = lg;
    return x;
  }
  static LogNumber from_value(double v) {
    LogNumber x;
    x.lg_ = v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    return x;
  }

  bool is_zero() const { return std::isinf(lg_) && lg_ < 0; }
  double log() const { return lg_; }
  double value() const { return std::exp(lg_); }  // may over/underflow

  LogNumber& operator*=(const LogNumber& o) {
    lg_ += o.lg_;
    return *this;
  }
  friend LogNumber operator*(LogNumber a, const LogNumber& b) { return a *= b; }

  LogNumber& operator+=(const LogNumber& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      lg_ = o.lg_;
      return *this;
    }
    const double hi = lg_ > o.lg_ ? lg_ : o.lg_;
    const double lo = lg_ > o.lg_ ? o.lg_ : lg_;
    lg_ = hi + std::log1p(std::exp(lo - hi));
    return *this;
  }
  friend LogNumber operator+(LogNumber a, const LogNumber& b) { return a += b; }

  // exp(log()/m): the m-th root, as a plain double.
  double root(int m) const { return is_zero() ? 0.0 : std::exp(lg_ / m); }

 private:
  double lg_;
};

// Two-pass max-shift log-sum-exp over raw log terms. Terms equal to -inf
// (zeros) are allowed.
inline LogNumber log_sum_exp(const std::vector<double>& log_terms) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double t : log_terms)
    if (t > mx) mx = t;
  if (std::isinf(mx) && mx < 0) return LogNumber::zero();
  double s = 0.0;
  for (double t : log_terms) s += std::exp(t - mx);
  return LogNumber::from_log(mx + std::log(s));
}

}  // namespace pml
