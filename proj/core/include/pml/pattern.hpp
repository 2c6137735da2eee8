#pragma once

#include "pml/errors.hpp"
#include "pml/numeric.hpp"

#include <string>
#include <vector>

namespace pml {

// Canonical form of a pattern: multiplicities mu_1..mu_m in order of first
// occurrence, length n = sum(mu), size m = number of distinct symbols.
struct Pattern {
  std::vector<int> mu;
  int n = 0;
  int m = 0;

  static Pattern from_multiplicities(std::vector<int> mu);

  // U = sum of mu_i^2.
  long long mu_square_sum() const;
};

struct PatternExtract {
  Pattern pattern;
  std::vector<int> symbols;  // the pattern itself: symbol index per position
};

// Relabels each element of the sequence by the order of its first occurrence.
template <typename Seq>
PatternExtract extract_pattern_of(const Seq& seq) {
  if (seq.empty()) throw InputError("empty input");
  PatternExtract out;
  std::vector<typename Seq::value_type> first_seen;
  std::vector<int> counts;
  for (const auto& x : seq) {
    int idx = -1;
    for (std::size_t j = 0; j < first_seen.size(); ++j) {
      if (first_seen[j] == x) {
        idx = static_cast<int>(j);
        break;
      }
    }
    if (idx < 0) {
      idx = static_cast<int>(first_seen.size());
      first_seen.push_back(x);
      counts.push_back(0);
    }
    ++counts[idx];
    out.symbols.push_back(idx + 1);
  }
  out.pattern = Pattern::from_multiplicities(counts);
  return out;
}

PatternExtract extract_pattern(const std::string& seq);

// Accepts a pattern digit string ("1122") or a comma-separated multiplicity
// list ("2,2"). Digit strings are only defined for size m <= 9; the list form
// is the canonical interchange format.
Pattern parse_pattern(const std::string& text);

// Digit-string rendering of the canonical form 1^mu1 2^mu2 ... m^mum.
// Only defined for m <= 9.
std::string pattern_digit_string(const Pattern& p);
std::string pattern_digit_string(const std::vector<int>& symbols);
bool has_digit_string(const Pattern& p);

// Non-negative extended real with an exact rational payload. Houses the
// threshold Upsilon, which must support exact comparisons against integers.
struct ExtendedReal {
  bool infinite = false;
  Rational value = 0;

  static ExtendedReal infinity() { return {true, 0}; }
  static ExtendedReal of(Rational v) { return {false, std::move(v)}; }

  double as_double() const;
  bool less_than(long long x) const { return !infinite && value < x; }
  bool greater_than(long long x) const { return infinite || value > x; }
  bool equals(long long x) const { return !infinite && value == x; }
};

// Upsilon(psi) = (n^2 - n) / (sum mu_i^2 - n); +infinity when all mu_i = 1.
ExtendedReal upsilon(const Pattern& p);

}  // namespace pml
