#include "pml/pattern.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace pml {

Pattern Pattern::from_multiplicities(std::vector<int> mu) {
  if (mu.empty()) throw InputError("pattern must have at least one symbol");
  Pattern p;
  long long n = 0;
  for (int v : mu) {
    if (v < 1) throw InputError("multiplicities must be positive");
    n += v;
  }
  if (n > std::numeric_limits<int>::max()) throw InputError("pattern too long");
  p.mu = std::move(mu);
  p.n = static_cast<int>(n);
  p.m = static_cast<int>(p.mu.size());
  return p;
}

long long Pattern::mu_square_sum() const {
  long long u = 0;
  for (int v : mu) u += static_cast<long long>(v) * v;
  return u;
}

PatternExtract extract_pattern(const std::string& seq) { return extract_pattern_of(seq); }

namespace {

Pattern parse_digit_pattern(const std::string& text) {
  std::vector<int> counts;
  int max_seen = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0')
      throw InputError("not a valid pattern: '" + text + "'");
    const int s = c - '0';
    if (s > max_seen + 1)
      throw InputError("not a valid pattern: symbol " + std::to_string(s) +
                       " appears before " + std::to_string(max_seen + 1));
    if (s == max_seen + 1) {
      counts.push_back(0);
      max_seen = s;
    }
    ++counts[s - 1];
  }
  return Pattern::from_multiplicities(counts);
}

Pattern parse_multiplicity_list(const std::string& text) {
  std::vector<int> mu;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      const long v = std::stol(tok, &pos);
      while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
      if (pos != tok.size()) throw InputError("bad multiplicity '" + tok + "'");
      if (v < 1 || v > std::numeric_limits<int>::max())
        throw InputError("multiplicities must be positive integers");
      mu.push_back(static_cast<int>(v));
    } catch (const InputError&) {
      throw;
    } catch (const std::exception&) {
      throw InputError("bad multiplicity '" + tok + "'");
    }
  }
  return Pattern::from_multiplicities(std::move(mu));
}

}  // namespace

Pattern parse_pattern(const std::string& text) {
  if (text.empty()) throw InputError("empty input");
  if (text.find(',') != std::string::npos) return parse_multiplicity_list(text);
  return parse_digit_pattern(text);
}

bool has_digit_string(const Pattern& p) { return p.m <= 9; }

std::string pattern_digit_string(const Pattern& p) {
  if (!has_digit_string(p))
    throw InputError("patterns of size m > 9 have no digit string; use the multiplicity list");
  std::string s;
  for (int j = 0; j < p.m; ++j) s.append(static_cast<std::size_t>(p.mu[j]), static_cast<char>('1' + j));
  return s;
}

std::string pattern_digit_string(const std::vector<int>& symbols) {
  std::string s;
  for (int v : symbols) {
    if (v > 9) throw InputError("patterns of size m > 9 have no digit string; use the multiplicity list");
    s.push_back(static_cast<char>('0' + v));
  }
  return s;
}

double ExtendedReal::as_double() const {
  return infinite ? std::numeric_limits<double>::infinity() : to_double(value);
}

ExtendedReal upsilon(const Pattern& p) {
  const long long n = p.n;
  const long long u = p.mu_square_sum();
  if (u == n) return ExtendedReal::infinity();
  return ExtendedReal::of(Rational(BigInt(n) * n - n, BigInt(u) - n));
}

}  // namespace pml
