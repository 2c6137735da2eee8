#include "pml/numeric.hpp"

#include "pml/errors.hpp"

#include <limits>

namespace pml {

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

BigInt ipow(const BigInt& base, unsigned e) {
  BigInt r = 1, b = base;
  for (; e; e >>= 1) {
    if (e & 1u) r *= b;
    if (e > 1) b *= b;
  }
  return r;
}

Rational rpow(const Rational& base, unsigned e) {
  Rational r = 1, b = base;
  for (; e; e >>= 1) {
    if (e & 1u) r *= b;
    if (e > 1) b *= b;
  }
  return r;
}

double log_big(const BigInt& x) {
  if (x <= 0) throw InputError("log_big: argument must be positive");
  const auto bits = boost::multiprecision::msb(x);  // floor(log2 x)
  if (bits < 900) return std::log(x.convert_to<double>());
  // Keep the top 512 bits as the mantissa and account for the shift.
  const unsigned shift = static_cast<unsigned>(bits - 511);
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

double log_big(const Rational& x) {
  if (x <= 0) throw InputError("log_big: argument must be positive");
  return log_big(boost::multiprecision::numerator(x)) -
         log_big(boost::multiprecision::denominator(x));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

}  // namespace pml
