#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace pml {

// Exact arithmetic backends. Rationals are used wherever the contract says
// "exact"; doubles are the scan backend; log-space handles factorial growth.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);
BigInt ipow(const BigInt& base, unsigned e);
Rational rpow(const Rational& base, unsigned e);

// Natural log of a positive big integer, accurate to ~1 ulp of double.
double log_big(const BigInt& x);
// Natural log of a positive rational.
double log_big(const Rational& x);

// SplitMix64 step; used to derive independent seed streams. Stream s of a
// run with base seed b is seeded with split_seed(b, s), so results do not
// depend on how streams are partitioned across workers.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace pml
