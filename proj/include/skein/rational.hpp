#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace skein {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Serialized form is always "num/den" with den > 0 and gcd(num,den) = 1.
std::string rat_to_string(const Rational& r);
Rational rat_from_string(const std::string& s);

inline Rational rat(long n, long d = 1) { return Rational(n, d); }

}  // namespace skein
