#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace nmc {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(long long num, long long den) { return Rational(BigInt(num), BigInt(den)); }

/// Always "num/den", including integers ("0/1", "1/1").
inline std::string to_fraction_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

Rational parse_fraction(const std::string& s);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace nmc
