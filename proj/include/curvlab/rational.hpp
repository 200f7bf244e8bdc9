#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace curvlab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

// q^k for integer k (negative allowed; q must be nonzero then)
Rational pow_rational(const Rational& q, int k);

}  // namespace curvlab
