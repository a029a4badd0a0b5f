#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace imp {

/// Unbounded signed integer used for program values and literals.
using Integer = boost::multiprecision::cpp_int;

/// Reduces `n` modulo 2^32 into the interval [-2^31, 2^31).
Integer normalize32(const Integer& n);

/// Division rounding toward negative infinity. `divisor` must be nonzero.
Integer floor_div(const Integer& dividend, const Integer& divisor);

inline std::string to_string(const Integer& n) { return n.str(); }

}  // namespace imp
