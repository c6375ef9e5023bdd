#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace lalg {

// Exact rational coefficients. cpp_rational keeps gcd(num, den) = 1 and
// den > 0 as class invariants, which is exactly the Rat contract.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rat& r)
{
    return r.str();
}

inline double rat_to_double(const Rat& r)
{
    return static_cast<double>(r);
}

} // namespace lalg
