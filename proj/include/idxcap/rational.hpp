#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace idxcap {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace idxcap
