#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace msg {

using Rational = boost::multiprecision::cpp_rational;

}  // namespace msg
