#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace sdr {

// Exact nonnegative counts. Everything in the counting paths is integer
// arithmetic; no floating point anywhere.
using BigCount = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigCount& v) { return v.str(); }

}  // namespace sdr
