#ifndef RSO_RATIONAL_HPP
#define RSO_RATIONAL_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace rso {

// Compare against Rational(k), never a bare integer: with C++20 rewritten
// comparison candidates, Boost 1.74's mixed operator== recurses forever.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace rso

#endif
