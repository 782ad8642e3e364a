#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace nlgg {

// Exact rational arithmetic. All game values, LP pivots and decomposition
// weights are kept as rationals end to end; doubles appear only at the
// reporting boundary.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rat &r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p", "-p/q" and surrounding whitespace.
inline Rat rat_from_string(const std::string &s) {
  auto bad = [&] { throw std::invalid_argument("bad rational: '" + s + "'"); };
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) bad();
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(t));
    Int num(t.substr(0, slash));
    Int den(t.substr(slash + 1));
    if (den == 0) bad();
    return Rat(num, den);
  } catch (const std::runtime_error &) {
    bad();
  }
  return Rat(0);  // unreachable
}

inline double rat_to_double(const Rat &r) { return r.convert_to<double>(); }

}  // namespace nlgg
