#ifndef TYPESEM_RATIONAL_HPP
#define TYPESEM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace typesem {

/// Exact rational arithmetic for states, functionals, and linear programs.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// Renders p/q with the denominator omitted when it is 1, e.g. "2", "-1/3".
inline std::string rat_to_string(const Rat &r) {
  Int num = numerator(r);
  Int den = denominator(r);
  if (den == 1)
    return num.str();
  return num.str() + "/" + den.str();
}

/// Parses the format produced by rat_to_string. Accepts optional sign and
/// an optional "/q" suffix with q > 0.
inline Rat rat_from_string(const std::string &s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos)
      return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0)
      throw std::invalid_argument("nonpositive denominator");
    return Rat(num, den);
  } catch (const std::exception &) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

/// A rational extended with a single point at infinity, used for values of
/// functionals on functions that may take the value infinity.
struct ExtRat {
  bool inf = false;
  Rat v = 0;

  static ExtRat infinity() { return ExtRat{true, 0}; }

  ExtRat &operator+=(const ExtRat &o) {
    if (inf || o.inf) {
      inf = true;
      v = 0;
    } else {
      v += o.v;
    }
    return *this;
  }

  friend bool operator==(const ExtRat &a, const ExtRat &b) {
    return a.inf == b.inf && (a.inf || a.v == b.v);
  }
  friend bool operator<=(const ExtRat &a, const ExtRat &b) {
    if (b.inf)
      return true;
    if (a.inf)
      return false;
    return a.v <= b.v;
  }

  std::string to_string() const { return inf ? "inf" : rat_to_string(v); }
};

} // namespace typesem

#endif // TYPESEM_RATIONAL_HPP
