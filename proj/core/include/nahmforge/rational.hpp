#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "nahmforge/errors.hpp"

namespace nahmforge {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p", "-p", "p/q" (q > 0 after normalization).  Throws SyntaxError on
// malformed input and VanishingDenominator on a zero denominator.
Rat parse_rat(const std::string& text);

// Renders as "p" or "p/q" in lowest terms, denominator positive.
std::string rat_to_string(const Rat& x);

inline Int rat_num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int rat_den(const Rat& x) { return boost::multiprecision::denominator(x); }
inline bool rat_is_int(const Rat& x) { return rat_den(x) == 1; }

Int rat_floor(const Rat& x);
Int rat_ceil(const Rat& x);
Int lcm_int(const Int& a, const Int& b);

// Converts an Int known to be small to int64, throwing DomainError otherwise.
std::int64_t to_i64(const Int& x);

// A scalar multiple of a rational power of q: coeff * q^exponent.
// All parameter instantiations (arguments of Pochhammer symbols, Bailey
// parameters, theta arguments) are of this shape.
struct Monomial {
  Rat coeff{1};
  Rat exponent{0};

  Monomial() = default;
  Monomial(Rat c, Rat e) : coeff(std::move(c)), exponent(std::move(e)) {}

  bool is_zero() const { return coeff == 0; }
  bool is_one() const { return coeff == 1 && exponent == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    return Monomial(a.coeff * b.coeff, a.exponent + b.exponent);
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    if (a.coeff == 0 && b.coeff == 0) return true;
    return a.coeff == b.coeff && a.exponent == b.exponent;
  }
};

// Reciprocal of a nonzero monomial.
Monomial monomial_inv(const Monomial& m);
Monomial monomial_pow(const Monomial& m, std::int64_t n);

// Accepts "2", "-1/2", "q", "-q", "q^(3/2)", "-q^(2)", "2*q^(1)",
// "-1/2*q^(3)".  Throws SyntaxError on malformed input.
Monomial parse_monomial(const std::string& text);
std::string monomial_to_string(const Monomial& m);

}  // namespace nahmforge
