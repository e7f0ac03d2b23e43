#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace sunflower {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Closed interval [lo, hi] with rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;
};

/// Raised when two reals cannot be ordered within the maximum working
/// precision (typically because they are equal but one is not exact).
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real number known either exactly, as a rational, or through rigorous
/// enclosures that tighten as the working precision grows.
///
/// Arithmetic on exact operands stays exact. As soon as a transcendental
/// function enters, the result is carried as a lazily evaluated enclosure
/// and comparisons escalate precision until they are decided.
class Real {
 public:
  Real() : exact_(Rational(0)) {}
  Real(int v) : exact_(Rational(v)) {}
  Real(long v) : exact_(Rational(v)) {}
  Real(long long v) : exact_(Rational(v)) {}
  Real(unsigned long v) : exact_(Rational(Integer(v))) {}
  Real(unsigned long long v) : exact_(Rational(Integer(v))) {}
  Real(Integer v) : exact_(Rational(std::move(v))) {}
  Real(Rational v) : exact_(std::move(v)) {}

  /// Builds an inexact real from an enclosure routine. `enclose(bits)` must
  /// return an interval containing the value whose width shrinks roughly
  /// like 2^-bits relative to the value.
  static Real from_enclosure(std::function<Interval(unsigned bits)> enclose);

  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact() const;

  Interval enclose(unsigned bits) const;
  double to_double() const;

  /// Exact values print as `p` or `p/q`; inexact ones as a decimal with
  /// `digits` significant digits.
  std::string to_string(int digits = 12) const;

 private:
  struct Node;
  std::optional<Rational> exact_;
  std::shared_ptr<Node> node_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real pow(const Real& base, long exponent);
Real exp(const Real& x);
Real log(const Real& x);

/// Returns -1, 0 or 1. Equality is only reported for two exact operands;
/// an undecidable comparison throws PrecisionError.
int compare(const Real& a, const Real& b);

inline bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
inline bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
inline bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
inline bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }

Integer floor(const Real& x);
Integer ceil(const Real& x);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// Decimal rendering of an interval midpoint with the requested number of
/// significant digits, refined until the enclosure agrees to that many.
std::string to_decimal(const Real& x, int digits);

/// Parses "p", "p/q" or a plain decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

}  // namespace sunflower
