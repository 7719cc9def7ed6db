#pragma once

// Number representations shared by every module.
//
// Integers and rationals are exact (GMP). Real-valued quantities are carried
// as closed intervals with MPFR endpoints; every operation rounds the lower
// endpoint down and the upper endpoint up, so an Interval always encloses the
// true value it stands for.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace slitflow {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

// Working precision for newly created Real values, in decimal digits.
void set_working_digits(unsigned digits);
unsigned working_digits();

// RAII guard that restores the previous working precision on scope exit.
class ScopedDigits {
 public:
  explicit ScopedDigits(unsigned digits);
  ~ScopedDigits();
  ScopedDigits(const ScopedDigits&) = delete;
  ScopedDigits& operator=(const ScopedDigits&) = delete;

 private:
  unsigned saved_;
};

std::size_t bit_length(const BigInt& x);

// Thrown when an interval operation leaves its domain (division by an
// interval containing zero, log of a non-positive interval, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Interval {
 public:
  Interval();
  explicit Interval(const Real& point);
  Interval(Real lo, Real hi);
  explicit Interval(long point);

  static Interval from_rational(const Rational& q);
  // Hull of two exact rationals, in either order.
  static Interval hull_of(const Rational& a, const Rational& b);
  static Interval from_integer(const BigInt& z);
  static Interval from_double(double x);
  static Interval pi();
  static Interval log2();

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  Real mid() const;
  Real width() const;
  // Largest |x| over the interval.
  Real mag() const;

  bool contains(const Real& x) const;
  bool contains(const Interval& other) const;
  bool contains_zero() const;
  bool positive() const;  // lo > 0
  bool negative() const;  // hi < 0
  // True when every point is strictly below every point of `other`.
  bool certainly_less(const Interval& other) const;

  double to_double() const;

  Interval& operator+=(const Interval& b);
  Interval& operator-=(const Interval& b);
  Interval& operator*=(const Interval& b);
  Interval& operator/=(const Interval& b);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  friend Interval operator-(const Interval& a);

 private:
  Real lo_;
  Real hi_;
};

Interval hull(const Interval& a, const Interval& b);
Interval abs(const Interval& x);
Interval square(const Interval& x);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval sinh(const Interval& x);
Interval cosh(const Interval& x);
Interval asinh(const Interval& x);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);

// log of a positive big integer as an enclosure.
Interval log_of(const BigInt& z);
// log of a positive rational as an enclosure.
Interval log_of(const Rational& q);

// "mid ± halfwidth" with `digits` significant digits on the midpoint.
std::string format_enclosure(const Interval& x, int digits);
// Midpoint only, scientific when needed; deterministic across runs.
std::string format_real(const Real& x, int digits);

std::ostream& operator<<(std::ostream& os, const Interval& x);

// Finite-sample reading of "x_n tends to target": the last value is within
// `tolerance` of `target` and |x - target| is non-increasing over the final
// three samples.
bool trend_accepts(const std::vector<double>& values, double target, double tolerance);

}  // namespace slitflow
