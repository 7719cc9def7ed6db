#include "slitflow/numeric.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

namespace slitflow {

namespace {

unsigned g_digits = 120;

mpfr_ptr raw(Real& x) { return x.backend().data(); }
mpfr_srcptr raw(const Real& x) { return x.backend().data(); }

Real fresh() {
  if (Real::default_precision() != g_digits) Real::default_precision(g_digits);
  return Real();
}

template <typename Fn>
Real rounded(Fn&& fn, mpfr_rnd_t mode) {
  Real r = fresh();
  fn(raw(r), mode);
  return r;
}

Real mpfr_min(const Real& a, const Real& b) { return a < b ? a : b; }
Real mpfr_max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace

void set_working_digits(unsigned digits) {
  g_digits = std::max(digits, 20u);
  Real::default_precision(g_digits);
}

unsigned working_digits() { return g_digits; }

ScopedDigits::ScopedDigits(unsigned digits) : saved_(g_digits) {
  set_working_digits(digits);
}

ScopedDigits::~ScopedDigits() { set_working_digits(saved_); }

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.backend().data(), 2);
}

Interval::Interval() : lo_(fresh()), hi_(fresh()) {
  mpfr_set_zero(raw(lo_), 1);
  mpfr_set_zero(raw(hi_), 1);
}

Interval::Interval(const Real& point) : lo_(fresh()), hi_(fresh()) {
  mpfr_set(raw(lo_), raw(point), MPFR_RNDD);
  mpfr_set(raw(hi_), raw(point), MPFR_RNDU);
}

Interval::Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw DomainError("interval with lo > hi");
}

Interval::Interval(long point) : lo_(fresh()), hi_(fresh()) {
  mpfr_set_si(raw(lo_), point, MPFR_RNDD);
  mpfr_set_si(raw(hi_), point, MPFR_RNDU);
}

Interval Interval::from_rational(const Rational& q) {
  Interval r;
  mpfr_set_q(raw(r.lo_), q.backend().data(), MPFR_RNDD);
  mpfr_set_q(raw(r.hi_), q.backend().data(), MPFR_RNDU);
  return r;
}

Interval Interval::hull_of(const Rational& a, const Rational& b) {
  return a < b ? hull(from_rational(a), from_rational(b))
               : hull(from_rational(b), from_rational(a));
}

Interval Interval::from_integer(const BigInt& z) {
  Interval r;
  mpfr_set_z(raw(r.lo_), z.backend().data(), MPFR_RNDD);
  mpfr_set_z(raw(r.hi_), z.backend().data(), MPFR_RNDU);
  return r;
}

Interval Interval::from_double(double x) {
  Interval r;
  mpfr_set_d(raw(r.lo_), x, MPFR_RNDD);
  mpfr_set_d(raw(r.hi_), x, MPFR_RNDU);
  return r;
}

Interval Interval::pi() {
  Interval r;
  mpfr_const_pi(raw(r.lo_), MPFR_RNDD);
  mpfr_const_pi(raw(r.hi_), MPFR_RNDU);
  return r;
}

Interval Interval::log2() {
  Interval r;
  mpfr_const_log2(raw(r.lo_), MPFR_RNDD);
  mpfr_const_log2(raw(r.hi_), MPFR_RNDU);
  return r;
}

Real Interval::mid() const {
  Real r = fresh();
  mpfr_add(raw(r), raw(lo_), raw(hi_), MPFR_RNDN);
  mpfr_div_2ui(raw(r), raw(r), 1, MPFR_RNDN);
  return r;
}

Real Interval::width() const {
  return rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sub(r, raw(hi_), raw(lo_), m); },
                 MPFR_RNDU);
}

Real Interval::mag() const {
  Real a = abs(lo_);
  Real b = abs(hi_);
  return a < b ? b : a;
}

bool Interval::contains(const Real& x) const { return lo_ <= x && x <= hi_; }

bool Interval::contains(const Interval& other) const {
  return lo_ <= other.lo_ && other.hi_ <= hi_;
}

bool Interval::contains_zero() const { return lo_ <= 0 && hi_ >= 0; }
bool Interval::positive() const { return lo_ > 0; }
bool Interval::negative() const { return hi_ < 0; }

bool Interval::certainly_less(const Interval& other) const { return hi_ < other.lo_; }

double Interval::to_double() const { return mid().convert_to<double>(); }

Interval& Interval::operator+=(const Interval& b) {
  Real lo = rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_add(r, raw(lo_), raw(b.lo_), m); },
                    MPFR_RNDD);
  Real hi = rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_add(r, raw(hi_), raw(b.hi_), m); },
                    MPFR_RNDU);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval& Interval::operator-=(const Interval& b) {
  Real lo = rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sub(r, raw(lo_), raw(b.hi_), m); },
                    MPFR_RNDD);
  Real hi = rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sub(r, raw(hi_), raw(b.lo_), m); },
                    MPFR_RNDU);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval& Interval::operator*=(const Interval& b) {
  const Real* xs[2] = {&lo_, &hi_};
  const Real* ys[2] = {&b.lo_, &b.hi_};
  Real lo, hi;
  bool first = true;
  for (const Real* x : xs) {
    for (const Real* y : ys) {
      Real d = rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_mul(r, raw(*x), raw(*y), m); },
                       MPFR_RNDD);
      Real u = rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_mul(r, raw(*x), raw(*y), m); },
                       MPFR_RNDU);
      if (first) {
        lo = std::move(d);
        hi = std::move(u);
        first = false;
      } else {
        lo = mpfr_min(lo, d);
        hi = mpfr_max(hi, u);
      }
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval& Interval::operator/=(const Interval& b) {
  if (b.contains_zero()) throw DomainError("interval division by an interval containing 0");
  Interval inv;
  inv.lo_ = rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_ui_div(r, 1, raw(b.hi_), m); },
                    MPFR_RNDD);
  inv.hi_ = rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_ui_div(r, 1, raw(b.lo_), m); },
                    MPFR_RNDU);
  return *this *= inv;
}

Interval operator-(const Interval& a) {
  Real lo = -a.hi();
  Real hi = -a.lo();
  return Interval(std::move(lo), std::move(hi));
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(mpfr_min(a.lo(), b.lo()), mpfr_max(a.hi(), b.hi()));
}

Interval abs(const Interval& x) {
  if (x.lo() >= 0) return x;
  if (x.hi() <= 0) return -x;
  Real zero = fresh();
  mpfr_set_zero(raw(zero), 1);
  return Interval(std::move(zero), x.mag());
}

Interval square(const Interval& x) {
  Interval a = abs(x);
  return a * a;
}

namespace {

using UnaryMpfr = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

Interval monotone_increasing(const Interval& x, UnaryMpfr fn) {
  Real lo = rounded([&](mpfr_ptr r, mpfr_rnd_t m) { fn(r, raw(x.lo()), m); }, MPFR_RNDD);
  Real hi = rounded([&](mpfr_ptr r, mpfr_rnd_t m) { fn(r, raw(x.hi()), m); }, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

}  // namespace

Interval sqrt(const Interval& x) {
  if (x.lo() < 0) throw DomainError("sqrt of an interval reaching below 0");
  return monotone_increasing(x, mpfr_sqrt);
}

Interval exp(const Interval& x) { return monotone_increasing(x, mpfr_exp); }

Interval log(const Interval& x) {
  if (!x.positive()) throw DomainError("log of a non-positive interval");
  return monotone_increasing(x, mpfr_log);
}

Interval sinh(const Interval& x) { return monotone_increasing(x, mpfr_sinh); }

Interval cosh(const Interval& x) {
  Interval a = abs(x);
  return monotone_increasing(a, mpfr_cosh);
}

Interval asinh(const Interval& x) { return monotone_increasing(x, mpfr_asinh); }

Interval min(const Interval& a, const Interval& b) {
  return Interval(mpfr_min(a.lo(), b.lo()), mpfr_min(a.hi(), b.hi()));
}

Interval max(const Interval& a, const Interval& b) {
  return Interval(mpfr_max(a.lo(), b.lo()), mpfr_max(a.hi(), b.hi()));
}

Interval log_of(const BigInt& z) {
  if (z <= 0) throw DomainError("log of a non-positive integer");
  return log(Interval::from_integer(z));
}

Interval log_of(const Rational& q) {
  if (q <= 0) throw DomainError("log of a non-positive rational");
  return log(Interval::from_rational(q));
}

std::string format_real(const Real& x, int digits) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, raw(x));
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string format_enclosure(const Interval& x, int digits) {
  Real half = x.width();
  mpfr_div_2ui(raw(half), raw(half), 1, MPFR_RNDU);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.3RUe", raw(half));
  std::string h(buf);
  mpfr_free_str(buf);
  return format_real(x.mid(), digits) + " ± " + h;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << format_enclosure(x, 17);
}

bool trend_accepts(const std::vector<double>& values, double target, double tolerance) {
  if (values.empty()) return false;
  if (!(std::fabs(values.back() - target) < tolerance)) return false;
  const std::size_t from = values.size() >= 3 ? values.size() - 3 : 0;
  for (std::size_t i = from + 1; i < values.size(); ++i) {
    if (std::fabs(values[i] - target) > std::fabs(values[i - 1] - target)) return false;
  }
  return true;
}

}  // namespace slitflow
