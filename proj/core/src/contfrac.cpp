#include "slitflow/contfrac.hpp"

#include <string>

namespace slitflow::contfrac {

RationalInterval RationalInterval::hull(const Rational& a, const Rational& b) {
  return a < b ? RationalInterval{a, b} : RationalInterval{b, a};
}

Interval RationalInterval::enclosure() const {
  return slitflow::hull(Interval::from_rational(lo), Interval::from_rational(hi));
}

CFExpansion CFExpansion::from_coefficients(std::vector<BigInt> coeffs) {
  CFExpansion cf;
  cf.coeffs_ = std::move(coeffs);
  cf.extend_convergents(cf.coeffs_.size());
  return cf;
}

void CFExpansion::append(const BigInt& a) {
  if (a < 1) {
    throw InvalidCoefficient("coefficient a_" + std::to_string(coeffs_.size() + 1) +
                             " must be >= 1");
  }
  coeffs_.push_back(a);
  extend_convergents(coeffs_.size());
}

void CFExpansion::extend_convergents(std::size_t n) {
  if (n > coeffs_.size()) {
    throw InsufficientDepth("convergent depth " + std::to_string(n) +
                            " exceeds coefficient count " + std::to_string(coeffs_.size()));
  }
  table_.reserve(n + 2);
  for (std::size_t k = convergent_depth() + 1; k <= n; ++k) {
    const BigInt& a = coeffs_[k - 1];
    if (a < 1) {
      throw InvalidCoefficient("coefficient a_" + std::to_string(k) + " must be >= 1");
    }
    const Convergent& prev = table_[k];
    const Convergent& prev2 = table_[k - 1];
    table_.push_back({a * prev.p + prev2.p, a * prev.q + prev2.q});
  }
}

const BigInt& CFExpansion::a(std::size_t n) const {
  if (n == 0 || n > coeffs_.size()) {
    throw InsufficientDepth("coefficient a_" + std::to_string(n) + " not available");
  }
  return coeffs_[n - 1];
}

const BigInt& CFExpansion::p(long n) const {
  if (n < -1 || n > static_cast<long>(convergent_depth())) {
    throw InsufficientDepth("convergent p_" + std::to_string(n) + " not available");
  }
  return table_[static_cast<std::size_t>(n + 1)].p;
}

const BigInt& CFExpansion::q(long n) const {
  if (n < -1 || n > static_cast<long>(convergent_depth())) {
    throw InsufficientDepth("convergent q_" + std::to_string(n) + " not available");
  }
  return table_[static_cast<std::size_t>(n + 1)].q;
}

RationalInterval CFExpansion::theta_interval() const {
  const long n = static_cast<long>(convergent_depth());
  Rational at_tail_one(p(n) + p(n - 1), q(n) + q(n - 1));
  Rational at_tail_inf(p(n), q(n));
  return RationalInterval::hull(at_tail_one, at_tail_inf);
}

RationalInterval CFExpansion::linear_form(const BigInt& a, const BigInt& b) const {
  RationalInterval theta = theta_interval();
  return RationalInterval::hull(Rational(a) + Rational(b) * theta.lo,
                                Rational(a) + Rational(b) * theta.hi);
}

Interval CFExpansion::linear_form_enclosure(const BigInt& a, const BigInt& b) const {
  // a + b·θ = (a (q_N x + q_{N-1}) + b (p_N x + p_{N-1})) / (q_N x + q_{N-1}), x in [1, ∞].
  const long n = static_cast<long>(convergent_depth());
  const BigInt num_inf = a * q(n) + b * p(n);
  const BigInt num_prev = a * q(n - 1) + b * p(n - 1);
  const BigInt den_one = q(n) + q(n - 1);
  Interval at_inf = Interval::from_integer(num_inf) / Interval::from_integer(q(n));
  Interval at_one = Interval::from_integer(num_inf + num_prev) / Interval::from_integer(den_one);
  return slitflow::hull(at_inf, at_one);
}

CFExpansion extend_convergents(CFExpansion cf, std::size_t up_to) {
  cf.extend_convergents(up_to);
  return cf;
}

RationalInterval approximation_gap(const CFExpansion& cf, std::size_t n) {
  if (n + 1 > cf.convergent_depth()) {
    throw InsufficientDepth("approximation gap at depth " + std::to_string(n) +
                            " needs q_" + std::to_string(n + 1));
  }
  const long m = static_cast<long>(n);
  return {Rational(BigInt(1), cf.q(m) + cf.q(m + 1)), Rational(BigInt(1), cf.q(m + 1))};
}

RationalInterval theta_enclosure(const CFExpansion& cf, unsigned digits) {
  BigInt scale = boost::multiprecision::pow(BigInt(10), digits);
  for (long m = 1; m <= static_cast<long>(cf.convergent_depth()); ++m) {
    // Tail interval at depth m has width 1 / (q_m (q_m + q_{m-1})).
    if (cf.q(m) * (cf.q(m) + cf.q(m - 1)) > scale) {
      return RationalInterval::hull(Rational(cf.p(m) + cf.p(m - 1), cf.q(m) + cf.q(m - 1)),
                                    Rational(cf.p(m), cf.q(m)));
    }
  }
  throw InsufficientDepth("coefficients do not determine θ to " + std::to_string(digits) +
                          " digits");
}

}  // namespace slitflow::contfrac
