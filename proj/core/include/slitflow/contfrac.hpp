#pragma once

// Exact continued fractions θ = [0; a_1, a_2, ...] with a_n >= 1.
//
// Convergents follow p_n = a_n p_{n-1} + p_{n-2}, q_n = a_n q_{n-1} + q_{n-2}
// from the seeds (p_{-1}, q_{-1}) = (1, 0) and (p_0, q_0) = (0, 1).
//
// A finite coefficient list a_1..a_N does not pin θ down; it describes every
// θ = (p_N x + p_{N-1}) / (q_N x + q_{N-1}) with tail x = [a_{N+1}; ...] >= 1.
// That set is the rational interval between (p_N + p_{N-1}) / (q_N + q_{N-1})
// and p_N / q_N, and every real quantity downstream is enclosed over it.

#include "slitflow/numeric.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace slitflow::contfrac {

class InvalidCoefficient : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientDepth : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Closed interval with exact rational endpoints, lo <= hi.
struct RationalInterval {
  Rational lo;
  Rational hi;

  static RationalInterval hull(const Rational& a, const Rational& b);
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const RationalInterval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  Rational width() const { return hi - lo; }
  Interval enclosure() const;
};

struct Convergent {
  BigInt p;
  BigInt q;
};

class CFExpansion {
 public:
  CFExpansion() = default;
  // Validates every coefficient and fills the whole convergent table.
  static CFExpansion from_coefficients(std::vector<BigInt> coeffs);

  // Appends a_{N+1} and its convergent.
  void append(const BigInt& a);

  // Fills the convergent table through depth n (n <= depth()).
  void extend_convergents(std::size_t n);

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  std::size_t depth() const { return coeffs_.size(); }
  // Deepest n whose convergent has been computed.
  std::size_t convergent_depth() const { return table_.size() - 2; }

  // 1-based coefficient access, a(1) .. a(depth()).
  const BigInt& a(std::size_t n) const;
  // Convergents for n = -1 .. convergent_depth().
  const BigInt& p(long n) const;
  const BigInt& q(long n) const;
  Convergent convergent(long n) const { return {p(n), q(n)}; }

  // Every θ compatible with the coefficient list.
  RationalInterval theta_interval() const;
  // Exact range of a + b·θ over theta_interval().
  RationalInterval linear_form(const BigInt& a, const BigInt& b) const;
  // Same range as an MPFR enclosure, built without reducing huge fractions.
  // Relative accuracy holds even when a + b·θ is tiny against a and b.
  Interval linear_form_enclosure(const BigInt& a, const BigInt& b) const;

  friend bool operator==(const CFExpansion& x, const CFExpansion& y) {
    return x.coeffs_ == y.coeffs_;
  }

 private:
  std::vector<BigInt> coeffs_;
  // table_[k] holds the convergent of index k - 1; seeds occupy k = 0, 1.
  std::vector<Convergent> table_{{BigInt(1), BigInt(0)}, {BigInt(0), BigInt(1)}};
};

CFExpansion extend_convergents(CFExpansion cf, std::size_t up_to);

// [1/(q_n + q_{n+1}), 1/q_{n+1}], the range of |p_n - q_n θ|.
RationalInterval approximation_gap(const CFExpansion& cf, std::size_t n);

// Rational interval containing θ with width < 10^-digits. Uses the shallowest
// depth m whose tail interval is narrow enough.
RationalInterval theta_enclosure(const CFExpansion& cf, unsigned digits);

}  // namespace slitflow::contfrac
