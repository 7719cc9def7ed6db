#pragma once

// The d+1 coupled slope expansions θ^0 .. θ^d.
//
// Level k >= 1 picks a_{2k}^i and a_{2k+1}^i so that
//   (i)   a_{2k}^i > k · max{a_{2k-1}^i, u_k^0, ..., u_k^d}
//   (ii)  (a_{2k}^0, ..., a_{2k}^d) = m_k · (u_k^0, ..., u_k^d)
//   (iii) a_{2k+1}^i exceeds the growth bound of the mode
//   (iv)  a_{2k+1}^i · q_{2k}^i is the same integer M_k for every i,
// which forces q_{2k+1}^0 = ... = q_{2k+1}^d.
//
// m_k is the least multiplier satisfying (i) on every torus and
// M_k = c_k · lcm_i(q_{2k}^i) with c_k the least factor satisfying (iii).
//
// Strict mode bounds a_{2k+1}^i from below by a certified integer upper bound
// of exp(k · a_{2k}^i). Scaled mode uses g(k, a) = coefficient·(k·a)^exponent + a
// and is only a heuristic stand-in for the doubly exponential original.

#include "slitflow/contfrac.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slitflow::contfrac {

using Tuple = std::vector<BigInt>;

struct GrowthMode {
  enum class Kind { strict, scaled };
  Kind kind = Kind::strict;
  unsigned exponent = 2;    // scaled only
  unsigned coefficient = 1;  // scaled only

  static GrowthMode strict() { return {}; }
  static GrowthMode scaled(unsigned exponent = 2, unsigned coefficient = 1) {
    return {Kind::scaled, exponent, coefficient};
  }
  bool is_strict() const { return kind == Kind::strict; }

  // "strict" or "scaled(exponent,coefficient)".
  std::string to_string() const;
  static GrowthMode parse(const std::string& text);

  friend bool operator==(const GrowthMode&, const GrowthMode&) = default;
};

// An integer E > exp(x): the ceiling of an upward-rounded MPFR value carried
// with 64 guard bits past the integer part, so E = ceil(exp(x)) unless exp(x)
// lies within 2^-64 of an integer.
BigInt exp_upper_bound(const BigInt& x);

// Least admissible a_{2k+1} for a_{2k} = a at level k: any a_{2k+1} >= the
// returned value satisfies condition (iii).
BigInt odd_lower_bound(const GrowthMode& mode, unsigned k, const BigInt& a);

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(unsigned level, std::size_t bits, std::size_t budget);
  unsigned level() const { return level_; }
  std::size_t bits() const { return bits_; }

 private:
  unsigned level_;
  std::size_t bits_;
};

struct LevelAudit {
  unsigned k = 0;
  Tuple u;
  BigInt multiplier;           // m_k
  std::size_t even_binding = 0;  // torus whose (i) bound fixed m_k
  bool even_bound_from_u = false;  // that bound came from u rather than a_{2k-1}
  BigInt lcm;                  // lcm_i q_{2k}^i
  BigInt lcm_factor;           // c_k
  BigInt common_product;       // M_k
  std::size_t odd_binding = 0;  // torus whose (iii) bound fixed c_k
  std::vector<BigInt> odd_bounds;  // least admissible a_{2k+1}^i
};

struct SlopeFamily {
  unsigned d = 2;
  GrowthMode mode;
  std::vector<CFExpansion> expansions;  // d + 1 of them
  std::vector<Tuple> u_seq;             // u_seq[k - 1] = u_k
  std::vector<LevelAudit> audit;        // audit[k - 1] for level k

  unsigned levels() const { return static_cast<unsigned>(audit.size()); }
  std::size_t tori() const { return expansions.size(); }
  std::size_t depth() const { return expansions.empty() ? 0 : expansions.front().depth(); }
  const CFExpansion& torus(std::size_t i) const { return expansions.at(i); }
  // Largest bit length over every coefficient and convergent.
  std::size_t max_bits() const;
};

// k-th tuple (k >= 1) of the enumeration of all positive (d+1)-tuples ordered
// by max entry and lexicographically within equal max entry:
// (1,1,1), (1,1,2), (1,2,1), (1,2,2), (2,1,1), ... for d = 2.
Tuple default_dense_sequence(unsigned d, std::size_t k);
std::vector<Tuple> default_dense_prefix(unsigned d, std::size_t count);

struct GenerateOptions {
  std::size_t bit_budget = std::size_t{1} << 20;
};

// Builds levels 1..levels. On BudgetExceeded the partially built family (all
// completed levels) is available through `partial` when non-null.
SlopeFamily generate_slope_family(unsigned d, const std::vector<Tuple>& u_seq, unsigned levels,
                                  const GrowthMode& mode, const GenerateOptions& options = {},
                                  SlopeFamily* partial = nullptr);

struct LevelReport {
  unsigned k = 0;
  bool odd_q_equal = false;
  bool cond_i = false;
  bool cond_ii = false;
  bool cond_iii = false;
  bool cond_iv = false;
  // max over ordered pairs (i, j) of |(q_{2k}^i / q_{2k}^j)(u_k^j / u_k^i) - 1|, exact.
  Rational q_ratio_gap;
  // max over pairs of |log a_{2k+1}^i / log a_{2k+1}^j - 1|.
  Interval log_a_ratio_gap;
};

struct ProductBoundRow {
  std::size_t torus = 0;
  std::size_t n = 0;
  bool lower_ok = false;  // q_n >= prod a_j
  bool upper_ok = false;  // q_n <= prod (a_j + 1)
  Interval ratio;         // q_n / prod a_j, lies in [1, prod(1 + 1/a_j)]
};

struct SlopesReport {
  bool seed_ok = false;  // a_1^i = 1 for every i
  std::vector<LevelReport> levels;
  std::vector<ProductBoundRow> products;
  std::vector<std::string> violations;

  bool exact_ok() const;  // every exact check passed
};

SlopesReport verify_lemma_slopes(const SlopeFamily& family);

}  // namespace slitflow::contfrac
