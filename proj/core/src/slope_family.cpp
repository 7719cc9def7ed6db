#include "slitflow/slope_family.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

namespace slitflow::contfrac {

namespace {

BigInt max_entry(const Tuple& u) { return *std::max_element(u.begin(), u.end()); }

BigInt ceil_div(const BigInt& num, const BigInt& den) {
  BigInt quot = num / den;
  if (quot * den < num) ++quot;
  return quot;
}

void validate_tuple(const Tuple& u, unsigned d, std::size_t k) {
  if (u.size() != d + 1) {
    throw std::invalid_argument("u_" + std::to_string(k) + " has " + std::to_string(u.size()) +
                                " entries, expected " + std::to_string(d + 1));
  }
  for (const BigInt& x : u) {
    if (x < 1) throw std::invalid_argument("u_" + std::to_string(k) + " has a non-positive entry");
  }
}

// Working precision (bits) for exp(x) so that the integer part is exact.
std::size_t exp_bits(const BigInt& x) {
  // x * log2(e) bits of integer part plus guard bits.
  double xd = x.convert_to<double>();
  return static_cast<std::size_t>(std::ceil(xd * 1.4426950408889634)) + 64;
}

}  // namespace

std::string GrowthMode::to_string() const {
  if (is_strict()) return "strict";
  return "scaled(" + std::to_string(exponent) + "," + std::to_string(coefficient) + ")";
}

GrowthMode GrowthMode::parse(const std::string& text) {
  if (text == "strict") return strict();
  if (text == "scaled") return scaled();
  unsigned e = 0, c = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "scaled(%u,%u%c", &e, &c, &tail) == 3 && tail == ')' &&
      e >= 1 && c >= 1) {
    return scaled(e, c);
  }
  throw std::invalid_argument("unknown growth mode '" + text + "'");
}

BigInt exp_upper_bound(const BigInt& x) {
  if (x < 0) throw std::invalid_argument("exp_upper_bound expects x >= 0");
  if (bit_length(x) > 40) throw std::overflow_error("exp_upper_bound: argument too large");
  const std::size_t bits = exp_bits(x);
  mpfr_t r;
  mpfr_init2(r, static_cast<mpfr_prec_t>(bits));
  mpfr_set_z(r, x.backend().data(), MPFR_RNDU);
  mpfr_exp(r, r, MPFR_RNDU);
  BigInt out;
  mpfr_get_z(out.backend().data(), r, MPFR_RNDU);
  mpfr_clear(r);
  // exp(x) is irrational for integer x > 0, so the ceiling is strictly above it.
  if (x == 0) out = 2;
  return out;
}

BudgetExceeded::BudgetExceeded(unsigned level, std::size_t bits, std::size_t budget)
    : std::runtime_error("integer budget exceeded at level " + std::to_string(level) + " (" +
                         (bits == std::numeric_limits<std::size_t>::max()
                              ? std::string("more than 2^62")
                              : std::to_string(bits)) +
                         " bits > " + std::to_string(budget) + ")"),
      level_(level),
      bits_(bits) {}

BigInt odd_lower_bound(const GrowthMode& mode, unsigned k, const BigInt& a) {
  if (mode.is_strict()) return exp_upper_bound(BigInt(k) * a);
  BigInt ka = BigInt(k) * a;
  return BigInt(mode.coefficient) * boost::multiprecision::pow(ka, mode.exponent) + a + 1;
}

std::size_t SlopeFamily::max_bits() const {
  std::size_t bits = 0;
  for (const CFExpansion& cf : expansions) {
    for (const BigInt& a : cf.coeffs()) bits = std::max(bits, bit_length(a));
    for (long n = -1; n <= static_cast<long>(cf.convergent_depth()); ++n) {
      bits = std::max({bits, bit_length(cf.p(n)), bit_length(cf.q(n))});
    }
  }
  return bits;
}

Tuple default_dense_sequence(unsigned d, std::size_t k) {
  if (k == 0) throw std::invalid_argument("dense sequence is indexed from k = 1");
  return default_dense_prefix(d, k).back();
}

std::vector<Tuple> default_dense_prefix(unsigned d, std::size_t count) {
  std::vector<Tuple> out;
  out.reserve(count);
  const std::size_t width = d + 1;
  for (unsigned top = 1; out.size() < count; ++top) {
    // Odometer over [1, top]^width in lexicographic order, keeping tuples whose max is top.
    std::vector<unsigned> digits(width, 1);
    while (out.size() < count) {
      if (*std::max_element(digits.begin(), digits.end()) == top) {
        out.emplace_back(digits.begin(), digits.end());
      }
      std::size_t pos = width;
      while (pos > 0 && digits[pos - 1] == top) {
        digits[pos - 1] = 1;
        --pos;
      }
      if (pos == 0) break;
      ++digits[pos - 1];
    }
  }
  return out;
}

SlopeFamily generate_slope_family(unsigned d, const std::vector<Tuple>& u_seq, unsigned levels,
                                  const GrowthMode& mode, const GenerateOptions& options,
                                  SlopeFamily* partial) {
  if (u_seq.size() < levels) {
    throw std::invalid_argument("u sequence has " + std::to_string(u_seq.size()) +
                                " entries, need " + std::to_string(levels));
  }
  SlopeFamily family;
  family.d = d;
  family.mode = mode;
  family.expansions.assign(d + 1, CFExpansion{});
  for (CFExpansion& cf : family.expansions) cf.append(BigInt(1));

  const std::size_t tori = d + 1;
  for (unsigned k = 1; k <= levels; ++k) {
    const Tuple& u = u_seq[k - 1];
    validate_tuple(u, d, k);
    const long odd = 2 * static_cast<long>(k) - 1;

    LevelAudit audit;
    audit.k = k;
    audit.u = u;
    const BigInt umax = max_entry(u);

    // (i) and (ii): least m with m·u^i > k·max{a_{2k-1}^i, u} on every torus.
    audit.multiplier = 0;
    for (std::size_t i = 0; i < tori; ++i) {
      const BigInt& prev = family.expansions[i].a(static_cast<std::size_t>(odd));
      const BigInt bound = BigInt(k) * std::max(prev, umax);
      const BigInt need = bound / u[i] + 1;
      if (need > audit.multiplier) {
        audit.multiplier = need;
        audit.even_binding = i;
        audit.even_bound_from_u = umax > prev;
      }
    }

    std::vector<BigInt> a_even(tori), q_even(tori);
    for (std::size_t i = 0; i < tori; ++i) {
      const CFExpansion& cf = family.expansions[i];
      a_even[i] = audit.multiplier * u[i];
      q_even[i] = a_even[i] * cf.q(odd) + cf.q(odd - 1);
    }

    // (iii) and (iv): M = c·lcm(q_{2k}^i) with the least c meeting every bound.
    audit.lcm = q_even.front();
    for (std::size_t i = 1; i < tori; ++i) {
      audit.lcm = boost::multiprecision::lcm(audit.lcm, q_even[i]);
    }
    if (bit_length(audit.lcm) > options.bit_budget) {
      if (partial) *partial = family;
      throw BudgetExceeded(k, bit_length(audit.lcm), options.bit_budget);
    }
    audit.lcm_factor = 1;
    audit.odd_bounds.resize(tori);
    for (std::size_t i = 0; i < tori; ++i) {
      const BigInt x = BigInt(k) * a_even[i];
      if (mode.is_strict() && bit_length(x) > 62) {
        if (partial) *partial = family;
        throw BudgetExceeded(k, std::numeric_limits<std::size_t>::max(), options.bit_budget);
      }
      if (mode.is_strict() && exp_bits(x) > options.bit_budget + 64) {
        if (partial) *partial = family;
        throw BudgetExceeded(k, exp_bits(x) - 64, options.bit_budget);
      }
      audit.odd_bounds[i] = odd_lower_bound(mode, k, a_even[i]);
      // a_{2k+1}^i = c·lcm / q_{2k}^i >= bound  <=>  c >= bound·q_{2k}^i / lcm.
      const BigInt need = ceil_div(audit.odd_bounds[i] * q_even[i], audit.lcm);
      if (need > audit.lcm_factor) {
        audit.lcm_factor = need;
        audit.odd_binding = i;
      }
    }
    audit.common_product = audit.lcm_factor * audit.lcm;

    std::vector<BigInt> a_odd(tori);
    std::size_t bits = 0;
    for (std::size_t i = 0; i < tori; ++i) {
      a_odd[i] = audit.common_product / q_even[i];
      bits = std::max(bits, bit_length(a_odd[i] * q_even[i] + family.expansions[i].q(odd)));
    }
    if (bits > options.bit_budget) {
      if (partial) *partial = family;
      throw BudgetExceeded(k, bits, options.bit_budget);
    }

    for (std::size_t i = 0; i < tori; ++i) {
      family.expansions[i].append(a_even[i]);
      family.expansions[i].append(a_odd[i]);
    }
    family.u_seq.push_back(u);
    family.audit.push_back(std::move(audit));
  }
  if (partial) *partial = family;
  return family;
}

bool SlopesReport::exact_ok() const {
  if (!seed_ok) return false;
  for (const LevelReport& r : levels) {
    if (!(r.odd_q_equal && r.cond_i && r.cond_ii && r.cond_iii && r.cond_iv)) return false;
  }
  for (const ProductBoundRow& row : products) {
    if (!(row.lower_ok && row.upper_ok)) return false;
  }
  return true;
}

SlopesReport verify_lemma_slopes(const SlopeFamily& family) {
  SlopesReport report;
  const std::size_t tori = family.tori();
  auto flag = [&](const std::string& what) { report.violations.push_back(what); };

  report.seed_ok = true;
  for (std::size_t i = 0; i < tori; ++i) {
    if (family.torus(i).depth() == 0 || family.torus(i).a(1) != 1) {
      report.seed_ok = false;
      flag("seed: a_1^" + std::to_string(i) + " != 1");
    }
  }

  std::size_t depth = family.depth();
  for (std::size_t i = 1; i < tori; ++i) depth = std::min(depth, family.torus(i).depth());
  const unsigned levels = depth == 0 ? 0 : static_cast<unsigned>((depth - 1) / 2);

  for (unsigned k = 1; k <= levels; ++k) {
    LevelReport row;
    row.k = k;
    const std::size_t even = 2 * k, odd = 2 * k + 1;
    const Tuple* u = k <= family.u_seq.size() ? &family.u_seq[k - 1] : nullptr;
    const std::string tag = "level " + std::to_string(k) + ": ";

    row.odd_q_equal = true;
    row.cond_iv = true;
    row.cond_i = u != nullptr;
    row.cond_ii = u != nullptr && u->size() == tori;
    row.cond_iii = true;
    const CFExpansion& first = family.torus(0);
    const BigInt product0 = first.a(odd) * first.q(static_cast<long>(even));
    for (std::size_t i = 0; i < tori; ++i) {
      const CFExpansion& cf = family.torus(i);
      if (cf.q(static_cast<long>(odd)) != first.q(static_cast<long>(odd))) row.odd_q_equal = false;
      if (cf.a(odd) * cf.q(static_cast<long>(even)) != product0) row.cond_iv = false;
      if (row.cond_i) {
        const BigInt bound = BigInt(k) * std::max(cf.a(even - 1), max_entry(*u));
        if (!(cf.a(even) > bound)) row.cond_i = false;
      }
      try {
        if (cf.a(odd) < odd_lower_bound(family.mode, k, cf.a(even))) row.cond_iii = false;
      } catch (const std::exception&) {
        row.cond_iii = false;
      }
    }
    if (row.cond_ii) {
      const BigInt& a0 = first.a(even);
      if (a0 % (*u)[0] != 0) {
        row.cond_ii = false;
      } else {
        const BigInt m = a0 / (*u)[0];
        for (std::size_t i = 0; i < tori; ++i) {
          if (family.torus(i).a(even) != m * (*u)[i]) row.cond_ii = false;
        }
      }
    }
    if (!row.odd_q_equal) flag(tag + "q_{2k+1} differ across tori");
    if (!row.cond_i) flag(tag + "condition (i) fails");
    if (!row.cond_ii) flag(tag + "condition (ii) fails");
    if (!row.cond_iii) flag(tag + "condition (iii) fails");
    if (!row.cond_iv) flag(tag + "condition (iv) fails");

    row.q_ratio_gap = 0;
    row.log_a_ratio_gap = Interval(0L);
    for (std::size_t i = 0; i < tori; ++i) {
      for (std::size_t j = 0; j < tori; ++j) {
        if (i == j) continue;
        const CFExpansion& ci = family.torus(i);
        const CFExpansion& cj = family.torus(j);
        if (u != nullptr && row.cond_ii) {
          Rational r(ci.q(static_cast<long>(even)) * (*u)[j],
                     cj.q(static_cast<long>(even)) * (*u)[i]);
          Rational gap = boost::multiprecision::abs(r - 1);
          if (gap > row.q_ratio_gap) row.q_ratio_gap = gap;
        }
        Interval ratio = log_of(ci.a(odd)) / log_of(cj.a(odd));
        Interval gap = abs(ratio - Interval(1L));
        if (gap.hi() > row.log_a_ratio_gap.hi()) row.log_a_ratio_gap = gap;
      }
    }
    report.levels.push_back(std::move(row));
  }

  for (std::size_t i = 0; i < tori; ++i) {
    const CFExpansion& cf = family.torus(i);
    BigInt prod = 1, prod_plus = 1;
    for (std::size_t n = 1; n <= cf.depth(); ++n) {
      prod *= cf.a(n);
      prod_plus *= cf.a(n) + 1;
      ProductBoundRow row;
      row.torus = i;
      row.n = n;
      const BigInt& q = cf.q(static_cast<long>(n));
      row.lower_ok = q >= prod;
      row.upper_ok = q <= prod_plus;
      row.ratio = Interval::from_rational(Rational(q, prod));
      if (!row.lower_ok || !row.upper_ok) {
        flag("torus " + std::to_string(i) + " n=" + std::to_string(n) + ": q_n outside product bounds");
      }
      report.products.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace slitflow::contfrac
