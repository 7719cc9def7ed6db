#include "oracles.hpp"

#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

Rational direct_fraction(const std::vector<BigInt>& coeffs) {
  Rational x = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) x = Rational(1) / (Rational(*it) + x);
  return x;
}

long double flat_length_squared(long double theta, long double p, long double q, long double t) {
  const long double v = q + theta * p;
  const long double h = p - theta * q;
  return (std::exp(-2 * t) * v * v + std::exp(2 * t) * h * h) / (1 + theta * theta);
}

long double grid_argmin(long double theta, long double p, long double q, long double lo,
                        long double hi) {
  auto scan = [&](long double a, long double b, long double step) {
    long double best_t = a;
    long double best = std::numeric_limits<long double>::infinity();
    const long steps = std::lround((b - a) / step);
    for (long k = 0; k <= steps; ++k) {
      const long double t = a + step * k;
      const long double f = flat_length_squared(theta, p, q, t);
      if (f < best) {
        best = f;
        best_t = t;
      }
    }
    return best_t;
  };
  const long double coarse = scan(lo, hi, 1e-3L);
  return scan(coarse - 2e-3L, coarse + 2e-3L, 1e-6L);
}

LatticeMin exhaustive_shortest(const Real& theta, const Real& t, long box) {
  const Real e2 = exp(2 * t);
  const Real em2 = exp(-2 * t);
  const Real norm = 1 + theta * theta;
  auto len2 = [&](const Real& p, const Real& q) {
    const Real v = q + theta * p;
    const Real h = p - theta * q;
    return Real((em2 * v * v + e2 * h * h) / norm);
  };
  LatticeMin best{0, 0, Real(-1)};
  for (long q = -box; q <= box; ++q) {
    // d/dp of em2 (q + θp)² + e2 (p - θq)² vanishes at p* below.
    const Real qq(q);
    const Real p_star = (e2 * theta * qq - em2 * theta * qq) / (em2 * theta * theta + e2);
    const long base = static_cast<long>(floor(p_star).convert_to<double>());
    for (long p = base - 1; p <= base + 2; ++p) {
      if (std::labs(p) > box || (p == 0 && q == 0)) continue;
      const Real l = len2(Real(p), qq);
      if (best.length_squared < 0 || l < best.length_squared) best = {p, q, l};
    }
    // p clipped to the box edge when the minimizer lies outside it.
    for (long p : {-box, box}) {
      const Real l = len2(Real(p), qq);
      if (l < best.length_squared) best = {p, q, l};
    }
  }
  return best;
}

LatticeMin exhaustive_shortest_double(double theta, double t, long box) {
  const double e2 = std::exp(2 * t), em2 = std::exp(-2 * t), norm = 1 + theta * theta;
  double best = std::numeric_limits<double>::infinity();
  long bp = 0, bq = 0;
  for (long q = -box; q <= box; ++q) {
    for (long p = -box; p <= box; ++p) {
      if (p == 0 && q == 0) continue;
      const double v = q + theta * p, h = p - theta * q;
      const double l = (em2 * v * v + e2 * h * h) / norm;
      if (l < best) {
        best = l;
        bp = p;
        bq = q;
      }
    }
  }
  return {bp, bq, Real(best)};
}

std::vector<BigInt> random_coeffs(std::mt19937_64& rng, std::size_t length, unsigned long max_entry) {
  std::uniform_int_distribution<unsigned long> dist(1, max_entry);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < length; ++i) out.emplace_back(dist(rng));
  return out;
}

std::vector<std::string> level_violations(const slitflow::contfrac::SlopeFamily& fam) {
  using slitflow::ScopedDigits;
  std::vector<std::string> bad;
  auto fail = [&](unsigned k, const std::string& what) {
    bad.push_back("level " + std::to_string(k) + ": " + what);
  };
  const std::size_t tori = fam.tori();
  for (unsigned k = 1; k <= fam.levels(); ++k) {
    const auto& u = fam.u_seq[k - 1];
    const std::size_t even = 2 * k, odd = 2 * k + 1;
    const long le = static_cast<long>(even), lo = static_cast<long>(odd);

    const BigInt m = fam.torus(0).a(even) / u[0];
    const BigInt u_max = *std::max_element(u.begin(), u.end());
    bool m_tight = (m == 1);
    for (std::size_t i = 0; i < tori; ++i) {
      const auto& cf = fam.torus(i);
      if (cf.a(even) != m * u[i]) fail(k, "(ii) on torus " + std::to_string(i));
      const BigInt bound = BigInt(k) * std::max(cf.a(even - 1), u_max);
      if (!(cf.a(even) > bound)) fail(k, "(i) on torus " + std::to_string(i));
      if ((m - 1) * u[i] <= bound) m_tight = true;
    }
    if (!m_tight) fail(k, "multiplier not minimal");

    const BigInt M = fam.torus(0).a(odd) * fam.torus(0).q(le);
    BigInt l = 1;
    for (std::size_t i = 0; i < tori; ++i) l = boost::multiprecision::lcm(l, fam.torus(i).q(le));
    if (M % l != 0) {
      fail(k, "common product not a multiple of the lcm");
      continue;
    }
    const BigInt c = M / l;
    bool c_tight = (c == 1);
    for (std::size_t i = 0; i < tori; ++i) {
      const auto& cf = fam.torus(i);
      if (cf.a(odd) * cf.q(le) != M) fail(k, "(iv) on torus " + std::to_string(i));
      if (cf.q(lo) != fam.torus(0).q(lo)) fail(k, "odd q differs on torus " + std::to_string(i));
      const BigInt smaller = (c - 1) * l / cf.q(le);
      const BigInt ka = BigInt(k) * cf.a(even);
      if (fam.mode.is_strict()) {
        // a > exp(k a_{2k}) compared through logarithms.
        ScopedDigits g(200);
        if (!(log(Real(cf.a(odd))) > Real(ka))) fail(k, "(iii) on torus " + std::to_string(i));
        if (c > 1 && log(Real(smaller)) <= Real(ka)) c_tight = true;
      } else {
        const BigInt g = BigInt(fam.mode.coefficient) * pow(ka, fam.mode.exponent) + cf.a(even);
        if (!(cf.a(odd) > g)) fail(k, "(iii) on torus " + std::to_string(i));
        if (smaller <= g) c_tight = true;
      }
    }
    if (!c_tight) fail(k, "lcm factor not minimal");
  }
  return bad;
}

Real golden_conjugate() { return (sqrt(Real(5)) - 1) / 2; }
Real silver_conjugate() { return sqrt(Real(2)) - 1; }

}  // namespace oracle
