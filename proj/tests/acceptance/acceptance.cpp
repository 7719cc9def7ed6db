// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "app/commands.hpp"
#include "oracles.hpp"
#include "slitflow/geodesic.hpp"
#include "slitflow/limitset.hpp"

#include <boost/integer/common_factor.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace slitflow;
using contfrac::CFExpansion;
using contfrac::GrowthMode;
using contfrac::SlopeFamily;
using surface::SlitSurface;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const SlopeFamily& scaled_family() {
  static const SlopeFamily fam =
      contfrac::generate_slope_family(2, contfrac::default_dense_prefix(2, 8), 8, GrowthMode::scaled());
  return fam;
}

const SlitSurface& scaled_surface() {
  static const SlitSurface s(scaled_family(), Rational(1, 100));
  return s;
}

const SlopeFamily& strict_family() {
  static const SlopeFamily fam =
      contfrac::generate_slope_family(2, contfrac::default_dense_prefix(2, 2), 2, GrowthMode::strict());
  return fam;
}

Outcome criterion1() {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> len(1, 30);
  std::size_t lists = 0, bad = 0;
  for (; lists < 1000; ++lists) {
    const auto coeffs = oracle::random_coeffs(rng, len(rng), 1000000);
    const auto cf = CFExpansion::from_coefficients(coeffs);
    const auto theta = cf.theta_interval();
    std::vector<BigInt> prefix;
    for (long n = 1; n <= static_cast<long>(coeffs.size()); ++n) {
      prefix.push_back(coeffs[n - 1]);
      const BigInt& a = coeffs[n - 1];
      bool ok = cf.p(n) == a * cf.p(n - 1) + cf.p(n - 2) && cf.q(n) == a * cf.q(n - 1) + cf.q(n - 2);
      ok = ok && Rational(cf.p(n), cf.q(n)) == oracle::direct_fraction(prefix);
      const BigInt det = cf.p(n) * cf.q(n - 1) - cf.p(n - 1) * cf.q(n);
      ok = ok && det == (n % 2 == 1 ? 1 : -1);
      ok = ok && boost::multiprecision::gcd(cf.p(n), cf.q(n)) == 1;
      if (!ok) ++bad;
    }
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      const auto gap = contfrac::approximation_gap(cf, n);
      for (const Rational& th : {theta.lo, theta.hi}) {
        const long m = static_cast<long>(n);
        if (!gap.contains(abs(Rational(cf.p(m)) - Rational(cf.q(m)) * th))) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(lists) + " lists, " + std::to_string(bad) + " violations"};
}

Outcome criterion2() {
  const auto strict_bad = oracle::level_violations(strict_family());
  const auto strict_rep = contfrac::verify_lemma_slopes(strict_family());
  bool odd_q = true;
  for (const auto& l : strict_rep.levels) odd_q = odd_q && l.odd_q_equal;
  const auto scaled_bad = oracle::level_violations(scaled_family());
  const auto rep = contfrac::verify_lemma_slopes(scaled_family());
  // q-ratio gap on tori 0 and 1, exact.
  std::vector<Rational> gaps;
  for (unsigned k = 1; k <= scaled_family().levels(); ++k) {
    const auto& u = scaled_family().u_seq[k - 1];
    const long n = 2 * static_cast<long>(k);
    const Rational r = Rational(scaled_family().torus(0).q(n), scaled_family().torus(1).q(n)) *
                       Rational(u[1], u[0]);
    gaps.push_back(abs(r - 1));
  }
  // Levels whose u entries and history coincide on tori 0 and 1 give exactly
  // zero; monotonicity is required from the first nonzero gap on.
  std::size_t from = 0;
  while (from < gaps.size() && gaps[from] == 0) ++from;
  bool decreasing = gaps.size() - from >= 3;
  for (std::size_t k = from + 1; k < gaps.size(); ++k) decreasing = decreasing && gaps[k] < gaps[k - 1];
  const bool small = gaps.back() < Rational(1, 20);
  auto log10_of = [](const Rational& x) {
    return x == 0 ? std::string("0")
                  : "1e" + fmt(static_cast<double>(static_cast<long>(msb(numerator(x))) -
                                                   static_cast<long>(msb(denominator(x)))) *
                               0.30103);
  };
  const bool pass = strict_bad.empty() && odd_q && strict_rep.exact_ok() && scaled_bad.empty() &&
                    rep.exact_ok() && decreasing && small;
  std::string detail = "strict K=2 violations " + std::to_string(strict_bad.size()) +
                       ", scaled K=8 violations " + std::to_string(scaled_bad.size()) +
                       ", q-ratio gap zero for k<=" + std::to_string(from) + ", then " +
                       log10_of(gaps[std::min(from, gaps.size() - 1)]) + " -> ~" + log10_of(gaps.back()) +
                       (decreasing ? " strictly decreasing" : " NOT decreasing");
  return {pass, detail};
}

Outcome criterion3() {
  const auto& s = scaled_surface();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coord(-50, 50);
  int checked = 0, bad = 0;
  double worst = 0;
  while (checked < 100) {
    const long p = coord(rng), q = coord(rng);
    if (p == 0 || q == 0 || std::gcd(p, q) != 1) continue;
    const std::size_t i = checked % s.tori();
    const auto c = surface::torus_curve(i, BigInt(p), BigInt(q));
    const double tb = geodesic::balanced_time(s, c).to_double();
    const long double grid = oracle::grid_argmin(s.theta(i).to_double(), c.p.convert_to<long double>(),
                                                 c.q.convert_to<long double>(), -20, 20);
    const double err = std::fabs(static_cast<double>(grid) - tb);
    worst = std::max(worst, err);
    if (err > 2e-6) ++bad;
    ++checked;
  }
  return {bad == 0, "100 curves, max |t_bal - grid argmin| = " + fmt(worst)};
}

Outcome criterion4() {
  const auto& s = scaled_surface();
  std::size_t outside = 0, total = 0;
  std::string tail;
  bool limit_ok = true;
  for (std::size_t i = 0; i < s.tori(); ++i) {
    const auto& cf = s.expansion(i);
    const long top = static_cast<long>(cf.depth()) - 1;
    for (long n = 1; n <= top; ++n) {
      const auto c = s.convergent_curve(i, n);
      const Interval v = surface::flat_length_squared(s, c, geodesic::balanced_time(s, c)) *
                         Interval::from_integer(cf.a(static_cast<std::size_t>(n + 1)));
      ++total;
      if (!(v.lo() >= 1 && v.hi() <= 4)) ++outside;
      if (n >= top - 1) {
        limit_ok = limit_ok && std::fabs(v.to_double() / 2 - 1) < 0.1;
        if (i == 0) tail += " " + fmt(v.to_double());
      }
    }
  }
  return {outside == 0 && limit_ok, std::to_string(total) + " levels in [1,4] except " +
                                        std::to_string(outside) + "; deepest two on torus 0:" + tail};
}

Outcome criterion5() {
  const SlitSurface s(strict_family(), Rational(1, 100));
  std::mt19937_64 rng(5);
  int mismatches = 0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, s.tori() - 1)(rng);
    const double t_max = geodesic::balanced_time(s, s.convergent_curve(i, 4)).to_double();
    const Real t(std::uniform_real_distribution<double>(0, t_max)(rng));
    const auto got = geodesic::shortest_torus_curve(s, i, Interval(t));
    const auto ref = oracle::exhaustive_shortest(s.theta(i).mid(), t, 1000);
    const Real len = surface::flat_length_squared(s, got, Interval(t)).mid();
    // Ties (e.g. (1,0) and (0,1) at t = 0) count as agreement.
    if (abs(len - ref.length_squared) > Real("1e-40") * ref.length_squared) {
      ++mismatches;
      std::cerr << "  mismatch at t=" << t << " torus " << i << ": " << surface::curve_literal(got)
                << " vs (" << ref.p << "," << ref.q << ")\n";
    }
  }
  return {mismatches == 0, "50 random times on strict K=2, " + std::to_string(mismatches) + " mismatches"};
}

Outcome criterion6() {
  const auto& s = scaled_surface();
  bool positive = true, decreasing = true, band = true;
  double lo_band = 1e300, hi_band = 0;
  for (std::size_t i = 0; i < s.tori(); ++i) {
    double prev = -1, bmin = 1e300, bmax = 0;
    for (long n = 1; n + 1 <= static_cast<long>(s.expansion(i).depth()); ++n) {
      const Interval tb = geodesic::balanced_time(s, s.convergent_curve(i, n));
      const auto h = geodesic::hyperbolic_surrogate(s, surface::Boundary{i}, tb);
      if (!h.reliable) continue;
      positive = positive && h.value.positive();
      const double v = h.value.to_double();
      if (prev >= 0) decreasing = decreasing && v < prev;
      prev = v;
      const double prod = (h.value * log_of(s.expansion(i).q(n))).to_double();
      bmin = std::min(bmin, prod);
      bmax = std::max(bmax, prod);
    }
    band = band && bmax > 0 && bmax <= 4 * bmin;
    lo_band = std::min(lo_band, bmin);
    hi_band = std::max(hi_band, bmax);
  }
  const auto rep = limitset::beta_decay_report(s, surface::parse_curve("G 0 1/0"),
                                               limitset::sample_times(s, 1, limitset::feasible_levels(s)));
  const double first = rep.rows.front().ratio.to_double();
  const double last = rep.rows.back().ratio.to_double();
  const bool decay = last < first / 2;
  return {positive && decreasing && band && decay,
          std::string("Hyp(beta) ") + (positive ? "positive" : "NOT positive") +
              (decreasing ? ", decreasing" : ", NOT decreasing") + ", Hyp*log q in [" + fmt(lo_band) +
              ", " + fmt(hi_band) + "], decay ratio " + fmt(first) + " -> " + fmt(last)};
}

Outcome criterion7() {
  const auto& s = scaled_surface();
  const auto rows = limitset::ratio_report(s, surface::parse_curve("T 0 1/1"), surface::parse_curve("T 1 1/1"),
                                           1, 8);
  std::vector<double> gaps;
  bool tail_reliable = true;
  std::string shown;
  for (const auto& r : rows) {
    gaps.push_back(r.gap_lhs_rhs.to_double());
    if (r.n + 3 > rows.back().n) tail_reliable = tail_reliable && r.reliable;
    shown += " " + fmt(gaps.back());
  }
  const bool pass = rows.size() == 8 && tail_reliable && trend_accepts(gaps, 0.0, 0.2);
  return {pass, "|LHS/RHS-1| n=1..8:" + shown};
}

Outcome criterion8() {
  const auto& s = scaled_surface();
  const unsigned top = limitset::feasible_levels(s);
  const unsigned first = app::first_reliable_level(s, top);
  if (first == 0) return {false, "no reliable probe"};
  std::vector<double> gaps;
  std::string shown;
  for (unsigned n = first; n <= top; ++n) {
    const auto probe = limitset::make_probe(s, n, {});
    double gap = 0;
    for (std::size_t i = 0; i < s.tori(); ++i) {
      for (std::size_t j = 0; j < s.tori(); ++j) {
        const Interval r =
            geodesic::collar_width(probe.pants_ext[i]) / geodesic::collar_width(probe.pants_ext[j]);
        gap = std::max(gap, std::fabs(r.to_double() - 1));
      }
    }
    gaps.push_back(gap);
    shown += " " + fmt(gap);
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < gaps.size(); ++k) decreasing = decreasing && gaps[k] < gaps[k - 1];
  return {decreasing && gaps.back() < 0.1,
          "width gap, reliable probes n=" + std::to_string(first) + ".." + std::to_string(top) + ":" + shown};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion9() {
  bool roundtrip = true;
  for (const SlopeFamily* fam : {&strict_family(), &scaled_family()}) {
    contfrac::FamilyFile f;
    f.family = *fam;
    const std::string text = contfrac::family_to_string(f);
    const auto back = contfrac::family_from_string(text);
    roundtrip = roundtrip && contfrac::family_to_string(back) == text;
    for (std::size_t i = 0; i < fam->tori(); ++i) roundtrip = roundtrip && back.family.torus(i) == fam->torus(i);
  }

  const fs::path base = fs::temp_directory_path() / "slitflow_acceptance";
  fs::remove_all(base);
  std::ostringstream sink;
  bool ran = true;
  for (const char* sub : {"a", "b"}) {
    app::RunConfig cfg;
    cfg.output_dir = (base / sub).string();
    ran = ran && app::cmd_generate(cfg, sink, sink) == app::kOk;
    ran = ran && app::cmd_limit_report(cfg, sink, sink) == app::kOk;
    cfg.curves = {"T 0 1/1", "B 2", "G 1 1/0"};
    cfg.times = "range(0,6,7)";
    ran = ran && app::cmd_trace(cfg, sink, sink) == app::kOk;
  }
  std::size_t files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(base / "a")) {
    ++files;
    if (slurp(entry.path()) != slurp(base / "b" / entry.path().filename())) ++differing;
  }
  fs::remove_all(base);
  return {roundtrip && ran && files > 0 && differing == 0,
          std::string("round trip ") + (roundtrip ? "exact" : "BROKEN") + ", " + std::to_string(files) +
              " output files, " + std::to_string(differing) + " differ between runs" +
              (ran ? "" : ", a command failed")};
}

}  // namespace

int main() {
  set_working_digits(120);
  const std::vector<std::pair<double, std::function<Outcome()>>> criteria = {
      {10, criterion1}, {60, criterion2}, {60, criterion3}, {0, criterion4}, {120, criterion5},
      {0, criterion6},  {0, criterion7},  {0, criterion8},  {0, criterion9}};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double limit = criteria[k].first;
    if (limit > 0 && secs >= limit) {
      o.pass = false;
      o.detail += "; over the " + fmt(limit) + " s budget";
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << k + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  ("
              << fmt(secs) << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
