#include "commands.hpp"

#include "slitflow/limitset.hpp"

#include <boost/integer/common_factor.hpp>

#include <functional>

namespace slitflow::app {

namespace {

using contfrac::FamilyFile;
using surface::SlitSurface;

struct Tally {
  SuiteResult r;
  explicit Tally(std::string name) { r.name = std::move(name); }
  void check(bool ok) {
    ++r.checked;
    if (!ok) {
      ++r.failed;
      r.passed = false;
    }
  }
};

SuiteResult level_suite(const contfrac::SlopesReport& rep, const std::string& name,
                        const std::function<bool(const contfrac::LevelReport&)>& pick) {
  Tally t(name);
  for (const auto& l : rep.levels) t.check(pick(l));
  return t.r;
}

SuiteResult recurrence_suite(const contfrac::SlopeFamily& fam) {
  Tally t("recurrence, determinant and coprimality");
  for (const auto& cf : fam.expansions) {
    for (long n = 1; n <= static_cast<long>(cf.depth()); ++n) {
      const BigInt& a = cf.a(static_cast<std::size_t>(n));
      const BigInt det = cf.p(n) * cf.q(n - 1) - cf.p(n - 1) * cf.q(n);
      const BigInt sign = (n % 2 == 1) ? 1 : -1;
      t.check(cf.q(n) == a * cf.q(n - 1) + cf.q(n - 2) && cf.p(n) == a * cf.p(n - 1) + cf.p(n - 2) &&
              det == sign && boost::multiprecision::gcd(cf.p(n), cf.q(n)) == 1);
    }
  }
  return t.r;
}

SuiteResult approximation_suite(const contfrac::SlopeFamily& fam) {
  Tally t("approximation gap and bracketing");
  for (const auto& cf : fam.expansions) {
    const auto theta = cf.theta_interval();
    for (std::size_t n = 0; n + 1 <= cf.depth(); ++n) {
      const auto gap = contfrac::approximation_gap(cf, n);
      const long m = static_cast<long>(n);
      bool ok = true;
      for (const Rational& th : {theta.lo, theta.hi}) {
        const Rational e = abs(Rational(cf.p(m)) - Rational(cf.q(m)) * th);
        ok = ok && gap.contains(e);
        // Even convergents sit below θ, odd ones above.
        const Rational conv(cf.p(m), cf.q(m));
        ok = ok && (n % 2 == 0 ? conv <= th : conv >= th);
      }
      t.check(ok);
    }
  }
  return t.r;
}

SuiteResult products_suite(const contfrac::SlopesReport& rep) {
  Tally t("q_n against products of coefficients");
  for (const auto& p : rep.products) t.check(p.lower_ok && p.upper_ok);
  return t.r;
}

// α_n^i for n = 1 .. depth-1-skip_last, with the reliability of Ext at the
// balanced time.
template <typename Fn>
void for_convergents(const SlitSurface& s, long skip_last, Fn&& fn) {
  for (std::size_t i = 0; i < s.tori(); ++i) {
    for (long n = 1; n + 1 + skip_last <= static_cast<long>(s.expansion(i).depth()); ++n) {
      const auto c = s.convergent_curve(i, n);
      const Interval tb = geodesic::balanced_time(s, c);
      const auto hyp = geodesic::hyperbolic_surrogate(s, c, tb);
      fn(i, n, c, tb, hyp.reliable);
    }
  }
}

SuiteResult balance_suite(const SlitSurface& s) {
  Tally t("balance identity and minimality");
  // A check fails only when the enclosures certainly contradict it.
  for_convergents(s, 0, [&](std::size_t, long, const auto& c, const Interval& tb, bool) {
    const auto hv = surface::horizontal_vertical(s, c, tb);
    bool ok = (hv.h - hv.v).contains_zero();
    const Interval at = surface::flat_length_squared(s, c, tb);
    for (const char* d : {"0.01", "0.1", "1"}) {
      const Interval delta{Real(d)};
      ok = ok && !surface::flat_length_squared(s, c, tb + delta).certainly_less(at);
      ok = ok && !surface::flat_length_squared(s, c, tb - delta).certainly_less(at);
    }
    t.check(ok);
  });
  return t.r;
}

SuiteResult flat_law_suite(const SlitSurface& s) {
  Tally t("flat length law at balanced time");
  std::vector<std::vector<double>> reliable_values(s.tori());
  for_convergents(s, 0, [&](std::size_t i, long n, const auto& c, const Interval& tb, bool rel) {
    const Interval v = surface::flat_length_squared(s, c, tb) *
                       Interval::from_integer(s.expansion(i).a(static_cast<std::size_t>(n + 1)));
    t.check(v.lo() >= 1 && v.hi() <= 4);
    if (rel) reliable_values[i].push_back(v.to_double());
  });
  std::size_t used = 0;
  for (const auto& vals : reliable_values) {
    for (std::size_t k = vals.size() >= 2 ? vals.size() - 2 : 0; k < vals.size(); ++k) {
      t.check(std::fabs(vals[k] / 2 - 1) < 0.1);
      ++used;
    }
  }
  if (used == 0) t.r.note = "no reliable level for the limit check";
  return t.r;
}

SuiteResult width_suite(const SlitSurface& s) {
  Tally t("collar width against its asymptote");
  std::vector<Interval> hyps;
  for (int e = 2; e <= 30; ++e) hyps.push_back(Interval(Real(pow(Real(10), -e))));
  for (unsigned n = 1; n <= limitset::feasible_levels(s); ++n) {
    for (const auto& h : limitset::make_probe(s, n, {}).pants_ext) hyps.push_back(h);
  }
  for (const auto& h : hyps) {
    if (!(h.hi() < Real("0.01"))) continue;
    const Interval ratio = geodesic::collar_width(h) / geodesic::collar_width_asymptote(h);
    t.check(abs(ratio - Interval(1L)).hi() < Real("0.01"));
  }
  return t.r;
}

SuiteResult beta_suite(const SlitSurface& s) {
  Tally t("boundary surrogate decay");
  for (std::size_t i = 0; i < s.tori(); ++i) {
    std::vector<Real> seq;
    for (long n = 1; n + 1 <= static_cast<long>(s.expansion(i).depth()); ++n) {
      const Interval tb = geodesic::balanced_time(s, s.convergent_curve(i, n));
      const auto h = geodesic::hyperbolic_surrogate(s, surface::Boundary{i}, tb);
      if (!h.reliable) continue;
      t.check(h.value.positive());
      if (!seq.empty()) t.check(h.value.mid() < seq.back());
      seq.push_back(h.value.mid());
    }
  }
  if (t.r.checked == 0) t.r.note = "no reliable level";
  return t.r;
}

SuiteResult probe_suite(const SlitSurface& s) {
  Tally t("probe reliability and collar equivalence");
  const unsigned top = limitset::feasible_levels(s);
  const unsigned first = top == 0 ? 0 : first_reliable_level(s, top);
  if (first == 0) {
    t.r.note = "no reliable probe";
    return t.r;
  }
  double prev = -1;
  for (unsigned n = first; n <= top; ++n) {
    const auto probe = limitset::make_probe(s, n, {});
    t.check(probe.reliable);
    double gap = 0;
    for (std::size_t i = 0; i < s.tori(); ++i) {
      for (std::size_t j = 0; j < s.tori(); ++j) {
        const Interval r = geodesic::collar_width(probe.pants_ext[i]) /
                           geodesic::collar_width(probe.pants_ext[j]);
        gap = std::max(gap, std::fabs(r.to_double() - 1));
      }
    }
    if (prev >= 0) t.check(gap <= prev);
    prev = gap;
  }
  t.r.note = "levels " + std::to_string(first) + ".." + std::to_string(top);
  return t.r;
}

SuiteResult roundtrip_suite(const FamilyFile& file) {
  Tally t("serialization round trip");
  const std::string text = contfrac::family_to_string(file);
  t.check(contfrac::family_to_string(contfrac::family_from_string(text)) == text);
  return t.r;
}

}  // namespace

std::vector<SuiteResult> run_verify_suites(const FamilyFile& file) {
  const auto& fam = file.family;
  const auto rep = contfrac::verify_lemma_slopes(fam);
  std::vector<SuiteResult> out;
  {
    Tally seed("seed a_1 = 1");
    seed.check(rep.seed_ok);
    out.push_back(seed.r);
  }
  out.push_back(level_suite(rep, "condition (i)", [](const auto& l) { return l.cond_i; }));
  out.push_back(level_suite(rep, "condition (ii)", [](const auto& l) { return l.cond_ii; }));
  out.push_back(level_suite(rep, "condition (iii)", [](const auto& l) { return l.cond_iii; }));
  out.push_back(level_suite(rep, "condition (iv)", [](const auto& l) { return l.cond_iv; }));
  out.push_back(level_suite(rep, "odd q equality", [](const auto& l) { return l.odd_q_equal; }));
  out.push_back(products_suite(rep));
  out.push_back(recurrence_suite(fam));
  out.push_back(approximation_suite(fam));
  out.push_back(roundtrip_suite(file));

  const SlitSurface s(fam, file.s0);
  out.push_back(balance_suite(s));
  out.push_back(flat_law_suite(s));
  out.push_back(width_suite(s));
  out.push_back(beta_suite(s));
  out.push_back(probe_suite(s));
  return out;
}

}  // namespace slitflow::app
