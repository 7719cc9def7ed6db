#include "slitflow/limitset.hpp"

#include <json.hpp>
#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace slitflow::limitset {

namespace {

using geodesic::balanced_time;
using geodesic::collar_width;
using geodesic::hyperbolic_surrogate;
using geodesic::pants_length_estimate;
using surface::Boundary;
using surface::TorusCurve;

Interval relative_gap(const Interval& x, const Interval& y) { return abs(x / y - Interval(1L)); }

std::string half_width(const Interval& x) {
  Real half = x.width() / 2;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.3RUe", half.backend().data());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

void require_depth(const SlitSurface& s, unsigned n) {
  if (n == 0 || n > feasible_levels(s)) {
    throw contfrac::InsufficientDepth("probe level " + std::to_string(n) + " needs depth " +
                                      std::to_string(2 * n + 1));
  }
}

Interval intersection_sum(const std::vector<Curve>& curves, const Curve& gamma,
                          const std::vector<Interval>& factors) {
  Interval total;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    total += Interval::from_integer(surface::intersection_number(gamma, curves[i])) * factors[i];
  }
  return total;
}

}  // namespace

unsigned feasible_levels(const SlitSurface& s) {
  const std::size_t depth = s.family().depth();
  return depth == 0 ? 0 : static_cast<unsigned>((depth - 1) / 2);
}

SampleTime sample_time(const SlitSurface& s, unsigned n) {
  require_depth(s, n);
  SampleTime out;
  out.n = n;
  for (std::size_t i = 0; i < s.tori(); ++i) {
    out.balanced.push_back(balanced_time(s, s.convergent_curve(i, 2 * static_cast<long>(n))));
  }
  out.lo = out.balanced.front();
  out.hi = out.balanced.front();
  for (const Interval& t : out.balanced) {
    if (t.mid() < out.lo.mid()) out.lo = t;
    if (t.mid() > out.hi.mid()) out.hi = t;
  }
  out.t = (out.lo + out.hi) / Interval(2L);
  out.spread = abs(out.hi - out.lo);
  return out;
}

std::vector<Curve> pants_at(const SlitSurface& s, unsigned n) {
  std::vector<Curve> pants;
  for (std::size_t i = 0; i < s.tori(); ++i) {
    pants.emplace_back(s.convergent_curve(i, 2 * static_cast<long>(n)));
  }
  for (std::size_t i = 0; i < s.tori(); ++i) pants.emplace_back(Boundary{i});
  return pants;
}

std::vector<Interval> target_weights(const SlitSurface& s, unsigned n) {
  const auto& u_seq = s.family().u_seq;
  if (n == 0 || n > u_seq.size()) {
    throw contfrac::InsufficientDepth("no target tuple u_" + std::to_string(n));
  }
  std::vector<Interval> w;
  for (std::size_t i = 0; i < s.tori(); ++i) {
    w.push_back(Interval::from_integer(u_seq[n - 1][i]) * s.normalizer(i));
  }
  return w;
}

LimitProbe make_probe(const SlitSurface& s, unsigned n, const std::vector<Curve>& tests) {
  LimitProbe probe;
  probe.n = n;
  probe.time = sample_time(s, n);
  probe.pants = pants_at(s, n);
  for (const Curve& c : probe.pants) {
    const auto hyp = hyperbolic_surrogate(s, c, probe.time.t);
    probe.pants_ext.push_back(hyp.value);
    probe.reliable = probe.reliable && hyp.reliable;
  }
  probe.tests = tests;
  for (const Curve& g : tests) {
    probe.estimates.push_back(pants_length_estimate(s, g, probe.time.t, probe.pants));
  }
  probe.weights = target_weights(s, n);
  return probe;
}

std::vector<RatioRow> ratio_report(const SlitSurface& s, const Curve& gamma1, const Curve& gamma2,
                                   unsigned n_min, unsigned n_max) {
  for (const Curve* g : {&gamma1, &gamma2}) {
    if (std::holds_alternative<Boundary>(*g)) {
      throw InvalidTestCurve("ratio test curves must not be boundary curves, got " +
                             surface::curve_literal(*g));
    }
  }
  std::vector<RatioRow> rows;
  for (unsigned n = std::max(n_min, 1u); n <= n_max; ++n) {
    const LimitProbe probe = make_probe(s, n, {gamma1, gamma2});
    RatioRow row;
    row.n = n;
    row.t = probe.time.t;
    row.reliable = probe.reliable && probe.estimates[0].reliable && probe.estimates[1].reliable;
    row.lhs = probe.estimates[0].width_only / probe.estimates[1].width_only;
    row.lhs_twist = probe.estimates[0].with_twist / probe.estimates[1].with_twist;

    std::vector<Curve> alphas(probe.pants.begin(), probe.pants.begin() + s.tori());
    std::vector<Interval> log_a;
    for (std::size_t i = 0; i < s.tori(); ++i) {
      log_a.push_back(log_of(s.expansion(i).a(2 * n + 1)));
    }
    row.mid = intersection_sum(alphas, gamma1, log_a) / intersection_sum(alphas, gamma2, log_a);

    const surface::FoliationWeight fw = surface::foliation_weight(s);
    row.rhs = fw.pair(s, gamma1, probe.weights) / fw.pair(s, gamma2, probe.weights);

    row.gap_lhs_rhs = relative_gap(row.lhs, row.rhs);
    row.gap_lhs_mid = relative_gap(row.lhs, row.mid);
    row.gap_mid_rhs = relative_gap(row.mid, row.rhs);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Interval> sample_times(const SlitSurface& s, unsigned n_min, unsigned n_max) {
  std::vector<Interval> times;
  for (unsigned n = std::max(n_min, 1u); n <= n_max; ++n) times.push_back(sample_time(s, n).t);
  return times;
}

BetaDecayReport beta_decay_report(const SlitSurface& s, const Curve& gamma,
                                  const std::vector<Interval>& times) {
  const auto* bridge = std::get_if<surface::Bridge>(&gamma);
  if (!bridge) {
    throw InvalidTestCurve("beta decay needs a bridge curve, got " + surface::curve_literal(gamma));
  }
  const std::size_t i = bridge->torus;
  if (i >= s.tori()) throw InvalidTestCurve("bridge torus out of range");
  const Curve beta = Boundary{i};

  BetaDecayReport report;
  for (const Interval& t : times) {
    BetaDecayRow row;
    row.t = t;
    row.beta_intersection = surface::intersection_number(gamma, beta);
    const auto hb = hyperbolic_surrogate(s, beta, t);
    row.beta_contribution = Interval::from_integer(row.beta_intersection) *
                            (collar_width(hb.value) + geodesic::twist_data(s, beta, t).term);
    row.alpha = geodesic::shortest_torus_curve(s, i, t);
    row.alpha_intersection = surface::intersection_number(gamma, row.alpha);
    const auto ha = hyperbolic_surrogate(s, row.alpha, t);
    row.alpha_contribution = Interval::from_integer(row.alpha_intersection) *
                             (collar_width(ha.value) + geodesic::twist_data(s, row.alpha, t).term);
    row.reliable = hb.reliable && ha.reliable && row.alpha_intersection != 0;
    row.ratio = row.alpha_intersection == 0 ? Interval() : row.beta_contribution / row.alpha_contribution;
    report.rows.push_back(std::move(row));
  }

  const std::size_t m = report.rows.size();
  if (m >= 2) {
    Real mean_t = 0, mean_y = 0;
    for (const auto& r : report.rows) {
      mean_t += r.t.mid();
      mean_y += r.alpha_contribution.mid();
    }
    mean_t /= m;
    mean_y /= m;
    Real sxy = 0, sxx = 0;
    for (const auto& r : report.rows) {
      const Real dt = r.t.mid() - mean_t;
      sxy += dt * (r.alpha_contribution.mid() - mean_y);
      sxx += dt * dt;
    }
    report.alpha_slope = sxx > 0 ? Real(sxy / sxx) : Real(0);
  }
  return report;
}

std::vector<SweepRow> simplex_sweep(const SlitSurface& s, const std::vector<Curve>& panel,
                                    unsigned n_min, unsigned n_max) {
  std::vector<bool> covered(s.tori(), false);
  for (const Curve& c : panel) {
    if (!std::holds_alternative<TorusCurve>(c)) {
      throw IncompletePanel("sweep panel holds only torus curves, got " + surface::curve_literal(c));
    }
    const std::size_t i = surface::curve_torus(c);
    if (i >= s.tori()) throw IncompletePanel("panel curve on a missing torus");
    covered[i] = true;
  }
  for (std::size_t i = 0; i < s.tori(); ++i) {
    if (!covered[i]) throw IncompletePanel("panel has no curve on torus " + std::to_string(i));
  }

  const surface::FoliationWeight fw = surface::foliation_weight(s);
  std::vector<SweepRow> rows;
  for (unsigned n = std::max(n_min, 1u); n <= n_max; ++n) {
    const LimitProbe probe = make_probe(s, n, panel);
    SweepRow row;
    row.n = n;
    row.reliable = probe.reliable;
    Interval emp_total, tgt_total;
    for (std::size_t j = 0; j < panel.size(); ++j) {
      row.empirical.push_back(probe.estimates[j].width_only);
      row.target.push_back(fw.pair(s, panel[j], probe.weights));
      emp_total += row.empirical.back();
      tgt_total += row.target.back();
      row.reliable = row.reliable && probe.estimates[j].reliable;
    }
    for (std::size_t j = 0; j < panel.size(); ++j) {
      row.empirical[j] /= emp_total;
      row.target[j] /= tgt_total;
      const double gap = std::fabs((row.empirical[j].mid() - row.target[j].mid()).convert_to<double>());
      row.distance = std::max(row.distance, gap);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& rows, int digits) {
  out << "n,t,lhs,lhs_twist,mid,rhs,gap_lhs_rhs,gap_lhs_mid,gap_mid_rhs,reliable,±lhs\n";
  for (const auto& r : rows) {
    auto f = [digits](const Interval& x) { return format_real(x.mid(), digits); };
    out << r.n << ',' << f(r.t) << ',' << f(r.lhs) << ',' << f(r.lhs_twist) << ',' << f(r.mid)
        << ',' << f(r.rhs) << ',' << f(r.gap_lhs_rhs) << ',' << f(r.gap_lhs_mid) << ','
        << f(r.gap_mid_rhs) << ',' << (r.reliable ? 1 : 0) << ',' << half_width(r.lhs) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<Curve>& panel,
                     const std::vector<SweepRow>& rows, int digits) {
  out << "n,curve,empirical,target,reliable\n";
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < panel.size(); ++j) {
      out << r.n << ',' << surface::curve_literal(panel[j]) << ','
          << format_real(r.empirical[j].mid(), digits) << ','
          << format_real(r.target[j].mid(), digits) << ',' << (r.reliable ? 1 : 0) << '\n';
    }
  }
}

void write_decay_csv(std::ostream& out, const BetaDecayReport& report, int digits) {
  out << "t,beta_intersection,beta_contribution,alpha,alpha_intersection,alpha_contribution,"
         "ratio,reliable\n";
  for (const auto& r : report.rows) {
    out << format_real(r.t.mid(), digits) << ',' << r.beta_intersection.str() << ','
        << format_real(r.beta_contribution.mid(), digits) << ','
        << surface::curve_literal(r.alpha) << ',' << r.alpha_intersection.str() << ','
        << format_real(r.alpha_contribution.mid(), digits) << ','
        << format_real(r.ratio.mid(), digits) << ',' << (r.reliable ? 1 : 0) << '\n';
  }
}

void write_plot_data(std::ostream& out, const std::vector<std::pair<double, double>>& xy) {
  char buf[64];
  for (const auto& [x, y] : xy) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", x, y);
    out << buf;
  }
}

std::string summary_json(const std::vector<RatioRow>& ratios, const std::vector<SweepRow>& sweep,
                         const BetaDecayReport& decay, const std::string& mode) {
  using nlohmann::ordered_json;
  auto d = [](const Interval& x) { return x.to_double(); };
  ordered_json j;
  j["mode"] = mode;
  j["heuristic"] = mode != "strict";
  ordered_json rows = ordered_json::array();
  for (const auto& r : ratios) {
    rows.push_back({{"n", r.n},
                    {"t", d(r.t)},
                    {"gap_lhs_rhs", d(r.gap_lhs_rhs)},
                    {"gap_lhs_mid", d(r.gap_lhs_mid)},
                    {"gap_mid_rhs", d(r.gap_mid_rhs)},
                    {"reliable", r.reliable}});
  }
  j["ratio"] = rows;
  ordered_json sw = ordered_json::array();
  for (const auto& r : sweep) {
    sw.push_back({{"n", r.n}, {"distance", r.distance}, {"reliable", r.reliable}});
  }
  j["sweep"] = sw;
  ordered_json dec = ordered_json::array();
  for (const auto& r : decay.rows) {
    dec.push_back({{"t", d(r.t)}, {"ratio", d(r.ratio)}, {"reliable", r.reliable}});
  }
  j["beta_decay"] = dec;
  j["alpha_slope"] = format_real(decay.alpha_slope, 17);
  return j.dump(2);
}

}  // namespace slitflow::limitset
