#pragma once

// Probes of the flow at the times t_n, n = 1 .. K.
//
// t_n is the midpoint of [min_i t_{2n}^i, max_i t_{2n}^i], where t_{2n}^i is
// the balanced time of α_{2n}^i. The pants decomposition at t_n is
// {α_{2n}^i} ∪ {β^i}; the target weight of torus i is w_n^i = u_n^i √(1+(θ^i)²).

#include "slitflow/geodesic.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace slitflow::limitset {

using geodesic::PantsEstimate;
using surface::Curve;
using surface::SlitSurface;

class InvalidTestCurve : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IncompletePanel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SampleTime {
  unsigned n = 0;
  Interval t;
  Interval lo;      // min_i t_{2n}^i
  Interval hi;      // max_i t_{2n}^i
  Interval spread;  // max_{i,j} |t_{2n}^i - t_{2n}^j|
  std::vector<Interval> balanced;  // t_{2n}^i
};

// Needs depth >= 2n + 1 on every torus.
SampleTime sample_time(const SlitSurface& s, unsigned n);

// Largest n with depth >= 2n + 1.
unsigned feasible_levels(const SlitSurface& s);

std::vector<Curve> pants_at(const SlitSurface& s, unsigned n);
std::vector<Interval> target_weights(const SlitSurface& s, unsigned n);

struct LimitProbe {
  unsigned n = 0;
  SampleTime time;
  std::vector<Curve> pants;
  std::vector<Interval> pants_ext;  // hyperbolic surrogate of each pants curve at t_n
  std::vector<Curve> tests;
  std::vector<PantsEstimate> estimates;
  std::vector<Interval> weights;
  bool reliable = true;  // every pants curve has Ext <= 0.1
};

LimitProbe make_probe(const SlitSurface& s, unsigned n, const std::vector<Curve>& tests);

struct RatioRow {
  unsigned n = 0;
  Interval t;
  Interval lhs;        // width-only pants estimates
  Interval lhs_twist;  // width + twist
  Interval mid;        // Σ I(γ1, α_{2n}^i) log a_{2n+1}^i / (same for γ2)
  Interval rhs;        // Σ w_n^i I(γ1, ν^i) / (same for γ2)
  Interval gap_lhs_rhs;  // |LHS/RHS - 1|
  Interval gap_lhs_mid;
  Interval gap_mid_rhs;
  bool reliable = true;
};

std::vector<RatioRow> ratio_report(const SlitSurface& s, const Curve& gamma1, const Curve& gamma2,
                                   unsigned n_min, unsigned n_max);

struct BetaDecayRow {
  Interval t;
  BigInt beta_intersection;
  Interval beta_contribution;  // width-only plus the unit twist term
  surface::TorusCurve alpha;   // shortest curve of the bridge's torus at t
  BigInt alpha_intersection;
  Interval alpha_contribution;
  Interval ratio;  // beta / alpha
  bool reliable = true;
};

struct BetaDecayReport {
  std::vector<BetaDecayRow> rows;
  // Least-squares slope of the α contribution against t.
  Real alpha_slope = 0;
};

// `gamma` must be a bridge curve.
BetaDecayReport beta_decay_report(const SlitSurface& s, const Curve& gamma,
                                  const std::vector<Interval>& times);
// Sample times t_1 .. t_K.
std::vector<Interval> sample_times(const SlitSurface& s, unsigned n_min, unsigned n_max);

struct SweepRow {
  unsigned n = 0;
  std::vector<Interval> empirical;  // pants estimates over the panel, normalized
  std::vector<Interval> target;     // Σ_i w_n^i I(γ, ν^i) over the panel, normalized
  double distance = 0;              // max |empirical - target| on midpoints
  bool reliable = true;
};

// The panel must hold torus curves and cover every torus.
std::vector<SweepRow> simplex_sweep(const SlitSurface& s, const std::vector<Curve>& panel,
                                    unsigned n_min, unsigned n_max);

// Outputs. Rows are emitted in the given order, which callers keep sorted by n.
void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& rows, int digits);
void write_sweep_csv(std::ostream& out, const std::vector<Curve>& panel,
                     const std::vector<SweepRow>& rows, int digits);
void write_decay_csv(std::ostream& out, const BetaDecayReport& report, int digits);
void write_plot_data(std::ostream& out, const std::vector<std::pair<double, double>>& xy);

// JSON object with per-n gap metrics of the ratio table and sweep.
std::string summary_json(const std::vector<RatioRow>& ratios, const std::vector<SweepRow>& sweep,
                         const BetaDecayReport& decay, const std::string& mode);

}  // namespace slitflow::limitset
