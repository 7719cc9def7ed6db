#pragma once

// Length analytics along the flow X_t.
//
// Torus curves: Ext ≈ 1/Mod(F), the flat cylinder alone. β^i: the one-sided
// expanding annulus, Ext ≈ 1/log((ℓ(α) - ℓ(β)) / (2ℓ(β))) with α the shortest
// curve of T^i. Hyperbolic lengths are never computed; Hyp is the extremal
// estimate itself, trusted only when it is at most 0.1. Twist bounds use a
// unit constant.

#include "slitflow/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slitflow::geodesic {

using surface::Boundary;
using surface::Bridge;
using surface::Curve;
using surface::SlitSurface;
using surface::TorusCurve;

// Hyp surrogates above this are excluded from verification statistics.
inline constexpr double kReliableExt = 0.1;

// ½ log(v_0 / h_0). Throws InsufficientDepth when h_0 is not bounded away
// from zero by the stored coefficients.
Interval balanced_time(const SlitSurface& s, const TorusCurve& c);

struct ActiveInterval {
  TorusCurve curve;
  Interval s_lower;
  Interval t_bal;
  Interval s_upper;
};

// Times where ℓ_t = 2, from H² y² - 4y + V² = 0 with y = e^{2t}. Empty when
// min ℓ = √(2 H V) >= 2.
std::optional<ActiveInterval> active_interval(const SlitSurface& s, const TorusCurve& c);

struct Estimate {
  Interval value;
  bool reliable = true;
};

// ℓ of the shortest curve of T^i at t; used by the β estimate.
Interval shortest_length(const SlitSurface& s, std::size_t torus, const Interval& t);

Estimate extremal_estimate(const SlitSurface& s, const Curve& c, const Interval& t);
// Value is the extremal estimate; reliable iff it is reliable and <= 0.1.
Estimate hyperbolic_surrogate(const SlitSurface& s, const Curve& c, const Interval& t);

// 2 asinh(1 / sinh(Hyp/2)).
Interval collar_width(const Interval& hyp);
// 2 log(4 / Hyp), the small-Hyp form of the width.
Interval collar_width_asymptote(const Interval& hyp);

struct TwistData {
  // I_α(ν⁻, ν⁺) surrogate: Mod(F) at the balanced time; 0 for β.
  Interval interaction;
  std::optional<Interval> t_bal;
  bool after_balance = false;
  // twist · Hyp with unit constant: 1 before balance, 1 + I·Hyp after.
  Interval term;
};
TwistData twist_data(const SlitSurface& s, const Curve& c, const Interval& t);

struct PantsTerm {
  Curve curve;
  BigInt intersection;
  Interval hyp;
  bool reliable = true;
  Interval width;
  Interval twist_term;
};

struct PantsEstimate {
  Interval width_only;
  Interval with_twist;
  BigInt budget;  // Σ I(γ, α), the size of the unresolved O-term
  bool reliable = true;
  std::vector<PantsTerm> terms;
};

// Σ_{α ∈ pants} I(γ, α)(width_t(α) + twist term). Pants curves disjoint from
// γ contribute nothing and need not be reliable.
PantsEstimate pants_length_estimate(const SlitSurface& s, const Curve& gamma, const Interval& t,
                                    const std::vector<Curve>& pants);

// Shortest curve of T^i at t among convergents and semiconvergents. Throws
// InsufficientDepth when a deeper convergent could still be shorter.
TorusCurve shortest_torus_curve(const SlitSurface& s, std::size_t torus, const Interval& t);

struct LengthReport {
  Curve curve;
  Interval t;
  Interval flat;
  Interval mod_f;  // 0 for β and bridges
  Interval ext;
  Interval hyp;
  Interval width;
  Interval width_asymptote;
  Interval twist_term;
  bool reliable = false;
  bool balanced = false;  // t at or after the balanced time (torus curves)
};

LengthReport length_report(const SlitSurface& s, const Curve& c, const Interval& t);

// "curve,t,flat,modF,ext,hyp,width,twist_bound,reliable,±"
std::string csv_header();
// The ± column is the largest enclosure half-width among the numeric fields.
std::string csv_row(const LengthReport& r, int digits);

}  // namespace slitflow::geodesic
