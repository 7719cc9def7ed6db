#include "slitflow/geodesic.hpp"

#include <mpfr.h>

#include <algorithm>

namespace slitflow::geodesic {

namespace {

using contfrac::InsufficientDepth;

// Largest half-width among a set of enclosures.
Real max_half_width(std::initializer_list<const Interval*> xs) {
  Real best = 0;
  for (const Interval* x : xs) best = std::max(best, Real(x->width() / 2));
  return best;
}

BigInt floor_to_integer(const Real& x) {
  BigInt z;
  mpfr_get_z(z.backend().data(), x.backend().data(), MPFR_RNDD);
  return z;
}

struct SignedParts {
  Interval h;  // e^t (p - θq) / √(1+θ²)
  Interval v;  // e^{-t} (q + θp) / √(1+θ²)
};

SignedParts signed_parts(const SlitSurface& s, std::size_t i, const BigInt& p, const BigInt& q,
                         const Interval& et) {
  const auto& cf = s.expansion(i);
  const Interval& n = s.normalizer(i);
  return {cf.linear_form_enclosure(p, -q) * et / n, cf.linear_form_enclosure(q, p) / (et * n)};
}

}  // namespace

Interval balanced_time(const SlitSurface& s, const TorusCurve& c) {
  const Interval h = s.h0(c);
  if (!h.positive()) {
    throw InsufficientDepth("horizontal length of " + surface::curve_literal(c) +
                            " is not resolved by the stored coefficients");
  }
  const Interval v = s.v0(c);
  if (!v.positive()) throw surface::InvalidCurve("vanishing vertical length");
  return log(v / h) / Interval(2L);
}

std::optional<ActiveInterval> active_interval(const SlitSurface& s, const TorusCurve& c) {
  const Interval t_bal = balanced_time(s, c);
  const Interval h = s.h0(c);
  const Interval v = s.v0(c);
  const Interval hv = h * v;
  const Interval disc = Interval(4L) - square(hv);
  if (!disc.positive()) return std::nullopt;
  const Interval root = sqrt(disc);
  // Lower root in the cancellation-free form V² / (2 + √disc).
  const Interval y_lo = square(v) / (Interval(2L) + root);
  const Interval y_hi = (Interval(2L) + root) / square(h);
  return ActiveInterval{c, log(y_lo) / Interval(2L), t_bal, log(y_hi) / Interval(2L)};
}

TorusCurve shortest_torus_curve(const SlitSurface& s, std::size_t torus, const Interval& t) {
  if (torus >= s.tori()) throw surface::InvalidCurve("torus index out of range");
  const auto& cf = s.expansion(torus);
  const long depth = static_cast<long>(cf.depth());
  const Interval et = exp(t);

  std::optional<TorusCurve> best;
  Interval best_len;
  auto consider = [&](const BigInt& p, const BigInt& q, const SignedParts& parts) {
    const Interval len = square(parts.h) + square(parts.v);
    if (!best || len.mid() < best_len.mid()) {
      best = surface::torus_curve(torus, p, q);
      best_len = len;
    }
  };

  std::optional<SignedParts> prev;
  for (long n = -1; n < depth; ++n) {
    const BigInt& p = cf.p(n);
    const BigInt& q = cf.q(n);
    SignedParts cur = signed_parts(s, torus, p, q, et);
    consider(p, q, cur);
    if (prev && n + 1 <= depth) {
      // Semiconvergents α_{n-1} + j α_n, 0 < j < a_{n+1}; ℓ² is a quadratic in j.
      const BigInt& a_next = cf.a(static_cast<std::size_t>(n + 1));
      if (a_next > 1) {
        const Interval A = square(cur.h) + square(cur.v);
        const Interval B = prev->h * cur.h + prev->v * cur.v;
        const Real j_star = Real(-B.mid() / A.mid());
        BigInt j0 = floor_to_integer(j_star);
        for (BigInt j : {j0, BigInt(j0 + 1)}) {
          j = std::clamp(j, BigInt(1), BigInt(a_next - 1));
          const BigInt sp = cf.p(n - 1) + j * p;
          const BigInt sq = cf.q(n - 1) + j * q;
          const Interval jj = Interval::from_integer(j);
          consider(sp, sq, {prev->h + jj * cur.h, prev->v + jj * cur.v});
        }
      }
    }
    prev = cur;
  }

  // Every vector not examined has q >= q_N, hence v_t >= e^{-t} q_N / √(1+θ²).
  const Interval floor_len = Interval::from_integer(cf.q(depth)) / (et * s.normalizer(torus));
  if (!(best_len.hi() < square(floor_len).lo())) {
    throw InsufficientDepth("shortest curve of torus " + std::to_string(torus) +
                            " at this time needs more coefficients");
  }
  return *best;
}

Interval shortest_length(const SlitSurface& s, std::size_t torus, const Interval& t) {
  return sqrt(surface::flat_length_squared(s, shortest_torus_curve(s, torus, t), t));
}

Estimate extremal_estimate(const SlitSurface& s, const Curve& c, const Interval& t) {
  if (const auto* tc = std::get_if<TorusCurve>(&c)) {
    const auto cyl = surface::cylinder_geometry(s, *tc, t);
    if (cyl.degenerate) return {square(cyl.length), false};
    return {Interval(1L) / cyl.modulus, true};
  }
  if (const auto* b = std::get_if<Boundary>(&c)) {
    const Interval beta = surface::flat_length(s, c, t);
    const Interval alpha = shortest_length(s, b->torus, t);
    const Interval ratio = (alpha - beta) / (Interval(2L) * beta);
    if (!(ratio.lo() > 1)) return {Interval(1L), false};
    return {Interval(1L) / log(ratio), true};
  }
  const Interval len = surface::flat_length(s, c, t);
  return {square(len) / s.total_area(), false};
}

Estimate hyperbolic_surrogate(const SlitSurface& s, const Curve& c, const Interval& t) {
  Estimate e = extremal_estimate(s, c, t);
  e.reliable = e.reliable && e.value.hi() <= kReliableExt;
  return e;
}

Interval collar_width(const Interval& hyp) {
  return Interval(2L) * asinh(Interval(1L) / sinh(hyp / Interval(2L)));
}

Interval collar_width_asymptote(const Interval& hyp) {
  return Interval(2L) * log(Interval(4L) / hyp);
}

TwistData twist_data(const SlitSurface& s, const Curve& c, const Interval& t) {
  TwistData out;
  out.term = Interval(1L);
  const auto* tc = std::get_if<TorusCurve>(&c);
  if (!tc) return out;
  const Interval tb = balanced_time(s, *tc);
  out.t_bal = tb;
  out.interaction = surface::cylinder_geometry(s, *tc, tb).modulus;
  out.after_balance = t.mid() > tb.mid();
  if (out.after_balance) {
    out.term = Interval(1L) + out.interaction * hyperbolic_surrogate(s, c, t).value;
  }
  return out;
}

PantsEstimate pants_length_estimate(const SlitSurface& s, const Curve& gamma, const Interval& t,
                                    const std::vector<Curve>& pants) {
  PantsEstimate out;
  out.budget = 0;
  for (const Curve& alpha : pants) {
    BigInt i = surface::intersection_number(gamma, alpha);
    if (i == 0) continue;
    PantsTerm term{alpha, i, {}, true, {}, {}};
    const Estimate hyp = hyperbolic_surrogate(s, alpha, t);
    term.hyp = hyp.value;
    term.reliable = hyp.reliable;
    term.width = collar_width(hyp.value);
    term.twist_term = twist_data(s, alpha, t).term;
    const Interval weight = Interval::from_integer(i);
    out.width_only += weight * term.width;
    out.with_twist += weight * (term.width + term.twist_term);
    out.budget += i;
    out.reliable = out.reliable && term.reliable;
    out.terms.push_back(std::move(term));
  }
  return out;
}

LengthReport length_report(const SlitSurface& s, const Curve& c, const Interval& t) {
  LengthReport r;
  r.curve = c;
  r.t = t;
  r.flat = surface::flat_length(s, c, t);
  if (const auto* tc = std::get_if<TorusCurve>(&c)) {
    const auto cyl = surface::cylinder_geometry(s, *tc, t);
    r.mod_f = cyl.modulus;
    try {
      r.balanced = t.mid() >= balanced_time(s, *tc).mid();
    } catch (const InsufficientDepth&) {
      r.balanced = false;
    }
  }
  const Estimate hyp = hyperbolic_surrogate(s, c, t);
  r.ext = hyp.value;
  r.hyp = hyp.value;
  r.reliable = hyp.reliable;
  r.width = collar_width(hyp.value);
  r.width_asymptote = collar_width_asymptote(hyp.value);
  r.twist_term = twist_data(s, c, t).term;
  return r;
}

std::string csv_header() { return "curve,t,flat,modF,ext,hyp,width,twist_bound,reliable,±"; }

std::string csv_row(const LengthReport& r, int digits) {
  auto f = [digits](const Interval& x) { return format_real(x.mid(), digits); };
  const Real half =
      max_half_width({&r.flat, &r.mod_f, &r.ext, &r.hyp, &r.width, &r.twist_term});
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.3RUe", half.backend().data());
  std::string pm(buf);
  mpfr_free_str(buf);
  return surface::curve_literal(r.curve) + "," + f(r.t) + "," + f(r.flat) + "," + f(r.mod_f) +
         "," + f(r.ext) + "," + f(r.hyp) + "," + f(r.width) + "," + f(r.twist_term) + "," +
         (r.reliable ? "1" : "0") + "," + pm;
}

}  // namespace slitflow::geodesic
