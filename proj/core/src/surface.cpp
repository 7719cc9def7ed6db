#include "slitflow/surface.hpp"

#include <boost/integer/common_factor.hpp>

#include <sstream>
#include <tuple>

namespace slitflow::surface {

namespace {

std::pair<BigInt, BigInt> normalize_pair(const BigInt& p, const BigInt& q, const char* what) {
  if (p == 0 && q == 0) throw InvalidCurve(std::string(what) + " with (p, q) = (0, 0)");
  if (boost::multiprecision::gcd(p, q) != 1) {
    throw InvalidCurve(std::string(what) + " (" + p.str() + ", " + q.str() + ") is not primitive");
  }
  if (q < 0 || (q == 0 && p < 0)) return {-p, -q};
  return {p, q};
}

BigInt parse_signed(const std::string& s, const std::string& text) {
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos) {
    throw InvalidCurve("bad integer '" + s + "' in curve literal '" + text + "'");
  }
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

std::size_t parse_index(const std::string& s, const std::string& text) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidCurve("bad torus index '" + s + "' in curve literal '" + text + "'");
  }
  return static_cast<std::size_t>(std::stoul(s));
}

std::pair<BigInt, BigInt> parse_slope(const std::string& s, const std::string& text) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    throw InvalidCurve("expected p/q in curve literal '" + text + "'");
  }
  return {parse_signed(s.substr(0, slash), text), parse_signed(s.substr(slash + 1), text)};
}

// Kind rank for canonical ordering: T, B, G.
int kind_rank(const Curve& c) { return static_cast<int>(c.index()); }

BigInt det(const BigInt& p, const BigInt& q, const BigInt& p2, const BigInt& q2) {
  return abs(p * q2 - q * p2);
}

}  // namespace

TorusCurve torus_curve(std::size_t torus, const BigInt& p, const BigInt& q) {
  auto [np, nq] = normalize_pair(p, q, "torus curve");
  return {torus, std::move(np), std::move(nq)};
}

Bridge bridge_curve(std::size_t torus, const BigInt& p, const BigInt& q) {
  auto [np, nq] = normalize_pair(p, q, "bridge arc");
  return {torus, std::move(np), std::move(nq)};
}

Curve parse_curve(const std::string& text) {
  std::istringstream in(text);
  std::string kind, index, slope, extra;
  in >> kind >> index;
  if (kind.empty() || index.empty()) throw InvalidCurve("empty curve literal '" + text + "'");
  const std::size_t i = parse_index(index, text);
  if (kind == "B") {
    if (in >> extra) throw InvalidCurve("trailing text in curve literal '" + text + "'");
    return Boundary{i};
  }
  if (kind != "T" && kind != "G") throw InvalidCurve("unknown curve kind in '" + text + "'");
  if (!(in >> slope)) throw InvalidCurve("missing p/q in curve literal '" + text + "'");
  if (in >> extra) throw InvalidCurve("trailing text in curve literal '" + text + "'");
  auto [p, q] = parse_slope(slope, text);
  if (kind == "T") return torus_curve(i, p, q);
  return bridge_curve(i, p, q);
}

std::string curve_literal(const Curve& c) {
  return std::visit(
      [](const auto& x) -> std::string {
        using X = std::decay_t<decltype(x)>;
        const std::string i = std::to_string(x.torus);
        if constexpr (std::is_same_v<X, Boundary>) {
          return "B " + i;
        } else {
          const char* k = std::is_same_v<X, TorusCurve> ? "T " : "G ";
          return k + i + " " + x.p.str() + "/" + x.q.str();
        }
      },
      c);
}

std::size_t curve_torus(const Curve& c) {
  return std::visit([](const auto& x) { return x.torus; }, c);
}

bool curve_less(const Curve& a, const Curve& b) {
  auto key = [](const Curve& c) {
    BigInt p = 0, q = 0;
    if (const auto* t = std::get_if<TorusCurve>(&c)) p = t->p, q = t->q;
    if (const auto* g = std::get_if<Bridge>(&c)) p = g->p, q = g->q;
    return std::make_tuple(kind_rank(c), curve_torus(c), p, q);
  };
  return key(a) < key(b);
}

SlitSurface::SlitSurface(std::shared_ptr<const SlopeFamily> family, Rational s0)
    : family_(std::move(family)), s0_(std::move(s0)) {
  if (!family_ || family_->expansions.empty()) {
    throw std::invalid_argument("surface needs at least one torus");
  }
  if (!(s0_ > 0 && s0_ < Rational(1, 2))) {
    throw std::invalid_argument("slit length s0 must lie in (0, 1/2)");
  }
  for (std::size_t i = 0; i < family_->tori(); ++i) {
    const auto& cf = family_->torus(i);
    if (cf.depth() == 0) throw std::invalid_argument("torus " + std::to_string(i) + " has no coefficients");
    theta_.push_back(cf.theta_interval().enclosure());
    norm_.push_back(sqrt(Interval(1L) + square(theta_.back())));
  }
}

SlitSurface::SlitSurface(SlopeFamily family, Rational s0)
    : SlitSurface(std::make_shared<const SlopeFamily>(std::move(family)), std::move(s0)) {}

void SlitSurface::check_torus(std::size_t i) const {
  if (i >= tori()) {
    throw InvalidCurve("torus index " + std::to_string(i) + " out of range (d = " +
                       std::to_string(d()) + ")");
  }
}

Interval SlitSurface::h0(const TorusCurve& c) const {
  check_torus(c.torus);
  return abs(expansion(c.torus).linear_form_enclosure(c.p, -c.q)) / normalizer(c.torus);
}

Interval SlitSurface::v0(const TorusCurve& c) const {
  check_torus(c.torus);
  return abs(expansion(c.torus).linear_form_enclosure(c.q, c.p)) / normalizer(c.torus);
}

TorusCurve SlitSurface::convergent_curve(std::size_t i, long n) const {
  check_torus(i);
  const auto& cf = expansion(i);
  return torus_curve(i, cf.p(n), cf.q(n));
}

bool SlitSurface::slit_small_at(const Interval& t) const {
  for (std::size_t i = 0; i < tori(); ++i) {
    const long depth = static_cast<long>(expansion(i).depth());
    std::optional<TorusCurve> best;
    Interval best_len;
    for (long n = -1; n < depth; ++n) {
      TorusCurve c = convergent_curve(i, n);
      Interval len = flat_length_squared(*this, c, t);
      if (!best || len.mid() < best_len.mid()) {
        best = c;
        best_len = len;
      }
    }
    if (!(best_len.hi() <= 4)) return false;
    if (cylinder_geometry(*this, *best, t).degenerate) return false;
  }
  return true;
}

Interval flat_length_squared(const SlitSurface& s, const TorusCurve& c, const Interval& t) {
  const Interval et = exp(t);
  const Interval h = s.h0(c) * et;
  const Interval v = s.v0(c) / et;
  return square(h) + square(v);
}

Interval flat_length(const SlitSurface& s, const Curve& c, const Interval& t) {
  if (const auto* tc = std::get_if<TorusCurve>(&c)) return sqrt(flat_length_squared(s, *tc, t));
  const Interval slit = Interval(2L) * s.s0_enclosure() * exp(-t);
  if (const auto* b = std::get_if<Boundary>(&c)) {
    if (b->torus >= s.tori()) throw InvalidCurve("boundary index out of range");
    return slit;
  }
  const auto& g = std::get<Bridge>(c);
  return slit + sqrt(flat_length_squared(s, TorusCurve{g.torus, g.p, g.q}, t));
}

HorizontalVertical horizontal_vertical(const SlitSurface& s, const Curve& c, const Interval& t) {
  const auto* tc = std::get_if<TorusCurve>(&c);
  if (!tc) throw UnsupportedCurve("horizontal/vertical split needs a torus curve, got " + curve_literal(c));
  const Interval et = exp(t);
  return {s.h0(*tc) * et, s.v0(*tc) / et};
}

BigInt intersection_number(const Curve& a, const Curve& b) {
  if (curve_torus(a) != curve_torus(b)) return 0;
  const auto* ba = std::get_if<Boundary>(&a);
  const auto* bb = std::get_if<Boundary>(&b);
  if (ba && bb) return 0;
  if (ba || bb) {
    const Curve& other = ba ? b : a;
    return std::holds_alternative<Bridge>(other) ? BigInt(2) : BigInt(0);
  }
  auto pq = [](const Curve& c) {
    if (const auto* t = std::get_if<TorusCurve>(&c)) return std::make_pair(t->p, t->q);
    const auto& g = std::get<Bridge>(c);
    return std::make_pair(g.p, g.q);
  };
  const auto [p, q] = pq(a);
  const auto [p2, q2] = pq(b);
  return det(p, q, p2, q2);
}

Interval foliation_intersection(const SlitSurface& s, const Curve& c, std::size_t i) {
  if (std::holds_alternative<Boundary>(c) || curve_torus(c) != i) return Interval();
  if (const auto* t = std::get_if<TorusCurve>(&c)) return s.h0(*t);
  const auto& g = std::get<Bridge>(c);
  return s.h0(TorusCurve{g.torus, g.p, g.q});
}

CylinderGeometry cylinder_geometry(const SlitSurface& s, const TorusCurve& c, const Interval& t) {
  CylinderGeometry g;
  const Interval len2 = flat_length_squared(s, c, t);
  g.length = sqrt(len2);
  g.area = Interval(1L) - s.s0_enclosure() * s.h0(c);
  g.degenerate = !g.area.positive();
  if (g.degenerate) {
    g.height = Interval();
    g.modulus = Interval();
    return g;
  }
  g.height = g.area / g.length;
  g.modulus = g.area / len2;
  return g;
}

Interval FoliationWeight::pair(const SlitSurface& s, const Curve& c,
                               const std::vector<Interval>& weights) const {
  Interval total;
  for (std::size_t i = 0; i < weights.size() && i < s.tori(); ++i) {
    total += weights[i] * foliation_intersection(s, c, i);
  }
  return total;
}

FoliationWeight foliation_weight(const SlitSurface& s) {
  FoliationWeight w;
  for (std::size_t i = 0; i < s.tori(); ++i) w.normalizers.push_back(s.normalizer(i));
  return w;
}

}  // namespace slitflow::surface
