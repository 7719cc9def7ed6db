#pragma once

// The slit-torus surface: d+1 unit-area square tori T^0 .. T^d, torus i with
// vertical direction of slope θ^i, glued in a cycle i -> i+1 along vertical
// slits of flat length s0. Where the slits sit is left abstract; nothing here
// depends on it.
//
// Under the flow X_t a saddle-free vector (p, q) in T^i has
//   h_t = e^t |p - θq| / √(1+θ²),   v_t = e^{-t} |q + θp| / √(1+θ²),
// and flat length ℓ_t² = h_t² + v_t².
//
// Cylinder band: the slit is a vertical segment of length s0. A closed
// geodesic in direction (p, q) sweeps the torus; the band of parallel
// geodesics hitting the slit has area s0 · h_0, the cross product of the slit
// and the core vector. The flow has determinant one, so that area is the same
// at every t and the maximal cylinder has area 1 - s0 · h_0.

#include "slitflow/slope_family.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace slitflow::surface {

using contfrac::SlopeFamily;

class InvalidCurve : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedCurve : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Simple closed curve in T^i with homology class ±(p, q), gcd(p, q) = 1.
// Stored with q > 0, or q = 0 and p = 1.
struct TorusCurve {
  std::size_t torus = 0;
  BigInt p;
  BigInt q;

  friend bool operator==(const TorusCurve&, const TorusCurve&) = default;
};

// β^i, the boundary of the slit pair joining T^i to T^{i+1}.
struct Boundary {
  std::size_t torus = 0;
  friend bool operator==(const Boundary&, const Boundary&) = default;
};

// A curve crossing β^i twice whose arc inside T^i runs in direction (p, q).
struct Bridge {
  std::size_t torus = 0;
  BigInt p;
  BigInt q;
  friend bool operator==(const Bridge&, const Bridge&) = default;
};

using Curve = std::variant<TorusCurve, Boundary, Bridge>;

// Normalizes the sign and rejects (0, 0) or non-primitive pairs.
TorusCurve torus_curve(std::size_t torus, const BigInt& p, const BigInt& q);
Bridge bridge_curve(std::size_t torus, const BigInt& p, const BigInt& q);

// Literals: "T i p/q", "B i", "G i p/q".
Curve parse_curve(const std::string& text);
std::string curve_literal(const Curve& c);
std::size_t curve_torus(const Curve& c);
// Canonical ordering by literal kind, torus, then (p, q).
bool curve_less(const Curve& a, const Curve& b);

struct CylinderGeometry {
  Interval length;    // core ℓ_t
  Interval height;    // f = area / ℓ_t
  Interval modulus;   // f / ℓ_t
  Interval area;      // 1 - s0 · h_0
  bool degenerate = false;
};

class SlitSurface {
 public:
  // Throws std::invalid_argument unless 0 < s0 < 1/2 and every torus has
  // depth >= 1.
  SlitSurface(std::shared_ptr<const SlopeFamily> family, Rational s0);
  SlitSurface(SlopeFamily family, Rational s0);

  unsigned d() const { return family_->d; }
  std::size_t tori() const { return family_->tori(); }
  const Rational& s0() const { return s0_; }
  Interval s0_enclosure() const { return Interval::from_rational(s0_); }
  Interval total_area() const { return Interval(static_cast<long>(tori())); }
  const SlopeFamily& family() const { return *family_; }
  const contfrac::CFExpansion& expansion(std::size_t i) const { return family_->torus(i); }

  // θ^i over every tail compatible with the stored coefficients.
  const Interval& theta(std::size_t i) const { return theta_.at(i); }
  // √(1 + (θ^i)²).
  const Interval& normalizer(std::size_t i) const { return norm_.at(i); }

  // Time-0 horizontal and vertical lengths |p - θq|/√(1+θ²), |q + θp|/√(1+θ²).
  Interval h0(const TorusCurve& c) const;
  Interval v0(const TorusCurve& c) const;

  // The convergent curve α_n^i, n = -1 .. depth.
  TorusCurve convergent_curve(std::size_t i, long n) const;

  // Constructive smallness check for s0 at time t: in every torus the
  // shortest convergent curve has ℓ_t <= 2 and a non-degenerate cylinder.
  bool slit_small_at(const Interval& t) const;

 private:
  void check_torus(std::size_t i) const;

  std::shared_ptr<const SlopeFamily> family_;
  Rational s0_;
  std::vector<Interval> theta_;
  std::vector<Interval> norm_;
};

Interval flat_length(const SlitSurface& s, const Curve& c, const Interval& t);
// ℓ_t² for a torus curve, without the square root.
Interval flat_length_squared(const SlitSurface& s, const TorusCurve& c, const Interval& t);

struct HorizontalVertical {
  Interval h;
  Interval v;
};
// Throws UnsupportedCurve for boundary and bridge curves.
HorizontalVertical horizontal_vertical(const SlitSurface& s, const Curve& c, const Interval& t);

BigInt intersection_number(const Curve& a, const Curve& b);

// I(c, ν^i).
Interval foliation_intersection(const SlitSurface& s, const Curve& c, std::size_t i);

CylinderGeometry cylinder_geometry(const SlitSurface& s, const TorusCurve& c, const Interval& t);

// Vertical foliation ν = ⊔ ν^i; torus i carries the normalizer √(1+(θ^i)²)
// that turns intersection with ν^i into |p - qθ^i|.
struct FoliationWeight {
  std::vector<Interval> normalizers;
  // Σ_i weights[i] · I(c, ν^i).
  Interval pair(const SlitSurface& s, const Curve& c, const std::vector<Interval>& weights) const;
};
FoliationWeight foliation_weight(const SlitSurface& s);

}  // namespace slitflow::surface
