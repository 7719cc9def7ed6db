#pragma once

// Line-oriented text form of a slope family.
//
//   # comment
//   d=2
//   mode=scaled(2,1)
//   s0=1/100
//   levels=8
//   status=complete            (or: status=partial level=9)
//   u 1 1 1 1                  (k, then u_k^0 .. u_k^d)
//   0 1 1                      (i, n, a_n^i in decimal)
//
// Coefficient records may appear in any order; each (i, n) exactly once and
// n contiguous from 1 for every torus. Writing is canonical (headers, u rows
// by k, then records by i and n), so write(read(x)) == x byte for byte.

#include "slitflow/slope_family.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace slitflow::contfrac {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct FamilyFile {
  SlopeFamily family;
  Rational s0{1, 100};
  // Set when generation stopped early; names the level that overflowed.
  std::optional<unsigned> failed_level;
};

void write_family(std::ostream& out, const FamilyFile& file);
std::string family_to_string(const FamilyFile& file);

// Parses and rebuilds convergents. The audit trail is recomputed from the
// coefficients, so a corrupted file still loads and is caught by verification.
FamilyFile read_family(std::istream& in);
FamilyFile family_from_string(const std::string& text);

FamilyFile load_family(const std::string& path);
void save_family(const std::string& path, const FamilyFile& file);

// Reconstructs the per-level audit (multiplier, lcm, factor) from the
// coefficients of a family.
std::vector<LevelAudit> reconstruct_audit(const SlopeFamily& family);

}  // namespace slitflow::contfrac
