#pragma once

// Run configuration: a flat key=value file plus command-line overrides.
//
//   d=2
//   s0=1/100
//   mode=scaled(2,1)          strict | scaled | scaled(e,c)
//   levels=8
//   u_file=                   optional; one tuple per line, entries separated by spaces
//   family=                   family file; defaults to <output_dir>/family.txt
//   curves=T 0 1/1; B 0       curve literals separated by ';'
//   curves_file=              one curve literal per line
//   times=0,0.5,1             decimals, or range(a,b,count)
//   output_dir=slitflow-out   SLITFLOW_OUTPUT_DIR overrides it
//   precision=120             working decimal digits
//   output_digits=17          printed significant digits
//   bit_budget=1048576
//   gamma1=T 0 1/1
//   gamma2=T 1 1/1
//   bridge=G 0 1/0
//   panel=                    defaults to T i 1/0 for every torus
//   n_min= / n_max=           probe range; n_min defaults to the first level
//                             from which every probe is reliable

#include "slitflow/slope_family.hpp"
#include "slitflow/surface.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slitflow::app {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kOutputDirEnv = "SLITFLOW_OUTPUT_DIR";

struct RunConfig {
  unsigned d = 2;
  Rational s0{1, 100};
  contfrac::GrowthMode mode = contfrac::GrowthMode::scaled();
  unsigned levels = 8;
  std::string u_file;
  std::string family_file;
  std::vector<std::string> curves;
  std::string curves_file;
  std::string times = "0";
  std::string output_dir = "slitflow-out";
  unsigned precision = 120;
  unsigned output_digits = 17;
  std::size_t bit_budget = std::size_t{1} << 20;
  std::string gamma1 = "T 0 1/1";
  std::string gamma2 = "T 1 1/1";
  std::string bridge = "G 0 1/0";
  std::vector<std::string> panel;
  std::optional<unsigned> n_min;
  std::optional<unsigned> n_max;

  std::string family_path() const;
};

// Applies one key=value setting; unknown keys and bad values throw.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);
// "key=value".
void apply_assignment(RunConfig& config, const std::string& assignment);
// Reads a config file into `config`; errors name the line.
void load_config_file(RunConfig& config, const std::string& path);
// Applies the output-directory environment override.
void apply_environment(RunConfig& config);
// Positivity and feasibility checks. Strict mode past two levels cannot fit
// any integer budget (a_7 > exp(3 a_6) with a_6 above 2^100).
void validate(const RunConfig& config);

// Decimal ("-1.25", "3") or fraction ("7/4") to an exact rational.
Rational parse_decimal(const std::string& text);
// Expands the times spec into exact rationals.
std::vector<Rational> parse_times(const std::string& spec);
// Curve literals from `curves` and `curves_file`, in canonical order.
// File errors carry the line number.
std::vector<surface::Curve> resolve_curves(const RunConfig& config);
std::vector<contfrac::Tuple> resolve_u_seq(const RunConfig& config);

}  // namespace slitflow::app
