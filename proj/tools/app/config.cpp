#include "config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace slitflow::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

unsigned long parse_count(const std::string& key, const std::string& value) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  try {
    return std::stoul(value);
  } catch (const std::exception&) {
    throw ConfigError(key + ": value out of range '" + value + "'");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string RunConfig::family_path() const {
  return family_file.empty() ? output_dir + "/family.txt" : family_file;
}

Rational parse_decimal(const std::string& raw) {
  const std::string text = trim(raw);
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
    return num / den;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits += ch;
      if (seen_point) ++frac_digits;
    } else {
      throw ConfigError("not a decimal number: '" + text + "'");
    }
  }
  if (digits.empty()) throw ConfigError("not a decimal number: '" + text + "'");
  Rational value(BigInt(digits), boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_digits)));
  return negative ? Rational(-value) : value;
}

std::vector<Rational> parse_times(const std::string& spec) {
  const std::string s = trim(spec);
  if (s.empty()) return {};
  if (s.rfind("range(", 0) == 0) {
    if (s.back() != ')') throw ConfigError("times: unterminated range(...)");
    const auto parts = split(s.substr(6, s.size() - 7), ',');
    if (parts.size() != 3) throw ConfigError("times: range(a,b,count) needs three arguments");
    const Rational a = parse_decimal(parts[0]);
    const Rational b = parse_decimal(parts[1]);
    const unsigned long count = parse_count("times", parts[2]);
    if (count == 0) return {};
    if (count == 1) return {a};
    std::vector<Rational> out;
    for (unsigned long k = 0; k < count; ++k) {
      out.push_back(a + (b - a) * Rational(static_cast<long>(k), static_cast<long>(count - 1)));
    }
    return out;
  }
  std::vector<Rational> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_decimal(item));
  return out;
}

void apply_setting(RunConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  auto positive = [&](unsigned long v) {
    if (v == 0) throw ConfigError(key + " must be positive");
    return v;
  };
  if (key == "d") {
    c.d = static_cast<unsigned>(parse_count(key, value));
  } else if (key == "s0") {
    c.s0 = parse_decimal(value);
  } else if (key == "mode") {
    try {
      c.mode = contfrac::GrowthMode::parse(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "levels" || key == "K") {
    c.levels = static_cast<unsigned>(parse_count(key, value));
  } else if (key == "u_file") {
    c.u_file = value;
  } else if (key == "family") {
    c.family_file = value;
  } else if (key == "curves") {
    c.curves = split(value, ';');
  } else if (key == "curves_file") {
    c.curves_file = value;
  } else if (key == "times") {
    parse_times(value);
    c.times = value;
  } else if (key == "output_dir") {
    if (value.empty()) throw ConfigError("output_dir must not be empty");
    c.output_dir = value;
  } else if (key == "precision") {
    c.precision = static_cast<unsigned>(positive(parse_count(key, value)));
  } else if (key == "output_digits") {
    c.output_digits = static_cast<unsigned>(positive(parse_count(key, value)));
  } else if (key == "bit_budget") {
    c.bit_budget = positive(parse_count(key, value));
  } else if (key == "gamma1") {
    c.gamma1 = value;
  } else if (key == "gamma2") {
    c.gamma2 = value;
  } else if (key == "bridge") {
    c.bridge = value;
  } else if (key == "panel") {
    c.panel = split(value, ';');
  } else if (key == "n_min") {
    c.n_min = static_cast<unsigned>(positive(parse_count(key, value)));
  } else if (key == "n_max") {
    c.n_max = static_cast<unsigned>(positive(parse_count(key, value)));
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

void apply_assignment(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
  apply_setting(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    try {
      apply_assignment(config, t);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(no) + ": " + e.what());
    }
  }
}

void apply_environment(RunConfig& config) {
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) config.output_dir = dir;
}

void validate(const RunConfig& c) {
  if (!(c.s0 > 0 && c.s0 < Rational(1, 2))) throw ConfigError("s0 must lie in (0, 1/2)");
  if (c.mode.is_strict() && c.levels > 2) {
    throw ConfigError("strict mode cannot reach level " + std::to_string(c.levels) +
                      ": level 3 needs a_7 > exp(3 a_6) with a_6 above 2^100; use levels <= 2 "
                      "or a scaled mode");
  }
  if (c.n_min && c.n_max && *c.n_min > *c.n_max) throw ConfigError("n_min exceeds n_max");
}

std::vector<surface::Curve> resolve_curves(const RunConfig& config) {
  std::vector<surface::Curve> out;
  for (const auto& lit : config.curves) {
    try {
      out.push_back(surface::parse_curve(lit));
    } catch (const surface::InvalidCurve& e) {
      throw ConfigError(std::string("curves: ") + e.what());
    }
  }
  if (!config.curves_file.empty()) {
    std::ifstream in(config.curves_file);
    if (!in) throw ConfigError("cannot open curves file '" + config.curves_file + "'");
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      try {
        out.push_back(surface::parse_curve(t));
      } catch (const surface::InvalidCurve& e) {
        throw ConfigError(config.curves_file + ":" + std::to_string(no) + ": " + e.what());
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), surface::curve_less);
  return out;
}

std::vector<contfrac::Tuple> resolve_u_seq(const RunConfig& config) {
  if (config.u_file.empty()) return contfrac::default_dense_prefix(config.d, config.levels);
  std::ifstream in(config.u_file);
  if (!in) throw ConfigError("cannot open u file '" + config.u_file + "'");
  std::vector<contfrac::Tuple> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream tokens(t);
    contfrac::Tuple u;
    for (std::string tok; tokens >> tok;) {
      const unsigned long v = parse_count("u_file", tok);
      if (v == 0) throw ConfigError(config.u_file + ":" + std::to_string(no) + ": entries must be positive");
      u.push_back(BigInt(v));
    }
    if (u.size() != config.d + 1) {
      throw ConfigError(config.u_file + ":" + std::to_string(no) + ": expected " +
                        std::to_string(config.d + 1) + " entries");
    }
    out.push_back(std::move(u));
  }
  if (out.size() < config.levels) {
    throw ConfigError("u file has " + std::to_string(out.size()) + " tuples, need " +
                      std::to_string(config.levels));
  }
  out.resize(config.levels);
  return out;
}

}  // namespace slitflow::app
