#include "slitflow/family_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace slitflow::contfrac {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

BigInt parse_integer(const std::string& token, std::size_t line) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, "expected a non-negative decimal integer, got '" + token + "'");
  }
  return BigInt(token);
}

Rational parse_rational(const std::string& token, std::size_t line) {
  const auto slash = token.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(token, line));
  BigInt num = parse_integer(token.substr(0, slash), line);
  BigInt den = parse_integer(token.substr(slash + 1), line);
  if (den == 0) throw ParseError(line, "zero denominator");
  return Rational(num, den);
}

std::string rational_text(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

void write_family(std::ostream& out, const FamilyFile& file) {
  const SlopeFamily& fam = file.family;
  out << "# slitflow slope family\n";
  out << "d=" << fam.d << "\n";
  out << "mode=" << fam.mode.to_string() << "\n";
  out << "s0=" << rational_text(file.s0) << "\n";
  out << "levels=" << fam.u_seq.size() << "\n";
  if (file.failed_level) {
    out << "status=partial level=" << *file.failed_level << "\n";
  } else {
    out << "status=complete\n";
  }
  for (std::size_t k = 0; k < fam.u_seq.size(); ++k) {
    out << "u " << (k + 1);
    for (const BigInt& x : fam.u_seq[k]) out << ' ' << x.str();
    out << "\n";
  }
  for (std::size_t i = 0; i < fam.expansions.size(); ++i) {
    const CFExpansion& cf = fam.expansions[i];
    for (std::size_t n = 1; n <= cf.depth(); ++n) {
      out << i << ' ' << n << ' ' << cf.a(n).str() << "\n";
    }
  }
}

std::string family_to_string(const FamilyFile& file) {
  std::ostringstream out;
  write_family(out, file);
  return out.str();
}

FamilyFile read_family(std::istream& in) {
  FamilyFile file;
  std::optional<unsigned> d;
  std::optional<std::size_t> levels;
  std::map<std::size_t, Tuple> u_rows;
  std::map<std::pair<std::size_t, std::size_t>, BigInt> records;
  file.family.mode = GrowthMode::strict();

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (const auto eq = line.find('='); eq != std::string::npos && line.rfind("u ", 0) != 0) {
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "d") {
        d = static_cast<unsigned>(parse_integer(value, line_no).convert_to<unsigned long>());
      } else if (key == "mode") {
        try {
          file.family.mode = GrowthMode::parse(value);
        } catch (const std::invalid_argument& e) {
          throw ParseError(line_no, e.what());
        }
      } else if (key == "s0") {
        file.s0 = parse_rational(value, line_no);
      } else if (key == "levels") {
        levels = parse_integer(value, line_no).convert_to<std::size_t>();
      } else if (key == "status") {
        if (value == "complete") {
          file.failed_level.reset();
        } else if (value.rfind("partial level=", 0) == 0) {
          file.failed_level = static_cast<unsigned>(
              parse_integer(value.substr(14), line_no).convert_to<unsigned long>());
        } else {
          throw ParseError(line_no, "unknown status '" + value + "'");
        }
      } else {
        throw ParseError(line_no, "unknown header '" + key + "'");
      }
      continue;
    }

    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.front() == "u") {
      if (parts.size() < 3) throw ParseError(line_no, "u row needs k and at least one entry");
      const std::size_t k = parse_integer(parts[1], line_no).convert_to<std::size_t>();
      Tuple u;
      for (std::size_t j = 2; j < parts.size(); ++j) u.push_back(parse_integer(parts[j], line_no));
      if (!u_rows.emplace(k, std::move(u)).second) throw ParseError(line_no, "duplicate u row");
      continue;
    }
    if (parts.size() != 3) throw ParseError(line_no, "expected a record 'i n a'");
    const std::size_t i = parse_integer(parts[0], line_no).convert_to<std::size_t>();
    const std::size_t n = parse_integer(parts[1], line_no).convert_to<std::size_t>();
    BigInt a = parse_integer(parts[2], line_no);
    if (a < 1) throw ParseError(line_no, "coefficient must be >= 1");
    if (!records.emplace(std::make_pair(i, n), std::move(a)).second) {
      throw ParseError(line_no, "duplicate record for torus " + parts[0] + " index " + parts[1]);
    }
  }

  if (!d) throw ParseError(line_no, "missing d= header");
  SlopeFamily& fam = file.family;
  fam.d = *d;
  for (auto& [k, u] : u_rows) {
    if (k != fam.u_seq.size() + 1) throw ParseError(line_no, "u rows must be numbered 1..K");
    if (u.size() != fam.d + 1) throw ParseError(line_no, "u row width differs from d+1");
    fam.u_seq.push_back(std::move(u));
  }
  if (levels && *levels != fam.u_seq.size()) {
    throw ParseError(line_no, "levels= disagrees with the number of u rows");
  }
  fam.expansions.assign(fam.d + 1, CFExpansion{});
  std::vector<std::vector<BigInt>> coeffs(fam.d + 1);
  for (auto& [key, a] : records) {
    const auto [i, n] = key;
    if (i > fam.d) throw ParseError(line_no, "torus index " + std::to_string(i) + " > d");
    if (n != coeffs[i].size() + 1) {
      throw ParseError(line_no, "torus " + std::to_string(i) + " coefficients not contiguous at " +
                                    std::to_string(n));
    }
    coeffs[i].push_back(std::move(a));
  }
  for (std::size_t i = 1; i <= fam.d; ++i) {
    if (coeffs[i].size() != coeffs[0].size()) {
      throw ParseError(line_no, "tori have different depths");
    }
  }
  for (std::size_t i = 0; i <= fam.d; ++i) {
    fam.expansions[i] = CFExpansion::from_coefficients(std::move(coeffs[i]));
  }
  fam.audit = reconstruct_audit(fam);
  return file;
}

FamilyFile family_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_family(in);
}

FamilyFile load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open family file '" + path + "'");
  return read_family(in);
}

void save_family(const std::string& path, const FamilyFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write family file '" + path + "'");
  write_family(out, file);
}

std::vector<LevelAudit> reconstruct_audit(const SlopeFamily& family) {
  std::vector<LevelAudit> out;
  if (family.expansions.empty()) return out;
  const std::size_t depth = family.depth();
  const std::size_t tori = family.tori();
  for (unsigned k = 1; k <= family.u_seq.size() && 2 * k + 1 <= depth; ++k) {
    LevelAudit audit;
    audit.k = k;
    audit.u = family.u_seq[k - 1];
    const long even = 2 * static_cast<long>(k);
    const CFExpansion& first = family.torus(0);
    audit.multiplier = first.a(static_cast<std::size_t>(even)) / audit.u[0];

    const BigInt umax = *std::max_element(audit.u.begin(), audit.u.end());
    BigInt worst = 0;
    for (std::size_t i = 0; i < tori; ++i) {
      const BigInt& prev = family.torus(i).a(static_cast<std::size_t>(even - 1));
      const BigInt need = BigInt(k) * std::max(prev, umax) / audit.u[i] + 1;
      if (need > worst) {
        worst = need;
        audit.even_binding = i;
        audit.even_bound_from_u = umax > prev;
      }
    }

    audit.lcm = first.q(even);
    for (std::size_t i = 1; i < tori; ++i) {
      audit.lcm = boost::multiprecision::lcm(audit.lcm, family.torus(i).q(even));
    }
    audit.common_product = first.a(static_cast<std::size_t>(even + 1)) * first.q(even);
    audit.lcm_factor = audit.common_product / audit.lcm;
    audit.odd_bounds.resize(tori);
    BigInt worst_factor = 0;
    for (std::size_t i = 0; i < tori; ++i) {
      const CFExpansion& cf = family.torus(i);
      try {
        audit.odd_bounds[i] = odd_lower_bound(family.mode, k, cf.a(static_cast<std::size_t>(even)));
      } catch (const std::exception&) {
        audit.odd_bounds[i] = 0;
      }
      BigInt need = audit.odd_bounds[i] * cf.q(even) / audit.lcm;
      if (need > worst_factor) {
        worst_factor = need;
        audit.odd_binding = i;
      }
    }
    out.push_back(std::move(audit));
  }
  return out;
}

}  // namespace slitflow::contfrac
