#include "commands.hpp"

#include "slitflow/limitset.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace slitflow::app {

namespace {

namespace fs = std::filesystem;
using contfrac::FamilyFile;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

FamilyFile load(const RunConfig& config) {
  try {
    return contfrac::load_family(config.family_path());
  } catch (const contfrac::ParseError& e) {
    throw ConfigError(config.family_path() + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
}

std::string audit_text(const contfrac::SlopeFamily& fam) {
  std::ostringstream out;
  out << "# level multiplier even_binding even_from_u lcm_factor odd_binding lcm_bits M_bits\n";
  for (const auto& a : fam.audit) {
    out << a.k << ' ' << a.multiplier.str() << ' ' << a.even_binding << ' '
        << (a.even_bound_from_u ? 1 : 0) << ' ' << a.lcm_factor.str() << ' ' << a.odd_binding
        << ' ' << bit_length(a.lcm) << ' ' << bit_length(a.common_product) << '\n';
  }
  return out.str();
}

void print_condition_summary(const contfrac::SlopesReport& rep, std::ostream& out) {
  out << "seed a_1 = 1: " << (rep.seed_ok ? "ok" : "FAIL") << '\n';
  for (const auto& l : rep.levels) {
    out << "level " << l.k << ": (i) " << (l.cond_i ? "ok" : "FAIL") << "  (ii) "
        << (l.cond_ii ? "ok" : "FAIL") << "  (iii) " << (l.cond_iii ? "ok" : "FAIL") << "  (iv) "
        << (l.cond_iv ? "ok" : "FAIL") << "  odd q equal " << (l.odd_q_equal ? "exact" : "FAIL")
        << "  q-ratio gap " << format_real(Real(l.q_ratio_gap), 6) << '\n';
  }
  std::size_t bad = 0;
  for (const auto& p : rep.products) bad += (p.lower_ok && p.upper_ok) ? 0 : 1;
  out << "product bounds: " << rep.products.size() - bad << "/" << rep.products.size() << " ok\n";
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const surface::InvalidCurve& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const limitset::InvalidTestCurve& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const limitset::IncompletePanel& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

std::vector<surface::Curve> parse_list(const std::vector<std::string>& lits) {
  std::vector<surface::Curve> out;
  for (const auto& l : lits) out.push_back(surface::parse_curve(l));
  return out;
}

}  // namespace

unsigned first_reliable_level(const surface::SlitSurface& s, unsigned n_max) {
  unsigned first = 0;
  for (unsigned n = n_max; n >= 1; --n) {
    if (!limitset::make_probe(s, n, {}).reliable) break;
    first = n;
  }
  return first;
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    ScopedDigits digits(config.precision);
    ensure_dir(config.output_dir);
    const auto u_seq = resolve_u_seq(config);
    FamilyFile file;
    file.s0 = config.s0;
    contfrac::GenerateOptions options;
    options.bit_budget = config.bit_budget;
    int code = kOk;
    try {
      file.family =
          contfrac::generate_slope_family(config.d, u_seq, config.levels, config.mode, options, &file.family);
    } catch (const contfrac::BudgetExceeded& e) {
      err << "error: " << e.what() << "; saving " << file.family.levels() << " completed levels\n";
      file.failed_level = e.level();
      file.family.u_seq.resize(file.family.levels());
      code = kBudgetExceeded;
    }
    contfrac::save_family(config.family_path(), file);
    write_file(config.output_dir + "/audit.txt", audit_text(file.family));
    out << "family: " << config.family_path() << " (d=" << file.family.d
        << ", mode=" << file.family.mode.to_string() << ", levels=" << file.family.levels()
        << ", max bits=" << file.family.max_bits() << ")\n";
    if (!file.family.mode.is_strict()) out << "note: scaled mode; asymptotic reports are heuristic\n";
    const auto rep = contfrac::verify_lemma_slopes(file.family);
    print_condition_summary(rep, out);
    if (code == kOk && !rep.exact_ok()) code = kFailed;
    return code;
  });
}

int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    ScopedDigits digits(config.precision);
    const auto curves = resolve_curves(config);
    const auto times = parse_times(config.times);
    const FamilyFile file = load(config);
    const surface::SlitSurface s(file.family, file.s0);
    std::ostringstream csv;
    csv << geodesic::csv_header() << '\n';
    for (const auto& c : curves) {
      for (const auto& t : times) {
        const auto r = geodesic::length_report(s, c, Interval::from_rational(t));
        csv << geodesic::csv_row(r, static_cast<int>(config.output_digits)) << '\n';
      }
    }
    ensure_dir(config.output_dir);
    write_file(config.output_dir + "/trace.csv", csv.str());
    out << csv.str();
    return kOk;
  });
}

int cmd_limit_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    ScopedDigits digits(config.precision);
    const FamilyFile file = load(config);
    const surface::SlitSurface s(file.family, file.s0);
    const int prec = static_cast<int>(config.output_digits);
    const unsigned feasible = limitset::feasible_levels(s);
    const unsigned n_max = config.n_max.value_or(feasible);
    if (n_max > feasible) {
      throw ConfigError("n_max = " + std::to_string(n_max) + " exceeds the family's " +
                        std::to_string(feasible) + " feasible levels");
    }
    if (n_max == 0) {
      out << "no feasible probe levels (family depth " << s.family().depth() << ")\n";
      return kFailed;
    }
    const unsigned auto_min = first_reliable_level(s, n_max);
    const unsigned n_min = config.n_min.value_or(auto_min == 0 ? n_max : auto_min);

    const auto gamma1 = surface::parse_curve(config.gamma1);
    const auto gamma2 = surface::parse_curve(config.gamma2);
    const auto bridge = surface::parse_curve(config.bridge);
    std::vector<surface::Curve> panel = parse_list(config.panel);
    if (panel.empty()) {
      for (std::size_t i = 0; i < s.tori(); ++i) panel.push_back(surface::torus_curve(i, 1, 0));
    }

    // All levels are reported; only [n_min, n_max] counts as accepted.
    const auto ratios = limitset::ratio_report(s, gamma1, gamma2, 1, n_max);
    const auto sweep = limitset::simplex_sweep(s, panel, 1, n_max);
    const auto decay = limitset::beta_decay_report(s, bridge, limitset::sample_times(s, 1, n_max));

    ensure_dir(config.output_dir);
    const std::string dir = config.output_dir;
    {
      std::ostringstream o;
      limitset::write_ratio_csv(o, ratios, prec);
      write_file(dir + "/ratio.csv", o.str());
    }
    {
      std::ostringstream o;
      limitset::write_sweep_csv(o, panel, sweep, prec);
      write_file(dir + "/sweep.csv", o.str());
    }
    {
      std::ostringstream o;
      limitset::write_decay_csv(o, decay, prec);
      write_file(dir + "/decay.csv", o.str());
    }
    std::vector<std::pair<double, double>> gap_xy, sweep_xy, decay_xy;
    for (const auto& r : ratios) gap_xy.emplace_back(r.n, r.gap_lhs_rhs.to_double());
    for (const auto& r : sweep) sweep_xy.emplace_back(r.n, r.distance);
    for (const auto& r : decay.rows) decay_xy.emplace_back(r.t.to_double(), r.ratio.to_double());
    for (const auto& [name, xy] : {std::pair{"ratio_gap.dat", &gap_xy}, std::pair{"sweep_distance.dat", &sweep_xy},
                                   std::pair{"decay_ratio.dat", &decay_xy}}) {
      std::ostringstream o;
      limitset::write_plot_data(o, *xy);
      write_file(dir + "/" + name, o.str());
    }
    write_file(dir + "/summary.json",
               limitset::summary_json(ratios, sweep, decay, file.family.mode.to_string()) + "\n");

    bool ok = auto_min != 0 || config.n_min.has_value();
    for (const auto& r : ratios) {
      if (r.n >= n_min && !r.reliable) ok = false;
    }
    out << "mode " << file.family.mode.to_string() << ", probes 1.." << n_max << ", accepted "
        << n_min << ".." << n_max << '\n';
    for (const auto& r : ratios) {
      out << "n=" << r.n << " t=" << format_real(r.t.mid(), 8) << " |LHS/RHS-1|="
          << format_real(r.gap_lhs_rhs.mid(), 4) << (r.reliable ? "" : "  [unreliable]")
          << (r.n < n_min ? "  [not accepted]" : "") << '\n';
    }
    return ok ? kOk : kFailed;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    ScopedDigits digits(config.precision);
    const FamilyFile file = load(config);
    const auto results = run_verify_suites(file);
    bool ok = true;
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << "  checked=" << r.checked
          << " failed=" << r.failed;
      if (!r.note.empty()) out << "  (" << r.note << ")";
      out << '\n';
      ok = ok && r.passed;
    }
    return ok ? kOk : kFailed;
  });
}

}  // namespace slitflow::app
