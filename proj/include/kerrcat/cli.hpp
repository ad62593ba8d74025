#pragma once
/*
 * Command-line front end. One subcommand per sweep mode; CSV goes to stdout
 * or --out, an optional machine-readable summary to --summary. Exit codes:
 * 0 success, 2 invalid arguments, 3 domain error, 4 oracle tolerance failure.
 */

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kerrcat/sweep.hpp"

namespace kerrcat {
namespace cli_detail {

// N tokens are plain counts ("1000000", "1e6") or decade ranges "1e3..1e6"
// expanding to 1e3, 1e4, 1e5, 1e6
inline std::vector<long long> parse_n_list(const std::vector<std::string>& tokens) {
  std::vector<long long> out;
  for (const auto& tok : tokens) {
    double lo = 0.0, hi = 0.0;
    const auto dots = tok.find("..");
    try {
      if (dots != std::string::npos) {
        lo = std::stod(tok.substr(0, dots));
        hi = std::stod(tok.substr(dots + 2));
      } else {
        lo = hi = std::stod(tok);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("--N: cannot parse '" + tok + "'");
    }
    if (!(lo >= 1.0) || !(hi >= lo))
      throw std::invalid_argument("--N: bad value or range '" + tok + "'");
    for (double v = lo; v <= hi * (1.0 + 1e-9); v *= 10.0)
      out.push_back(std::llround(v));
  }
  return out;
}

struct CliConfig {
  std::vector<double> alphas;
  double alpha0 = 3.0;
  double big_gamma = 0.0125;
  double gamma = -1.0, chi = -1.0;
  double db_per_km = -1.0, length_km = -1.0;
  std::vector<std::string> n_tokens = {"1e6"};
  std::string sign = "+";
  std::string out_path, summary_path;
  int points = 50;
  bool big_gamma_given = false;
};

inline SweepSpec build_spec(SweepMode mode, const CliConfig& c) {
  SweepSpec s;
  s.mode = mode;
  s.alphas = c.alphas;
  if (s.alphas.empty() && mode == SweepMode::oracle_check) s.alphas = {1.0, 2.0, 3.0};
  s.alpha0 = c.alpha0;

  const bool rates_given = c.gamma >= 0.0 || c.chi >= 0.0;
  const bool loss_given = c.db_per_km >= 0.0 || c.length_km >= 0.0;
  if ((c.big_gamma_given ? 1 : 0) + (rates_given ? 1 : 0) + (loss_given ? 1 : 0) > 1)
    throw std::invalid_argument(
        "--Gamma, --gamma/--chi and --db-per-km/--length-km are mutually exclusive");
  if (rates_given) {
    if (c.gamma < 0.0 || c.chi < 0.0)
      throw std::invalid_argument("--gamma and --chi must be given together");
    s.gamma = c.gamma;
    s.chi = c.chi;
  } else if (loss_given) {
    if (c.db_per_km < 0.0 || c.length_km < 0.0)
      throw std::invalid_argument("--db-per-km and --length-km must be given together");
    // full conditional phase pi accumulated over the fiber length
    const double chi_per_km = M_PI / c.length_km;
    s.gamma = loss_db_per_km_to_gamma(c.db_per_km, chi_per_km).gamma;
    s.chi = chi_per_km;
  } else {
    s.gamma = 1.0;
    s.chi = c.big_gamma;
  }

  s.n_values = parse_n_list(c.n_tokens);
  s.sign = c.sign == "-" ? CatSign::minus : CatSign::plus;
  s.time_points = c.points;
  return s;
}

inline const char* mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::coherence: return "coherence";
    case SweepMode::time_sweep: return "time-sweep";
    case SweepMode::alpha_sweep: return "alpha-sweep";
    case SweepMode::n_sweep: return "n-sweep";
    case SweepMode::entanglement: return "entanglement";
    case SweepMode::oracle_check: return "oracle-check";
  }
  return "?";
}

inline void write_outputs(const SweepResult& res, SweepMode mode, const CliConfig& c) {
  if (c.out_path.empty()) {
    write_csv(res, std::cout);
  } else {
    std::ofstream f(c.out_path);
    if (!f) throw std::invalid_argument("--out: cannot open '" + c.out_path + "'");
    write_csv(res, f);
  }
  if (!c.summary_path.empty()) {
    nlohmann::json j;
    j["mode"] = mode_name(mode);
    j["columns"] = res.header;
    j["rows"] = res.rows;
    j["all_pass"] = res.all_pass;
    std::ofstream f(c.summary_path);
    if (!f) throw std::invalid_argument("--summary: cannot open '" + c.summary_path + "'");
    f << j.dump(2) << "\n";
  }
}

}  // namespace cli_detail

inline int cli_main(int argc, const char* const* argv) {
  using cli_detail::CliConfig;
  CLI::App app{"cat-state coherence and entanglement from a weak cross-Kerr interaction"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::map<const CLI::App*, SweepMode> modes;

  const std::vector<SweepMode> all_modes = {SweepMode::coherence,    SweepMode::time_sweep,
                                            SweepMode::alpha_sweep,  SweepMode::n_sweep,
                                            SweepMode::entanglement, SweepMode::oracle_check};
  const std::map<SweepMode, const char*> blurb = {
      {SweepMode::coherence, "single evolution per grid point"},
      {SweepMode::time_sweep, "coherence against time up to the target separation"},
      {SweepMode::alpha_sweep, "coherence against initial amplitude"},
      {SweepMode::n_sweep, "coherence against Trotter step count"},
      {SweepMode::entanglement, "two-mode negativity after heralding"},
      {SweepMode::oracle_check, "closed form against the Fock-space master equation"},
  };

  for (SweepMode m : all_modes) {
    CLI::App* sub = app.add_subcommand(cli_detail::mode_name(m), blurb.at(m));
    modes[sub] = m;
    auto* alpha_opt =
        sub->add_option("--alpha", cfg.alphas, "initial amplitudes (comma separated)")
            ->delimiter(',');
    if (m != SweepMode::oracle_check)
      alpha_opt->required();
    else
      alpha_opt->description("initial amplitudes, <= 4 (default 1,2,3)");
    if (m != SweepMode::oracle_check)
      sub->add_option("--alpha0", cfg.alpha0, "target half-separation (default 3)");
    sub->add_option("--Gamma", cfg.big_gamma, "chi/gamma ratio (default 0.0125)")
        ->each([&cfg](const std::string&) { cfg.big_gamma_given = true; });
    sub->add_option("--gamma", cfg.gamma, "damping rate (use with --chi)");
    sub->add_option("--chi", cfg.chi, "Kerr rate (use with --gamma)");
    sub->add_option("--db-per-km", cfg.db_per_km, "fiber loss (use with --length-km)");
    sub->add_option("--length-km", cfg.length_km,
                    "fiber length; the full conditional phase accrues over it");
    sub->add_option("--N", cfg.n_tokens,
                    "Trotter step counts, values or decade ranges like 1e3..1e6")
        ->delimiter(',');
    if (m == SweepMode::entanglement)
      sub->add_option("--sign", cfg.sign, "herald branch (default +)")
          ->check(CLI::IsMember({"+", "-"}));
    if (m == SweepMode::time_sweep)
      sub->add_option("--points", cfg.points, "time grid size (default 50)");
    sub->add_option("--out", cfg.out_path, "CSV output path (default stdout)");
    sub->add_option("--summary", cfg.summary_path, "JSON summary path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const SweepMode mode = modes.at(app.get_subcommands().front());
  try {
    const SweepSpec spec = cli_detail::build_spec(mode, cfg);
    const SweepResult res = run(spec);
    cli_detail::write_outputs(res, mode, cfg);
    if (mode == SweepMode::oracle_check && !res.all_pass) {
      std::cerr << "oracle-check: tolerance not met\n";
      return 4;
    }
    return 0;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace kerrcat
