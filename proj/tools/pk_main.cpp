#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "pk/report.hpp"

namespace {

using pk::Complex;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitCheckFailed = 5;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "a+bi" / "a-bi" / "a" / "bi"
Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ConfigError("empty complex number");
  double re = 0.0, im = 0.0;
  if (s.back() == 'i' || s.back() == 'I') {
    s.pop_back();
    // split at the last top-level +/- that is not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    try {
      if (split == std::string::npos) {
        im = std::stod(s.empty() || s == "+" ? s + "1" : (s == "-" ? "-1" : s));
      } else {
        re = std::stod(s.substr(0, split));
        std::string imag = s.substr(split);
        if (imag == "+") imag = "1";
        if (imag == "-") imag = "-1";
        im = std::stod(imag);
      }
    } catch (const std::exception&) {
      throw ConfigError("cannot parse complex number '" + text + "'");
    }
  } else {
    try {
      re = std::stod(s);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse complex number '" + text + "'");
    }
  }
  return {re, im};
}

// "(0.3+0.0i,0.1);(-0.2+0.4i,0.05)" or "[(...),(...)]"
std::vector<pk::Hole> parse_holes(const std::string& text) {
  std::vector<pk::Hole> holes;
  std::size_t pos = 0;
  while ((pos = text.find('(', pos)) != std::string::npos) {
    const std::size_t end = text.find(')', pos);
    if (end == std::string::npos) throw ConfigError("holes: unbalanced parenthesis");
    const std::string body = text.substr(pos + 1, end - pos - 1);
    const std::size_t comma = body.rfind(',');
    if (comma == std::string::npos) throw ConfigError("holes: expected (center,radius)");
    pk::Hole h;
    h.center = parse_complex(body.substr(0, comma));
    try {
      h.radius = std::stod(body.substr(comma + 1));
    } catch (const std::exception&) {
      throw ConfigError("holes: cannot parse radius");
    }
    holes.push_back(h);
    pos = end + 1;
  }
  if (holes.empty()) throw ConfigError("holes: no (center,radius) groups found");
  return holes;
}

struct CommonOptions {
  std::string config_path;
  std::string domain_name = "disc";
  double q = 0.5;
  std::string holes_text;
  std::vector<std::string> point_texts;
  int basis_degree = 40;
  int boundary_nodes = 512;
  int area_resolution = 256;
  std::vector<double> r_grid;
  std::string checks_text = "all";
  std::string out_path;
  std::string format = "json";
  bool convergence = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--domain", o.domain_name, "disc | annulus | circular")
      ->check(CLI::IsMember({"disc", "annulus", "circular"}));
  cmd->add_option("--q", o.q, "annulus inner radius, in (0,1)");
  cmd->add_option("--holes", o.holes_text, "circular-domain holes, e.g. \"(0.3+0.0i,0.1)\"");
  cmd->add_option("--point", o.point_texts, "evaluation point a+bi (repeatable)");
  cmd->add_option("--basis-degree", o.basis_degree, "basis degree (>= 5)");
  cmd->add_option("--boundary-nodes", o.boundary_nodes, "boundary nodes per component (>= 64)");
  cmd->add_option("--area-resolution", o.area_resolution, "angular rays for area rules (>= 64)");
  cmd->add_option("--r-grid", o.r_grid, "levels r in (0,1], comma separated")->delimiter(',');
  cmd->add_option("--checks", o.checks_text, "comma list of checks, or 'all'");
  cmd->add_option("--out", o.out_path, "write the machine-readable report here");
  cmd->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--convergence", o.convergence,
                "also report the doubled-degree/resolution convergence delta");
  cmd->add_option("--config", o.config_path,
                  "key=value file supplying defaults; explicit flags win");
}

// Applies a key=value config file to options the command line left untouched.
void apply_config(const CLI::App& cmd, CommonOptions& o) {
  if (o.config_path.empty()) return;
  std::ifstream in(o.config_path);
  if (!in) throw ConfigError("cannot open config file " + o.config_path);
  const auto strip = [](const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
  };
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = strip(line);
    if (t.empty() || t[0] == '#' || t[0] == ';' || t[0] == '[') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("config: expected key=value, got '" + t + "'");
    const std::string key = strip(t.substr(0, eq));
    const std::string val = strip(t.substr(eq + 1));
    if (cmd.count("--" + key) > 0) continue;
    try {
      if (key == "domain") o.domain_name = val;
      else if (key == "q") o.q = std::stod(val);
      else if (key == "holes") o.holes_text = val;
      else if (key == "point") o.point_texts.push_back(val);
      else if (key == "basis-degree") o.basis_degree = std::stoi(val);
      else if (key == "boundary-nodes") o.boundary_nodes = std::stoi(val);
      else if (key == "area-resolution") o.area_resolution = std::stoi(val);
      else if (key == "checks") o.checks_text = val;
      else if (key == "out") o.out_path = val;
      else if (key == "format") o.format = val;
      else if (key == "convergence") o.convergence = (val == "1" || val == "true");
      else if (key == "r-grid") {
        std::stringstream ss(val);
        std::string item;
        while (std::getline(ss, item, ',')) o.r_grid.push_back(std::stod(strip(item)));
      } else {
        throw ConfigError("config: unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("config: cannot parse value for '" + key + "'");
    }
  }
  if (o.domain_name != "disc" && o.domain_name != "annulus" && o.domain_name != "circular")
    throw ConfigError("config: domain must be disc, annulus, or circular");
  if (o.format != "json" && o.format != "csv")
    throw ConfigError("config: format must be json or csv");
}

struct ResolvedConfig {
  pk::DomainSpec domain;
  std::vector<Complex> points;
  pk::VerifyOptions verify;
  std::vector<pk::Check> checks;
};

ResolvedConfig resolve(const CommonOptions& o, bool need_points) {
  ResolvedConfig rc;
  if (o.domain_name == "disc") {
    rc.domain = pk::DomainSpec::unit_disc();
  } else if (o.domain_name == "annulus") {
    if (!(o.q > 0.0 && o.q < 1.0)) throw ConfigError("q must be in (0,1)");
    rc.domain = pk::DomainSpec::annulus(o.q);
  } else {
    if (o.holes_text.empty()) throw ConfigError("circular domain requires --holes");
    try {
      rc.domain = pk::DomainSpec::circular(parse_holes(o.holes_text));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  for (const std::string& t : o.point_texts) {
    const Complex w = parse_complex(t);
    if (!pk::contains(rc.domain, w)) throw ConfigError("point " + t + " not interior");
    const double d = pk::dist_to_boundary(rc.domain, w);
    if (d < 0.01) throw ConfigError("point " + t + " closer than 0.01 to the boundary");
    if (d < 0.05)
      std::cerr << "warning: point " << t << " is within 0.05 of the boundary; "
                << "conditioning may degrade\n";
    rc.points.push_back(w);
  }
  if (need_points && rc.points.empty()) throw ConfigError("at least one --point is required");
  if (o.basis_degree < 5) throw ConfigError("basis-degree must be >= 5");
  if (o.boundary_nodes < 64) throw ConfigError("boundary-nodes must be >= 64");
  if (o.area_resolution < 64) throw ConfigError("area-resolution must be >= 64");
  rc.verify.basis_degree = o.basis_degree;
  rc.verify.boundary_nodes = o.boundary_nodes;
  rc.verify.area_resolution = o.area_resolution;
  rc.verify.r_grid = o.r_grid;
  for (double r : o.r_grid)
    if (!(r > 0.0 && r <= 1.0)) throw ConfigError("r-grid values must lie in (0,1]");

  if (o.checks_text == "all") {
    rc.checks = pk::all_checks();
  } else {
    std::stringstream ss(o.checks_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      bool found = false;
      for (pk::Check c : pk::all_checks())
        if (pk::check_name(c) == item) {
          rc.checks.push_back(c);
          found = true;
        }
      if (!found) throw ConfigError("unknown check '" + item + "'");
    }
    if (rc.checks.empty()) throw ConfigError("no checks selected");
  }
  return rc;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path);
  out << content;
}

pk::Json config_echo(const ResolvedConfig& rc, const CommonOptions& o) {
  pk::Json config = pk::options_to_json(rc.verify);
  config["domain"] = pk::domain_to_json(rc.domain);
  pk::Json points = pk::Json::array();
  for (Complex w : rc.points) points.push_back({{"re", w.real()}, {"im", w.imag()}});
  config["points"] = points;
  pk::Json checks = pk::Json::array();
  for (pk::Check c : rc.checks) checks.push_back(pk::check_name(c));
  config["checks"] = checks;
  config["format"] = o.format;
  return config;
}

int cmd_kernels(const CommonOptions& o) {
  const ResolvedConfig rc = resolve(o, true);
  const auto ev = pk::make_green_evaluator(rc.domain);
  pk::Json out;
  out["config"] = config_echo(rc, o);
  pk::Json rows = pk::Json::array();
  std::string csv =
      "point_re,point_im,bergman,bergman_err,hardy,hardy_err,pi_bergman,saitoh_gap,"
      "saitoh_gap_err,c_beta_sq,suita_gap,g0,g0_err\n";
  std::printf("%-22s %12s %12s %12s %12s %12s\n", "point", "B(w)", "hR(w)", "hR-piB", "c_beta^2",
              "g_w(0)");
  for (Complex w : rc.points) {
    const pk::KernelValues k = pk::compute_kernels(*ev, w, rc.verify, o.convergence);
    rows.push_back(pk::kernels_to_json(w, k));
    const double numbers[] = {k.bergman,  k.bergman_err, k.hardy,     k.hardy_err,
                              M_PI * k.bergman, k.saitoh_gap, k.saitoh_gap_err,
                              k.c_beta_sq, k.suita_gap,  k.g0,        k.g0_err};
    csv += pk::csv_number(w.real()) + "," + pk::csv_number(w.imag());
    for (double v : numbers) csv += "," + pk::csv_number(v);
    csv += "\n";
    std::printf("%-22s %12.8f %12.8f %12.4e %12.8f %12.8f\n",
                pk::complex_to_string(w).c_str(), k.bergman, k.hardy, k.saitoh_gap, k.c_beta_sq,
                k.g0);
    if (o.convergence)
      std::printf("  convergence delta (doubled degree+resolution): %.3e\n", k.convergence_delta);
  }
  out["points"] = rows;
  write_output(o.out_path, o.format == "json" ? out.dump(2) + "\n" : csv);
  return kExitOk;
}

int cmd_verify(const CommonOptions& o) {
  const ResolvedConfig rc = resolve(o, true);
  const auto ev = pk::make_green_evaluator(rc.domain);
  pk::Json out;
  out["config"] = config_echo(rc, o);
  pk::Json reports = pk::Json::array();
  std::string csv = "point_re,point_im,check,passed,inconclusive,residual,tolerance\n";
  bool any_failed = false, any_inconclusive = false;
  for (Complex w : rc.points) {
    const pk::VerificationReport report = pk::run_checks(*ev, w, rc.checks, rc.verify);
    reports.push_back(pk::report_to_json(report));
    for (const pk::CheckResult& c : report.checks) {
      const bool inconclusive = c.status == pk::CheckStatus::Inconclusive;
      any_failed |= c.status == pk::CheckStatus::Failed;
      any_inconclusive |= inconclusive;
      std::printf("[%s] %-15s w=%-20s residual=%-12.4e tolerance=%-12.4e\n",
                  c.passed() ? "PASS" : (inconclusive ? "INCONCLUSIVE" : "FAIL"),
                  c.name.c_str(), pk::complex_to_string(w).c_str(), c.residual, c.tolerance);
      csv += pk::csv_number(w.real()) + "," + pk::csv_number(w.imag()) + "," + c.name + "," +
             (c.passed() ? "1" : "0") + "," + (inconclusive ? "1" : "0") + "," +
             pk::csv_number(c.residual) + "," + pk::csv_number(c.tolerance) + "\n";
    }
  }
  out["reports"] = reports;
  write_output(o.out_path, o.format == "json" ? out.dump(2) + "\n" : csv);
  if (any_failed) return kExitCheckFailed;
  if (any_inconclusive) return kExitInconclusive;
  return kExitOk;
}

int cmd_sweep(const CommonOptions& o) {
  const ResolvedConfig rc = resolve(o, true);
  const auto ev = pk::make_green_evaluator(rc.domain);
  std::string csv;
  if (!o.r_grid.empty()) {
    csv = "point_re,point_im,r,g\n";
    for (Complex w : rc.points)
      for (double r : o.r_grid) {
        const pk::ValueEstimate g = pk::g_value(*ev, w, r, rc.verify);
        csv += pk::csv_number(w.real()) + "," + pk::csv_number(w.imag()) + "," +
               pk::csv_number(r) + "," + pk::csv_number(g.value) + "\n";
      }
  } else {
    if (rc.points.size() < 1) throw ConfigError("sweep needs --r-grid or points");
    csv = "point_re,point_im,bergman,hardy,saitoh_gap\n";
    for (Complex w : rc.points) {
      const pk::KernelValues k = pk::compute_kernels(*ev, w, rc.verify, false);
      csv += pk::csv_number(w.real()) + "," + pk::csv_number(w.imag()) + "," +
             pk::csv_number(k.bergman) + "," + pk::csv_number(k.hardy) + "," +
             pk::csv_number(k.saitoh_gap) + "\n";
    }
  }
  std::fputs(csv.c_str(), stdout);
  write_output(o.out_path, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman / conjugate-Hardy kernel computations on circular planar domains"};
  app.require_subcommand(1);

  CommonOptions ok, ov, os;
  CLI::App* kernels = app.add_subcommand("kernels", "kernel diagonals, capacities, gaps");
  add_common(kernels, ok);
  CLI::App* verify = app.add_subcommand("verify", "run the inequality/limit checks");
  add_common(verify, ov);
  CLI::App* sweep = app.add_subcommand("sweep", "CSV sweeps over r or over points");
  add_common(sweep, os);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (kernels->parsed()) {
      apply_config(*kernels, ok);
      return cmd_kernels(ok);
    }
    if (verify->parsed()) {
      apply_config(*verify, ov);
      return cmd_verify(ov);
    }
    if (sweep->parsed()) {
      apply_config(*sweep, os);
      return cmd_sweep(os);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pk::ConditioningError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitConfig;
}
