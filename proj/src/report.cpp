#include "pk/report.hpp"

#include <cstdio>

namespace pk {

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string complex_to_string(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string domain_to_string(const DomainSpec& domain) {
  switch (domain.kind) {
    case DomainKind::UnitDisc: return "disc";
    case DomainKind::Annulus: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "annulus q=%.12g", domain.q);
      return buf;
    }
    case DomainKind::CircularDomain: {
      std::string s = "circular holes=[";
      for (std::size_t i = 0; i < domain.holes.size(); ++i) {
        if (i) s += ",";
        char buf[96];
        std::snprintf(buf, sizeof(buf), "(%s,%.12g)", complex_to_string(domain.holes[i].center).c_str(),
                      domain.holes[i].radius);
        s += buf;
      }
      return s + "]";
    }
  }
  return "?";
}

Json domain_to_json(const DomainSpec& domain) {
  Json j;
  switch (domain.kind) {
    case DomainKind::UnitDisc: j["kind"] = "disc"; break;
    case DomainKind::Annulus:
      j["kind"] = "annulus";
      j["q"] = domain.q;
      break;
    case DomainKind::CircularDomain: {
      j["kind"] = "circular";
      Json holes = Json::array();
      for (const Hole& h : domain.holes)
        holes.push_back({{"center_re", h.center.real()},
                         {"center_im", h.center.imag()},
                         {"radius", h.radius}});
      j["holes"] = holes;
      break;
    }
  }
  return j;
}

Json options_to_json(const VerifyOptions& opts) {
  Json j;
  j["basis_degree"] = opts.basis_degree;
  j["boundary_nodes"] = opts.boundary_nodes;
  j["area_resolution"] = opts.area_resolution;
  j["r_grid"] = opts.r_grid;
  return j;
}

Json check_to_json(const CheckResult& check) {
  Json j;
  j["name"] = check.name;
  j["passed"] = check.passed();
  j["inconclusive"] = check.status == CheckStatus::Inconclusive;
  j["residual"] = check.residual;
  j["tolerance"] = check.tolerance;
  Json measured = Json::object();
  for (const Measured& m : check.measured) measured[m.label] = m.value;
  j["measured"] = measured;
  j["notes"] = check.notes;
  return j;
}

Json report_to_json(const VerificationReport& report) {
  Json j;
  Json config = options_to_json(report.config);
  config["domain"] = domain_to_json(report.domain);
  config["point_re"] = report.w.real();
  config["point_im"] = report.w.imag();
  j["config"] = config;
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) checks.push_back(check_to_json(c));
  j["checks"] = checks;
  return j;
}

Json kernels_to_json(Complex w, const KernelValues& k) {
  Json j;
  j["point_re"] = w.real();
  j["point_im"] = w.imag();
  j["bergman"] = k.bergman;
  j["bergman_err"] = k.bergman_err;
  j["hardy"] = k.hardy;
  j["hardy_err"] = k.hardy_err;
  j["pi_bergman"] = 3.141592653589793238462643383279502884 * k.bergman;
  j["saitoh_gap"] = k.saitoh_gap;
  j["saitoh_gap_err"] = k.saitoh_gap_err;
  j["c_beta_sq"] = k.c_beta_sq;
  j["suita_gap"] = k.suita_gap;
  j["g0"] = k.g0;
  j["g0_err"] = k.g0_err;
  if (k.convergence_delta >= 0.0) j["convergence_delta"] = k.convergence_delta;
  return j;
}

}  // namespace pk
