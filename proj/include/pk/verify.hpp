#pragma once

#include <string>

#include "pk/extremal.hpp"

namespace pk {

enum class Check {
  Concavity,
  SlopeChain,
  Capacity,
  BoundaryLimit,
  Sandwich,
  Suita,
  Saitoh,
};

const std::vector<Check>& all_checks();
std::string check_name(Check c);

enum class CheckStatus { Passed, Failed, Inconclusive };

struct Measured {
  std::string label;
  double value = 0.0;
};

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Failed;
  std::vector<Measured> measured;
  double tolerance = 0.0;
  double residual = 0.0;
  std::string notes;

  bool passed() const { return status == CheckStatus::Passed; }
};

struct VerifyOptions {
  int basis_degree = 40;
  int boundary_nodes = 512;
  int area_resolution = 256;
  std::vector<double> r_grid;  // concavity grid; empty = 9 points in [0.1, 1]
};

struct VerificationReport {
  DomainSpec domain;
  Complex w;
  std::vector<CheckResult> checks;
  VerifyOptions config;
};

/// Minimal squared norm g_w(-log r) with a quadrature + truncation error
/// estimate, taking the best admissible basis for the domain.
struct ValueEstimate {
  double value = 0.0;
  double est_error = 0.0;
};

ValueEstimate g_value(const GreenEvaluator& ev, Complex w, double r, const VerifyOptions& opts);
ValueEstimate hardy_value(const GreenEvaluator& ev, Complex w, const VerifyOptions& opts);

/// The kernel quantities surfaced by the CLI, with error estimates.
struct KernelValues {
  double g0 = 0.0, g0_err = 0.0;
  double bergman = 0.0, bergman_err = 0.0;
  double hardy = 0.0, hardy_err = 0.0;
  double c_beta_sq = 0.0;
  double saitoh_gap = 0.0, saitoh_gap_err = 0.0;
  double suita_gap = 0.0;
  // Max relative change of (B, hR, c^2) under doubled degree + resolution;
  // negative when the doubling pass was not requested.
  double convergence_delta = -1.0;
};

KernelValues compute_kernels(const GreenEvaluator& ev, Complex w, const VerifyOptions& opts,
                             bool with_convergence_delta = false);

CheckResult run_check(const GreenEvaluator& ev, Check check, Complex w,
                      const VerifyOptions& opts);

VerificationReport run_checks(const GreenEvaluator& ev, Complex w,
                              const std::vector<Check>& checks, const VerifyOptions& opts);

/// Basis candidates used by the extremal solves on a given domain. The best
/// (smallest) admissible value wins; each candidate is a valid upper bound.
std::vector<HolomorphicBasis> area_basis_candidates(const DomainSpec& domain, Complex w,
                                                    int degree);
HolomorphicBasis boundary_basis(const DomainSpec& domain, int degree);

}  // namespace pk
