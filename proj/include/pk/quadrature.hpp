#pragma once

#include <Eigen/Core>
#include <functional>

#include "pk/green.hpp"

namespace pk {

/// Boundary nodes together with the values of (dG(.,w)/dnu)^{-1}; the
/// measure of the conjugate Hardy inner product (without the 1/2pi).
struct BoundarySampling {
  std::vector<BoundaryPoint> points;
  std::vector<double> weight_values;
  Complex center;
};

BoundarySampling make_boundary_sampling(const GreenEvaluator& ev, Complex w,
                                        int nodes_per_component);

/// Trapezoidal-in-angle sum of integrand * weight_value * arclength_weight.
double boundary_integral(const BoundarySampling& sampling,
                         const std::function<double(Complex)>& integrand);

/// Area rule over the sublevel set {z in D : e^{2 G(z,w)} < r}.
struct SublevelQuadrature {
  Eigen::VectorXcd nodes;
  Eigen::VectorXd weights;
  double level_r = 1.0;
  Complex center;
  double estimated_area_error = 0.0;

  double total_area() const { return weights.sum(); }
};

struct SublevelOptions {
  int radial_order = 0;     // Gauss-Legendre points per radial interval; 0 = auto
  int ray_samples = 0;      // indicator samples per ray for root bracketing; 0 = auto
};

/// Polar rule aligned with the level geometry: rays (from w on simply
/// connected domains, from the hole axis on the annulus) are cut at the
/// level curve by bisection, then integrated radially by Gauss-Legendre.
/// `resolution` is the number of angular rays. r = 1 gives the full domain.
SublevelQuadrature build_sublevel_rule(const GreenEvaluator& ev, Complex w, double r,
                                       int resolution, const SublevelOptions& opts = {});

template <typename F>
double integrate(const SublevelQuadrature& rule, F&& f) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) s += rule.weights(i) * f(rule.nodes(i));
  return s;
}

struct IntegralEstimate {
  double value = 0.0;
  double est_error = 0.0;
};

/// Integral of f_sq over the shell {z in D : e^{2 G(z,w)} >= r}. Uses a
/// boundary-collar rule when the shell hugs the boundary (r near 1),
/// otherwise the full-domain rule minus the sublevel rule.
IntegralEstimate shell_integral(const GreenEvaluator& ev, Complex w, double r,
                                const std::function<double(Complex)>& f_sq, int resolution,
                                const SublevelOptions& opts = {});

}  // namespace pk
