#pragma once

#include <memory>
#include <optional>

#include "pk/geometry.hpp"

namespace pk {

enum class GreenMethod { ClosedFormDisc, ImageSeriesAnnulus, ChargeSimulation };

struct GreenOptions {
  // Series terms / charges per boundary component. 0 picks a default
  // (adaptive truncation for the annulus series, 256 charges per component).
  int truncation = 0;
  std::optional<GreenMethod> force_method;
};

/// Green's function of a circular domain, normalized so that
/// G(z,w) - log|z-w| is harmonic in z and G vanishes on the boundary.
/// Evaluation is pure; instances are immutable after construction.
class GreenEvaluator {
 public:
  virtual ~GreenEvaluator() = default;

  const DomainSpec& domain() const { return domain_; }
  GreenMethod method() const { return method_; }

  /// Regular part R(z,w) = G(z,w) - log|z-w|, smooth across z == w.
  virtual double regular_part(Complex z, Complex w) const = 0;

  /// Outer-normal derivative of z -> G(z,w) at a boundary node, from the
  /// analytic gradient of the representation. Always positive; a
  /// nonpositive value means the evaluator is broken and throws.
  virtual double normal_derivative(const BoundaryPoint& p, Complex w) const = 0;

  /// G(z,w). Requires z, w interior and z != w.
  double green(Complex z, Complex w) const;

  /// Logarithmic capacity factor c_beta = exp(regular part on the diagonal).
  double capacity(Complex z0) const;

  /// Bergman kernel B(z,w) from the mixed Wirtinger derivative of the
  /// regular part (central differences, step h), scaled so that the unit
  /// disc gives 1/(pi (1 - z conj(w))^2).
  Complex bergman(Complex z, Complex w, double step = 1e-4) const;

 protected:
  GreenEvaluator(DomainSpec d, GreenMethod m) : domain_(std::move(d)), method_(m) {}

  DomainSpec domain_;
  GreenMethod method_;
};

std::unique_ptr<GreenEvaluator> make_green_evaluator(const DomainSpec& domain,
                                                     const GreenOptions& opts = {});

}  // namespace pk
