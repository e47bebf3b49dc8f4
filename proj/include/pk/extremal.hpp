#pragma once

#include "pk/quadrature.hpp"

namespace pk {

enum class BasisKind { Monomial, Laurent };

/// Finite holomorphic basis (z - center)^n, n in [n_min, n_max]. Monomial
/// bases start at n_min = 0; Laurent bases include negative powers and are
/// admissible only when the center lies in a hole (annulus, circular domain).
struct HolomorphicBasis {
  BasisKind kind = BasisKind::Monomial;
  Complex center;
  int n_min = 0;
  int n_max = 0;

  static HolomorphicBasis monomial(Complex center, int degree) {
    return {BasisKind::Monomial, center, 0, degree};
  }
  static HolomorphicBasis laurent(Complex center, int degree) {
    return {BasisKind::Laurent, center, -degree, degree};
  }
  int size() const { return n_max - n_min + 1; }
};

Complex eval_basis_function(const HolomorphicBasis& basis, int index, Complex z);

struct ExtremalResult {
  double value = 0.0;                 // minimal squared norm
  Eigen::VectorXcd coefficients;      // minimizer in the declared basis
  double gram_condition = 0.0;        // condition estimate of the Gram matrix
  double constraint_residual = 0.0;   // |f(w) - 1|
  HolomorphicBasis basis;
  bool near_boundary = false;         // w within 0.01 of the boundary
};

/// Thrown when the Gram matrix of the basis over the quadrature rule is too
/// ill conditioned to trust (condition estimate > 1e12).
struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// min of the quadrature sum of |f|^2 over {e^{2G(.,w)} < r} subject to
/// f(w) = 1, over the span of the basis. r = 1 gives g_w(0).
ExtremalResult minimize_area_norm(const GreenEvaluator& ev, const HolomorphicBasis& basis,
                                  Complex w, double r, int resolution);

/// B(w) = 1 / g_w(0).
double bergman_diagonal(const GreenEvaluator& ev, const HolomorphicBasis& basis, Complex w,
                        int resolution);

/// Evaluable area minimizer f at r = 1; f(w) = 1 and its squared area norm
/// is g_w(0). Agrees with B(.,w)/B(w,w) up to basis truncation.
struct MinimizerFunction {
  HolomorphicBasis basis;
  Eigen::VectorXcd coefficients;
  Complex operator()(Complex z) const;
};

MinimizerFunction bergman_minimizer(const GreenEvaluator& ev, const HolomorphicBasis& basis,
                                    Complex w, int resolution);

/// min of (1/2pi) \oint |f|^2 (dG(.,w)/dnu)^{-1} d|z| subject to f(w) = 1.
/// The conjugate Hardy diagonal is hardy_diagonal = 1 / value.
ExtremalResult minimize_boundary_norm(const GreenEvaluator& ev, const HolomorphicBasis& basis,
                                      Complex w, int nodes_per_component);

inline double hardy_diagonal(const GreenEvaluator& ev, const HolomorphicBasis& basis, Complex w,
                             int nodes_per_component) {
  return 1.0 / minimize_boundary_norm(ev, basis, w, nodes_per_component).value;
}

/// Constrained minimization over explicit nodes/weights: the common core of
/// the area and boundary problems. Exposed for cross-checks.
ExtremalResult minimize_on_nodes(const Eigen::VectorXcd& nodes, const Eigen::VectorXd& weights,
                                 const HolomorphicBasis& basis, Complex w,
                                 const DomainSpec& domain);

/// Quadrature-free Bergman diagonal from orthonormal expansions, summed in
/// extended precision: the disc closed form 1/(pi (1-|w|^2)^2) and the
/// Laurent-monomial series on the annulus. Accurate to a few ulp; serves as
/// an independent oracle for the extremal and Green-function routes. Throws
/// std::invalid_argument for circular domains (no orthogonal monomial basis).
double series_bergman_diagonal(const DomainSpec& domain, Complex w);

}  // namespace pk
