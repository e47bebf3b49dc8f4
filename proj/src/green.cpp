#include "pk/green.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <mutex>
#include <numbers>

namespace pk {

namespace {
constexpr double kPi = std::numbers::pi;

void require_interior(const DomainSpec& d, Complex z, const char* what) {
  if (!contains(d, z)) throw std::domain_error(std::string(what) + ": point outside the domain");
}
}  // namespace

double GreenEvaluator::green(Complex z, Complex w) const {
  require_interior(domain_, z, "green");
  require_interior(domain_, w, "green");
  if (z == w) throw std::domain_error("green: coincident points");
  return std::log(std::abs(z - w)) + regular_part(z, w);
}

double GreenEvaluator::capacity(Complex z0) const {
  require_interior(domain_, z0, "capacity");
  return std::exp(regular_part(z0, z0));
}

Complex GreenEvaluator::bergman(Complex z, Complex w, double h) const {
  require_interior(domain_, z, "bergman");
  require_interior(domain_, w, "bergman");
  const Complex shifts[4] = {Complex(h, 0), Complex(-h, 0), Complex(0, h), Complex(0, -h)};
  for (const Complex& sz : shifts) {
    if (!contains(domain_, z + sz) || !contains(domain_, w + sz))
      throw std::domain_error("bergman: finite-difference step leaves the domain");
  }
  // Mixed second partials of the regular part in (Re z, Im z) x (Re w, Im w).
  auto mixed = [&](Complex dz, Complex dw) {
    return (regular_part(z + dz, w + dw) - regular_part(z + dz, w - dw) -
            regular_part(z - dz, w + dw) + regular_part(z - dz, w - dw)) /
           (4.0 * h * h);
  };
  const double rxx = mixed(Complex(h, 0), Complex(h, 0));
  const double rxy = mixed(Complex(h, 0), Complex(0, h));
  const double ryx = mixed(Complex(0, h), Complex(h, 0));
  const double ryy = mixed(Complex(0, h), Complex(0, h));
  // d/dz d/dwbar = 1/4 [(Rxx + Ryy) + i (Rxy - Ryx)]; the singular part
  // log|z-w| contributes nothing off-diagonal. Scale 2/pi recovers the
  // standard Bergman normalization.
  const Complex mixed_wirtinger = 0.25 * Complex(rxx + ryy, rxy - ryx);
  return (2.0 / kPi) * mixed_wirtinger;
}

namespace {

// ---------------------------------------------------------------------------
// Unit disc: G(z,w) = log|z-w| - log|1 - conj(w) z|.

class DiscGreen final : public GreenEvaluator {
 public:
  DiscGreen() : GreenEvaluator(DomainSpec::unit_disc(), GreenMethod::ClosedFormDisc) {}

  double regular_part(Complex z, Complex w) const override {
    return -std::log(std::abs(1.0 - std::conj(w) * z));
  }

  double normal_derivative(const BoundaryPoint& p, Complex w) const override {
    require_interior(domain_, w, "normal_derivative");
    // Poisson kernel on |z| = 1.
    const double d = (1.0 - std::norm(w)) / std::norm(p.position - w);
    if (!(d > 0.0)) throw std::runtime_error("normal_derivative: nonpositive value");
    return d;
  }
};

// ---------------------------------------------------------------------------
// Annulus q < |z| < 1, via the Fourier series of the harmonic regular part.
//
// With z = rho e^{i theta}, w = s e^{i phi}, delta = theta - phi:
//   R(z,w) = -log rho? no; R = H - correction, where
//   H(z,w) = -(log rho)(log s)/log q
//            + sum_{n>=1} (x2^n - x1^n + x3^n - x4^n) / (n (q^{2n}-1)) cos(n delta)
//   x1 = rho s, x2 = q^2 rho / s, x3 = q^2 s / rho, x4 = q^2/(rho s)
// and G = log|z-w| + H. All four ratios lie in (0,1) for interior points.

class AnnulusGreen final : public GreenEvaluator {
 public:
  AnnulusGreen(double q, int truncation)
      : GreenEvaluator(DomainSpec::annulus(q), GreenMethod::ImageSeriesAnnulus),
        q_(q),
        max_terms_(truncation > 0 ? truncation : 4000) {}

  double regular_part(Complex z, Complex w) const override {
    return harmonic_part(std::abs(z), std::arg(z) - std::arg(w), std::abs(w));
  }

  double normal_derivative(const BoundaryPoint& p, Complex w) const override {
    require_interior(domain_, w, "normal_derivative");
    const double sigma = p.component_index == 0 ? 1.0 : -1.0;  // d/dnu = sigma d/drho
    const double rho = p.component_index == 0 ? 1.0 : q_;
    const double d = std::real(p.outer_normal / (p.position - w)) +
                     sigma * harmonic_part_drho(rho, std::arg(p.position) - std::arg(w),
                                                std::abs(w));
    if (!(d > 0.0)) throw std::runtime_error("normal_derivative: nonpositive value");
    return d;
  }

 private:
  double harmonic_part(double rho, double delta, double s) const {
    return series(rho, delta, s, false);
  }
  double harmonic_part_drho(double rho, double delta, double s) const {
    return series(rho, delta, s, true);
  }

  // Shared evaluation of H and dH/drho.
  double series(double rho, double delta, double s, bool drho) const {
    const double logq = std::log(q_);
    double sum = drho ? -std::log(s) / (rho * logq)
                      : -(std::log(rho) * std::log(s)) / logq;
    const double x1 = rho * s, x2 = q_ * q_ * rho / s, x3 = q_ * q_ * s / rho,
                 x4 = q_ * q_ / (rho * s);
    const double c1 = std::cos(delta);
    double cm1 = 1.0, c0 = c1;  // cos((n-1) delta), cos(n delta)
    double p1 = x1, p2 = x2, p3 = x3, p4 = x4, q2n = q_ * q_;
    for (int n = 1; n <= max_terms_; ++n) {
      const double denom = q2n - 1.0;
      double term;
      if (drho)
        term = (p2 - p1 - p3 + p4) / denom / rho * c0;
      else
        term = (p2 - p1 + p3 - p4) / (n * denom) * c0;
      sum += term;
      const double bound = (p1 + p2 + p3 + p4) / std::abs(denom) / (drho ? rho : n);
      if (bound < 1e-16 * (1.0 + std::abs(sum))) break;
      p1 *= x1; p2 *= x2; p3 *= x3; p4 *= x4; q2n *= q_ * q_;
      const double cn = 2.0 * c1 * c0 - cm1;
      cm1 = c0; c0 = cn;
    }
    return sum;
  }

  double q_;
  int max_terms_;
};

// ---------------------------------------------------------------------------
// Charge simulation for circular domains (and, as a cross-check, the
// annulus): R(z,w) = c0 + sum_j s_j log|z - p_j| with charges p_j on rings
// exterior to the domain, strengths least-squares fitted so that
// R = -log|z-w| on the boundary. Strengths depend on w; the collocation
// QR factorization is shared across all w.

class ChargeGreen final : public GreenEvaluator {
 public:
  ChargeGreen(const DomainSpec& d, int charges_per_component)
      : GreenEvaluator(d, GreenMethod::ChargeSimulation) {
    const int m = charges_per_component > 0 ? charges_per_component : 256;
    place_ring(0.0, 1.0 * kOuterInflate, m);
    if (d.kind == DomainKind::Annulus) place_ring(0.0, d.q / kOuterInflate, m);
    if (d.kind == DomainKind::CircularDomain)
      for (const Hole& h : d.holes) place_ring(h.center, h.radius / kOuterInflate, m);

    // Collocation at 4x the charge count per component.
    colloc_ = sample_boundary(d, 4 * m);
    const auto n_rows = static_cast<Eigen::Index>(colloc_.size());
    const auto n_cols = static_cast<Eigen::Index>(charges_.size()) + 1;
    Eigen::MatrixXd A(n_rows, n_cols);
    for (Eigen::Index i = 0; i < n_rows; ++i) {
      for (Eigen::Index j = 0; j + 1 < n_cols; ++j)
        A(i, j) = std::log(std::abs(colloc_[i].position - charges_[j]));
      A(i, n_cols - 1) = 1.0;
    }
    qr_ = std::make_shared<Eigen::ColPivHouseholderQR<Eigen::MatrixXd>>(A);
  }

  double regular_part(Complex z, Complex w) const override {
    const Eigen::VectorXd& s = strengths(w);
    double r = s(s.size() - 1);
    for (std::size_t j = 0; j < charges_.size(); ++j)
      r += s(static_cast<Eigen::Index>(j)) * std::log(std::abs(z - charges_[j]));
    return r;
  }

  double normal_derivative(const BoundaryPoint& p, Complex w) const override {
    require_interior(domain_, w, "normal_derivative");
    const Eigen::VectorXd& s = strengths(w);
    double d = std::real(p.outer_normal / (p.position - w));
    for (std::size_t j = 0; j < charges_.size(); ++j)
      d += s(static_cast<Eigen::Index>(j)) *
           std::real(p.outer_normal / (p.position - charges_[j]));
    if (!(d > 0.0)) throw std::runtime_error("normal_derivative: nonpositive value");
    return d;
  }

 private:
  static constexpr double kOuterInflate = 1.08;

  void place_ring(Complex center, double radius, int m) {
    for (int k = 0; k < m; ++k)
      charges_.push_back(center + std::polar(radius, 2.0 * kPi * k / m));
  }

  const Eigen::VectorXd& strengths(Complex w) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!cached_ || cached_w_ != w) {
      Eigen::VectorXd b(static_cast<Eigen::Index>(colloc_.size()));
      for (std::size_t i = 0; i < colloc_.size(); ++i)
        b(static_cast<Eigen::Index>(i)) = -std::log(std::abs(colloc_[i].position - w));
      cached_strengths_ = qr_->solve(b);
      cached_w_ = w;
      cached_ = true;
    }
    return cached_strengths_;
  }

  std::vector<Complex> charges_;
  std::vector<BoundaryPoint> colloc_;
  std::shared_ptr<Eigen::ColPivHouseholderQR<Eigen::MatrixXd>> qr_;

  mutable std::mutex mutex_;
  mutable bool cached_ = false;
  mutable Complex cached_w_;
  mutable Eigen::VectorXd cached_strengths_;
};

}  // namespace

std::unique_ptr<GreenEvaluator> make_green_evaluator(const DomainSpec& domain,
                                                     const GreenOptions& opts) {
  GreenMethod m;
  if (opts.force_method) {
    m = *opts.force_method;
  } else {
    switch (domain.kind) {
      case DomainKind::UnitDisc: m = GreenMethod::ClosedFormDisc; break;
      case DomainKind::Annulus: m = GreenMethod::ImageSeriesAnnulus; break;
      case DomainKind::CircularDomain: m = GreenMethod::ChargeSimulation; break;
    }
  }
  switch (m) {
    case GreenMethod::ClosedFormDisc:
      if (domain.kind != DomainKind::UnitDisc)
        throw std::invalid_argument("ClosedFormDisc only applies to the unit disc");
      return std::make_unique<DiscGreen>();
    case GreenMethod::ImageSeriesAnnulus:
      if (domain.kind != DomainKind::Annulus)
        throw std::invalid_argument("ImageSeriesAnnulus only applies to the annulus");
      return std::make_unique<AnnulusGreen>(domain.q, opts.truncation);
    case GreenMethod::ChargeSimulation:
      if (domain.kind == DomainKind::UnitDisc)
        throw std::invalid_argument("ChargeSimulation: use the closed form on the disc");
      return std::make_unique<ChargeGreen>(domain, opts.truncation);
  }
  throw std::logic_error("unreachable");
}

}  // namespace pk
