#include "pk/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace pk {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes/weights on [-1,1], Golub-Welsch, cached per order.

struct GLRule {
  Eigen::VectorXd x, w;
};

const GLRule& gauss_legendre(int n) {
  static std::map<int, GLRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GLRule rule;
  rule.x = es.eigenvalues();
  rule.w = 2.0 * es.eigenvectors().row(0).array().square();
  return cache.emplace(n, std::move(rule)).first->second;
}

// ---------------------------------------------------------------------------
// Ray clipping: maximal sub-intervals of [lo,hi] on which `inside` holds,
// bracketed on a uniform sample grid and sharpened by bisection.

using Indicator = std::function<bool(double)>;

double bisect_edge(const Indicator& inside, double a, double b) {
  // inside(a) != inside(b)
  for (int it = 0; it < 60; ++it) {
    const double m = 0.5 * (a + b);
    if (inside(m) == inside(a))
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

std::vector<std::pair<double, double>> ray_intervals(const Indicator& inside, double lo,
                                                     double hi, int samples) {
  std::vector<std::pair<double, double>> out;
  const double h = (hi - lo) / samples;
  bool prev = inside(lo);  // rays may start inside (e.g. at the pole itself)
  double prev_t = lo;
  double start = lo;
  for (int j = 0; j <= samples; ++j) {
    const double t = (j == samples) ? hi : lo + (j + 0.5) * h;
    const bool cur = (j == samples) ? false : inside(t);
    if (cur != prev) {
      const double edge = bisect_edge(inside, prev_t, t);
      if (cur)
        start = edge;
      else if (edge > start)
        out.emplace_back(start, edge);
    }
    prev = cur;
    prev_t = t;
  }
  return out;
}

struct RayFrame {
  Complex origin;
  double lo, hi;
};

RayFrame pole_frame(Complex w) { return {w, 0.0, 1.0 + std::abs(w) + 1e-3}; }

bool sublevel_indicator(const GreenEvaluator& ev, Complex z, Complex w, double log_r);

// Rays from the origin track the annulus geometry exactly when the sublevel
// set wraps the hole; when it is a localized blob around w, most such rays
// miss it and rays from the pole resolve it far better.
RayFrame ray_frame(const GreenEvaluator& ev, Complex w, double log_r, int resolution) {
  const DomainSpec& d = ev.domain();
  if (d.kind != DomainKind::Annulus) return pole_frame(w);
  const double probe_rho = std::abs(w);
  const double dtheta = 2.0 * kPi / resolution;
  for (int k = 0; k < resolution; ++k)
    if (!sublevel_indicator(ev, std::polar(probe_rho, dtheta * k), w, log_r))
      return pole_frame(w);
  return {Complex(0.0), d.q, 1.0};
}

bool sublevel_indicator(const GreenEvaluator& ev, Complex z, Complex w, double log_r) {
  if (!contains(ev.domain(), z)) return false;
  if (log_r >= 0.0) return true;  // r = 1: the whole domain
  const double dist = std::abs(z - w);
  if (dist == 0.0) return true;
  return 2.0 * (std::log(dist) + ev.regular_part(z, w)) < log_r;
}

double sublevel_area_only(const GreenEvaluator& ev, Complex w, double r, int resolution,
                          int samples, const RayFrame& frame) {
  const double log_r = std::log(r);
  double area = 0.0;
  const double dtheta = 2.0 * kPi / resolution;
  for (int k = 0; k < resolution; ++k) {
    const Complex dir = std::polar(1.0, dtheta * k);
    auto inside = [&](double rho) {
      return sublevel_indicator(ev, frame.origin + rho * dir, w, log_r);
    };
    for (const auto& [a, b] : ray_intervals(inside, frame.lo, frame.hi, samples))
      area += 0.5 * (b * b - a * a) * dtheta;
  }
  return area;
}

}  // namespace

BoundarySampling make_boundary_sampling(const GreenEvaluator& ev, Complex w,
                                        int nodes_per_component) {
  BoundarySampling s;
  s.center = w;
  s.points = sample_boundary(ev.domain(), nodes_per_component);
  s.weight_values.reserve(s.points.size());
  for (const BoundaryPoint& p : s.points) s.weight_values.push_back(1.0 / ev.normal_derivative(p, w));
  return s;
}

double boundary_integral(const BoundarySampling& sampling,
                         const std::function<double(Complex)>& integrand) {
  if (sampling.points.empty()) throw std::invalid_argument("boundary_integral: empty sampling");
  double sum = 0.0;
  for (std::size_t i = 0; i < sampling.points.size(); ++i)
    sum += integrand(sampling.points[i].position) * sampling.weight_values[i] *
           sampling.points[i].arclength_weight;
  return sum;
}

SublevelQuadrature build_sublevel_rule(const GreenEvaluator& ev, Complex w, double r,
                                       int resolution, const SublevelOptions& opts) {
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("build_sublevel_rule: r must be in (0,1]");
  if (resolution < 32) throw std::invalid_argument("build_sublevel_rule: resolution must be >= 32");
  if (!contains(ev.domain(), w)) throw std::domain_error("build_sublevel_rule: center outside domain");

  const int gl_order = opts.radial_order > 0 ? opts.radial_order : std::max(24, resolution / 8);
  const int samples = opts.ray_samples > 0 ? opts.ray_samples : std::max(256, resolution / 2);
  const GLRule& gl = gauss_legendre(gl_order);
  const double log_r = std::log(r);
  const RayFrame frame = ray_frame(ev, w, log_r, resolution);
  const double dtheta = 2.0 * kPi / resolution;

  SublevelQuadrature rule;
  rule.level_r = r;
  rule.center = w;
  std::vector<Complex> nodes;
  std::vector<double> weights;
  nodes.reserve(static_cast<std::size_t>(resolution) * gl_order);
  weights.reserve(nodes.capacity());
  double area = 0.0;
  for (int k = 0; k < resolution; ++k) {
    const Complex dir = std::polar(1.0, dtheta * k);
    auto inside = [&](double rho) {
      return sublevel_indicator(ev, frame.origin + rho * dir, w, log_r);
    };
    for (const auto& [a, b] : ray_intervals(inside, frame.lo, frame.hi, samples)) {
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int i = 0; i < gl_order; ++i) {
        const double rho = mid + half * gl.x(i);
        nodes.push_back(frame.origin + rho * dir);
        weights.push_back(rho * half * gl.w(i) * dtheta);
      }
      area += 0.5 * (b * b - a * a) * dtheta;
    }
  }
  rule.nodes = Eigen::Map<Eigen::VectorXcd>(nodes.data(), static_cast<Eigen::Index>(nodes.size()));
  rule.weights =
      Eigen::Map<Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size()));

  const double coarse = sublevel_area_only(ev, w, r, resolution / 2, samples / 2, frame);
  rule.estimated_area_error = std::abs(area - coarse) + 1e-14 * std::abs(area);
  return rule;
}

namespace {

// ---------------------------------------------------------------------------
// Boundary-collar shell rule. One circle component of the collar:
// local polar coordinates about `center`, boundary at rho = R, the domain
// lying on the side dir (+1: rho > R, i.e. a hole boundary).

struct CollarComponent {
  Complex center;
  double boundary_radius;
  double dir;       // inward radial direction sign
  double max_depth; // how far the collar may extend before we give up
};

std::vector<CollarComponent> collar_components(const DomainSpec& d) {
  std::vector<CollarComponent> comps;
  switch (d.kind) {
    case DomainKind::UnitDisc:
      comps.push_back({Complex(0.0), 1.0, -1.0, 0.5});
      break;
    case DomainKind::Annulus:
      comps.push_back({Complex(0.0), 1.0, -1.0, 0.5 * (1.0 - d.q)});
      comps.push_back({Complex(0.0), d.q, +1.0, 0.5 * (1.0 - d.q)});
      break;
    case DomainKind::CircularDomain: {
      double outer_gap = 1.0;
      for (const Hole& h : d.holes)
        outer_gap = std::min(outer_gap, 1.0 - std::abs(h.center) - h.radius);
      comps.push_back({Complex(0.0), 1.0, -1.0, 0.5 * outer_gap});
      for (std::size_t j = 0; j < d.holes.size(); ++j) {
        double gap = 1.0 - std::abs(d.holes[j].center) - d.holes[j].radius;
        for (std::size_t i = 0; i < d.holes.size(); ++i)
          if (i != j)
            gap = std::min(gap, std::abs(d.holes[i].center - d.holes[j].center) -
                                    d.holes[i].radius - d.holes[j].radius);
        comps.push_back({d.holes[j].center, d.holes[j].radius, +1.0, 0.5 * gap});
      }
      break;
    }
  }
  return comps;
}

// Shell integral by collar rule at one angular resolution. Returns nullopt
// when the shell is not a simple boundary collar at this level.
std::optional<double> collar_shell_value(const GreenEvaluator& ev, Complex w, double r,
                                         const std::function<double(Complex)>& f_sq,
                                         int resolution) {
  const double log_r = std::log(r);
  auto exceeds_level = [&](Complex z) {
    const double dist = std::abs(z - w);
    if (dist == 0.0) return false;
    return 2.0 * (std::log(dist) + ev.regular_part(z, w)) >= log_r;
  };
  const GLRule& gl = gauss_legendre(32);
  const double dtheta = 2.0 * kPi / resolution;
  constexpr int kMarch = 64;

  double total = 0.0;
  for (const CollarComponent& c : collar_components(ev.domain())) {
    for (int k = 0; k < resolution; ++k) {
      const Complex dir = std::polar(1.0, dtheta * k);
      auto at_depth = [&](double t) { return c.center + (c.boundary_radius + c.dir * t) * dir; };
      // First crossing of the level along the inward ray.
      int first_below = -1;
      for (int j = 1; j <= kMarch; ++j) {
        const double t = c.max_depth * j / kMarch;
        if (!exceeds_level(at_depth(t))) {
          first_below = j;
          break;
        }
      }
      if (first_below < 0) return std::nullopt;  // collar thicker than allowed
      // The rest of the probed segment must stay below the level, otherwise
      // the shell is not a plain collar here.
      for (int j = first_below + 1; j <= kMarch; ++j)
        if (exceeds_level(at_depth(c.max_depth * j / kMarch))) return std::nullopt;
      double a = c.max_depth * (first_below - 1) / kMarch;
      double b = c.max_depth * first_below / kMarch;
      for (int it = 0; it < 60; ++it) {
        const double m = 0.5 * (a + b);
        (exceeds_level(at_depth(m)) ? a : b) = m;
      }
      const double depth = 0.5 * (a + b);
      // Radial Gauss-Legendre over local rho between the level and boundary.
      const double rho0 = c.boundary_radius;
      const double rho1 = c.boundary_radius + c.dir * depth;
      const double mid = 0.5 * (rho0 + rho1), half = 0.5 * (rho1 - rho0);
      double seg = 0.0;
      for (int i = 0; i < gl.x.size(); ++i) {
        const double rho = mid + half * gl.x(i);
        seg += gl.w(i) * rho * f_sq(c.center + rho * dir);
      }
      total += std::abs(half) * seg * dtheta;
    }
  }
  return total;
}

}  // namespace

IntegralEstimate shell_integral(const GreenEvaluator& ev, Complex w, double r,
                                const std::function<double(Complex)>& f_sq, int resolution,
                                const SublevelOptions& opts) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("shell_integral: r must be in (0,1)");
  const auto fine = collar_shell_value(ev, w, r, f_sq, resolution);
  if (fine) {
    const auto coarse = collar_shell_value(ev, w, r, f_sq, std::max(32, resolution / 2));
    const double err = coarse ? std::abs(*fine - *coarse) : std::abs(*fine) * 1e-3;
    return {*fine, err + 1e-14 * std::abs(*fine)};
  }
  // Shell is not a boundary collar: integrate full domain minus sublevel.
  auto difference = [&](int res) {
    const auto full = build_sublevel_rule(ev, w, 1.0, res, opts);
    const auto sub = build_sublevel_rule(ev, w, r, res, opts);
    return integrate(full, f_sq) - integrate(sub, f_sq);
  };
  const double v = difference(resolution);
  const double v2 = difference(std::max(32, resolution / 2));
  return {v, std::abs(v - v2) + 1e-14 * std::abs(v)};
}

}  // namespace pk
