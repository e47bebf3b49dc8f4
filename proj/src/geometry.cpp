#include "pk/geometry.hpp"

#include <cmath>
#include <numbers>

namespace pk {

namespace {
constexpr double kPi = std::numbers::pi;
}

DomainSpec DomainSpec::unit_disc() { return DomainSpec{DomainKind::UnitDisc, 0.0, {}}; }

DomainSpec DomainSpec::annulus(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("annulus: q must be in (0,1)");
  return DomainSpec{DomainKind::Annulus, q, {}};
}

DomainSpec DomainSpec::circular(std::vector<Hole> holes) {
  if (holes.empty())
    throw std::invalid_argument("circular: at least one hole required (use unit_disc otherwise)");
  for (std::size_t i = 0; i < holes.size(); ++i) {
    const Hole& h = holes[i];
    if (!(h.radius > 0.0)) throw std::invalid_argument("circular: hole radius must be positive");
    if (std::abs(h.center) + h.radius >= 1.0)
      throw std::invalid_argument("circular: hole closure must lie inside the open unit disc");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(holes[j].center - h.center) <= holes[j].radius + h.radius)
        throw std::invalid_argument("circular: hole closures must be pairwise disjoint");
    }
  }
  return DomainSpec{DomainKind::CircularDomain, 0.0, std::move(holes)};
}

int DomainSpec::boundary_component_count() const {
  switch (kind) {
    case DomainKind::UnitDisc: return 1;
    case DomainKind::Annulus: return 2;
    case DomainKind::CircularDomain: return 1 + static_cast<int>(holes.size());
  }
  return 0;
}

bool contains(const DomainSpec& domain, Complex z) {
  const double a = std::abs(z);
  switch (domain.kind) {
    case DomainKind::UnitDisc:
      return a < 1.0;
    case DomainKind::Annulus:
      return a > domain.q && a < 1.0;
    case DomainKind::CircularDomain:
      if (a >= 1.0) return false;
      for (const Hole& h : domain.holes)
        if (std::abs(z - h.center) <= h.radius) return false;
      return true;
  }
  return false;
}

double dist_to_boundary(const DomainSpec& domain, Complex z) {
  const double a = std::abs(z);
  double d = 1.0 - a;
  if (domain.kind == DomainKind::Annulus) d = std::min(d, a - domain.q);
  if (domain.kind == DomainKind::CircularDomain)
    for (const Hole& h : domain.holes) d = std::min(d, std::abs(z - h.center) - h.radius);
  return d;
}

namespace {

// One circle component. `outward` is +1 when the circle's radial direction
// points out of the domain, -1 for a hole boundary.
void sample_circle(std::vector<BoundaryPoint>& out, Complex center, double radius,
                   double outward, int component, int n) {
  const double w = 2.0 * kPi * radius / n;
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * k / n;
    const Complex dir = std::polar(1.0, theta);
    out.push_back(BoundaryPoint{center + radius * dir, outward * dir, w, component});
  }
}

}  // namespace

std::vector<BoundaryPoint> sample_boundary(const DomainSpec& domain, int nodes_per_component) {
  if (nodes_per_component <= 0)
    throw std::invalid_argument("sample_boundary: node count must be positive");
  std::vector<BoundaryPoint> out;
  out.reserve(static_cast<std::size_t>(nodes_per_component) * domain.boundary_component_count());
  sample_circle(out, 0.0, 1.0, +1.0, 0, nodes_per_component);
  if (domain.kind == DomainKind::Annulus)
    sample_circle(out, 0.0, domain.q, -1.0, 1, nodes_per_component);
  if (domain.kind == DomainKind::CircularDomain)
    for (std::size_t j = 0; j < domain.holes.size(); ++j)
      sample_circle(out, domain.holes[j].center, domain.holes[j].radius, -1.0,
                    static_cast<int>(j) + 1, nodes_per_component);
  return out;
}

}  // namespace pk
