#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace pk {

using Complex = std::complex<double>;

enum class DomainKind { UnitDisc, Annulus, CircularDomain };

struct Hole {
  Complex center;
  double radius = 0.0;
};

/// A bounded planar domain with circular boundary components: the unit disc,
/// the annulus q < |z| < 1, or the unit disc minus a set of closed sub-discs.
struct DomainSpec {
  DomainKind kind = DomainKind::UnitDisc;
  double q = 0.0;            // Annulus inner radius
  std::vector<Hole> holes;   // CircularDomain only

  static DomainSpec unit_disc();
  static DomainSpec annulus(double q);
  static DomainSpec circular(std::vector<Hole> holes);

  int boundary_component_count() const;
};

struct BoundaryPoint {
  Complex position;
  Complex outer_normal;       // unit modulus, points out of the domain
  double arclength_weight = 0.0;
  int component_index = 0;
};

bool contains(const DomainSpec& domain, Complex z);

/// Distance from z to the nearest boundary component (negative if z is
/// outside the domain the distance is still to the nearest circle).
double dist_to_boundary(const DomainSpec& domain, Complex z);

/// Equispaced-in-angle nodes on every circle component. Arclength weights
/// come from the exact circle metric (2*pi*R / n per node).
std::vector<BoundaryPoint> sample_boundary(const DomainSpec& domain,
                                           int nodes_per_component);

}  // namespace pk
