#include "pk/extremal.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace pk {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_basis(const HolomorphicBasis& basis, const DomainSpec& domain) {
  if (basis.n_min > basis.n_max) throw std::invalid_argument("basis: empty degree range");
  if (basis.kind == BasisKind::Monomial && basis.n_min != 0)
    throw std::invalid_argument("basis: monomial bases start at degree 0");
  if (basis.kind == BasisKind::Laurent) {
    if (domain.kind == DomainKind::UnitDisc)
      throw std::invalid_argument("basis: Laurent basis is not admissible on the disc");
    if (contains(domain, basis.center))
      throw std::invalid_argument("basis: Laurent center must lie outside the domain");
  }
}

// Powers (z-c)^n for n in [n_min, n_max], one column per basis function.
void fill_powers(const HolomorphicBasis& basis, const Eigen::VectorXcd& z,
                 Eigen::MatrixXcd& out) {
  const Eigen::Index n = z.size();
  out.resize(n, basis.size());
  Eigen::VectorXcd zc = z.array() - basis.center;
  Eigen::VectorXcd p(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex v = 1.0;
    if (basis.n_min > 0)
      for (int k = 0; k < basis.n_min; ++k) v *= zc(i);
    else
      for (int k = 0; k > basis.n_min; --k) v /= zc(i);
    p(i) = v;
  }
  for (int j = 0; j < basis.size(); ++j) {
    out.col(j) = p;
    if (j + 1 < basis.size()) p.array() *= zc.array();
  }
}

}  // namespace

Complex eval_basis_function(const HolomorphicBasis& basis, int index, Complex z) {
  const int n = basis.n_min + index;
  const Complex zc = z - basis.center;
  Complex v = 1.0;
  for (int k = 0; k < std::abs(n); ++k) v *= zc;
  return n >= 0 ? v : 1.0 / v;
}

ExtremalResult minimize_on_nodes(const Eigen::VectorXcd& nodes, const Eigen::VectorXd& weights,
                                 const HolomorphicBasis& basis, Complex w,
                                 const DomainSpec& domain) {
  check_basis(basis, domain);
  const int m = basis.size();
  // degenerate least-squares problem; let basis selection skip this candidate
  if (nodes.size() < m) throw ConditioningError("minimize: fewer nodes than basis functions");

  Eigen::MatrixXcd A;
  fill_powers(basis, nodes, A);
  A.array().colwise() *= weights.array().sqrt();

  // Column equilibration keeps the QR well scaled across degree ranges.
  Eigen::VectorXd scale(m);
  for (int j = 0; j < m; ++j) {
    scale(j) = A.col(j).norm();
    if (!(scale(j) > 0.0)) throw ConditioningError("minimize: basis function vanishes on the rule");
    A.col(j) /= scale(j);
  }
  Eigen::VectorXcd v(m);
  for (int j = 0; j < m; ++j) v(j) = eval_basis_function(basis, j, w) / scale(j);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
  const Eigen::MatrixXcd R = qr.matrixR().topRows(m).template triangularView<Eigen::Upper>();
  const double r_max = std::abs(R(0, 0));
  const double r_min = std::abs(R(m - 1, m - 1));
  const double cond = r_min > 0.0 ? (r_max / r_min) * (r_max / r_min)
                                  : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12))
    throw ConditioningError("minimize: Gram condition estimate exceeds 1e12");

  // min ||A c||^2 s.t. v^T c = 1.  With A P = Q R and d = P^{-1} c this is
  // min ||R d||^2 s.t. (P^T v)^T d = 1, solved through g = R^{-T} (P^T v).
  const Eigen::VectorXcd vp = qr.colsPermutation().transpose() * v;
  const Eigen::VectorXcd g =
      R.transpose().template triangularView<Eigen::Lower>().solve(vp);
  const double gnorm2 = g.squaredNorm();
  const Eigen::VectorXcd u = g.conjugate() / gnorm2;
  Eigen::VectorXcd d = R.template triangularView<Eigen::Upper>().solve(u);
  Eigen::VectorXcd c = qr.colsPermutation() * d;
  c.array() /= scale.array();

  ExtremalResult res;
  res.value = 1.0 / gnorm2;
  res.coefficients = c;
  res.gram_condition = cond;
  res.basis = basis;
  res.near_boundary = dist_to_boundary(domain, w) < 0.01;
  Complex fw = 0.0;
  for (int j = 0; j < m; ++j) fw += c(j) * eval_basis_function(basis, j, w);
  res.constraint_residual = std::abs(fw - 1.0);
  return res;
}

ExtremalResult minimize_area_norm(const GreenEvaluator& ev, const HolomorphicBasis& basis,
                                  Complex w, double r, int resolution) {
  check_basis(basis, ev.domain());
  if (!contains(ev.domain(), w)) throw std::domain_error("minimize_area_norm: w outside domain");
  SublevelOptions opts;
  // high Laurent powers vary steeply in rho; give Gauss-Legendre headroom
  opts.radial_order = std::max(32, std::max(std::abs(basis.n_min), std::abs(basis.n_max)) + 24);
  // per-ray bracketing cost need not grow with the angular floor below
  opts.ray_samples = std::max(256, resolution / 2);
  int res_eff = resolution;
  if (basis.kind == BasisKind::Laurent && ev.domain().kind == DomainKind::CircularDomain) {
    // Rays fan out from w, so a small hole subtends a narrow angle and sees
    // few of them; (z-c)^{-n} oscillates n times around the hole collar and
    // goes unconstrained (and overfitted) unless enough rays cross it.
    for (const Hole& h : ev.domain().holes) {
      if (std::abs(basis.center - h.center) > h.radius) continue;
      const double width = 2.0 * std::asin(std::min(1.0, h.radius / std::abs(w - h.center)));
      const int needed = static_cast<int>(std::ceil(8.0 * kPi * -basis.n_min / width));
      res_eff = std::max(res_eff, needed);
    }
  }
  const SublevelQuadrature rule = build_sublevel_rule(ev, w, r, res_eff, opts);
  return minimize_on_nodes(rule.nodes, rule.weights, basis, w, ev.domain());
}

double bergman_diagonal(const GreenEvaluator& ev, const HolomorphicBasis& basis, Complex w,
                        int resolution) {
  return 1.0 / minimize_area_norm(ev, basis, w, 1.0, resolution).value;
}

Complex MinimizerFunction::operator()(Complex z) const {
  Complex f = 0.0;
  for (int j = 0; j < basis.size(); ++j)
    f += coefficients(j) * eval_basis_function(basis, j, z);
  return f;
}

MinimizerFunction bergman_minimizer(const GreenEvaluator& ev, const HolomorphicBasis& basis,
                                    Complex w, int resolution) {
  ExtremalResult res = minimize_area_norm(ev, basis, w, 1.0, resolution);
  return MinimizerFunction{res.basis, std::move(res.coefficients)};
}

ExtremalResult minimize_boundary_norm(const GreenEvaluator& ev, const HolomorphicBasis& basis,
                                      Complex w, int nodes_per_component) {
  check_basis(basis, ev.domain());
  if (!contains(ev.domain(), w))
    throw std::domain_error("minimize_boundary_norm: w outside domain");
  const BoundarySampling sampling = make_boundary_sampling(ev, w, nodes_per_component);
  const Eigen::Index n = static_cast<Eigen::Index>(sampling.points.size());
  Eigen::VectorXcd nodes(n);
  Eigen::VectorXd weights(n);
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (Eigen::Index i = 0; i < n; ++i) {
    nodes(i) = sampling.points[i].position;
    weights(i) =
        sampling.weight_values[i] * sampling.points[i].arclength_weight / kTwoPi;
  }
  return minimize_on_nodes(nodes, weights, basis, w, ev.domain());
}

double series_bergman_diagonal(const DomainSpec& domain, Complex w) {
  if (!contains(domain, w))
    throw std::domain_error("series_bergman_diagonal: point outside the domain");
  constexpr long double pi_l = 3.14159265358979323846264338327950288L;
  if (domain.kind == DomainKind::UnitDisc) {
    const long double t = 1.0L - static_cast<long double>(std::norm(w));
    return static_cast<double>(1.0L / (pi_l * t * t));
  }
  if (domain.kind != DomainKind::Annulus)
    throw std::invalid_argument(
        "series_bergman_diagonal: no orthogonal monomial series on circular domains");
  // B(w,w) = sum_n |w^n|^2 / ||z^n||^2 with ||z^n||^2 = pi (1-q^{2n+2})/(n+1)
  // for n != -1 and 2 pi log(1/q) for n = -1. Both tails are geometric with
  // ratios |w|^2 (outward) and (q/|w|)^2 (inward).
  const long double q2 = static_cast<long double>(domain.q) * domain.q;
  const long double s2 = static_cast<long double>(std::norm(w));
  long double sum = 1.0L / (s2 * 2.0L * pi_l * (-std::log(static_cast<long double>(domain.q))));
  long double pow_s = 1.0L, pow_q = q2;  // s^{2n}, q^{2n+2} at n = 0
  for (int n = 0; n < 100000; ++n) {
    const long double term = (n + 1.0L) * pow_s / (pi_l * (1.0L - pow_q));
    sum += term;
    if (n > 4 && term < 1e-24L * sum) break;
    pow_s *= s2;
    pow_q *= q2;
  }
  pow_s = 1.0L / (s2 * s2);  // s^{2n} at n = -2
  pow_q = 1.0L / q2;         // q^{2n+2} at n = -2
  for (int n = -2; n > -100000; --n) {
    const long double term = (-(n + 1.0L)) * pow_s / (pi_l * (pow_q - 1.0L));
    sum += term;
    if (term < 1e-24L * sum) break;
    pow_s /= s2;
    pow_q /= q2;
  }
  return static_cast<double>(sum);
}

}  // namespace pk
