#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pk/extremal.hpp"
#include "pk/verify.hpp"

using pk::Complex;
using pk::DomainSpec;
using pk::HolomorphicBasis;

namespace {
constexpr double kPi = oracle::kPi;
}

TEST_CASE("basis evaluation") {
  const auto mono = HolomorphicBasis::monomial({0.5, 0.0}, 3);
  CHECK(mono.size() == 4);
  CHECK(pk::eval_basis_function(mono, 0, {0.7, 0.0}) == Complex(1.0, 0.0));
  CHECK(std::abs(pk::eval_basis_function(mono, 2, {0.7, 0.0}) - Complex(0.04, 0.0)) < 1e-15);

  const auto lau = HolomorphicBasis::laurent({0.0, 0.0}, 2);
  CHECK(lau.size() == 5);
  // index 0 is n_min = -2
  CHECK(std::abs(pk::eval_basis_function(lau, 0, {2.0, 0.0}) - Complex(0.25, 0.0)) < 1e-15);
  CHECK(std::abs(pk::eval_basis_function(lau, 4, {2.0, 0.0}) - Complex(4.0, 0.0)) < 1e-15);
}

TEST_CASE("disc: g_0(0) = pi and the minimizer is the constant 1") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  const auto basis = HolomorphicBasis::monomial({0.0, 0.0}, 12);
  const auto res = pk::minimize_area_norm(*ev, basis, {0.0, 0.0}, 1.0, 256);
  CHECK(res.value == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(std::abs(res.coefficients(0) - Complex(1.0, 0.0)) < 1e-8);
  for (int i = 1; i < basis.size(); ++i) CHECK(std::abs(res.coefficients(i)) < 1e-8);
  CHECK(res.constraint_residual < 1e-12);

  // g_0(-log r) = pi r: on {|z|^2 < r} the constant is still optimal
  for (const double r : {0.25, 0.5}) {
    const auto rr = pk::minimize_area_norm(*ev, basis, {0.0, 0.0}, r, 256);
    CHECK(rr.value == doctest::Approx(kPi * r).epsilon(1e-9));
  }
}

TEST_CASE("disc Bergman diagonal from the extremal problem") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  const auto basis = [](Complex w) { return HolomorphicBasis::monomial(w, 20); };
  CHECK(pk::bergman_diagonal(*ev, basis({0, 0}), {0.0, 0.0}, 256) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-10));
  const Complex w(0.3, 0.0);
  const double exact = 1.0 / (kPi * std::pow(1.0 - 0.09, 2));
  CHECK(pk::bergman_diagonal(*ev, basis(w), w, 256) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("disc minimizer matches the normalized reproducing kernel") {
  // B(z,w)/B(w,w) = (1-|w|^2)^2 / (1 - conj(w) z)^2
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  const Complex w(0.3, 0.0);
  const auto fn = pk::bergman_minimizer(*ev, HolomorphicBasis::monomial(w, 30), w, 256);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  int checked = 0;
  while (checked < 200) {
    const Complex z(u(rng), u(rng));
    if (std::abs(z) > 0.99) continue;
    const Complex exact = std::pow(1.0 - 0.09, 2) / std::pow(1.0 - std::conj(w) * z, 2);
    CHECK(std::abs(fn(z) - exact) < 1e-6);
    ++checked;
  }
}

TEST_CASE("annulus Bergman diagonal matches the Laurent-series value") {
  const double q = 0.5;
  const auto ev = pk::make_green_evaluator(DomainSpec::annulus(q));
  // truncation decays like (q/|w|)^{2n} towards the inner boundary, so the
  // s = 0.6 case needs the deeper basis
  for (const double s : {0.6, 0.75}) {
    const double exact = oracle::annulus_bergman_diagonal(q, s);
    const double got =
        pk::bergman_diagonal(*ev, HolomorphicBasis::laurent({0, 0}, 80), {s, 0.0}, 256);
    CHECK(got == doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("series Bergman diagonal: closed forms and frozen reference value") {
  const auto disc = DomainSpec::unit_disc();
  CHECK(pk::series_bergman_diagonal(disc, {0.0, 0.0}) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(pk::series_bergman_diagonal(disc, {0.3, 0.0}) ==
        doctest::Approx(1.0 / (kPi * 0.91 * 0.91)).epsilon(1e-15));

  const auto ann = DomainSpec::annulus(0.5);
  // 13-digit reference computed with 40-digit arithmetic
  CHECK(pk::series_bergman_diagonal(ann, {0.75, 0.0}) ==
        doctest::Approx(3.123433576223).epsilon(1e-12));
  // rotation invariance and agreement with the independent test-side sum
  CHECK(pk::series_bergman_diagonal(ann, {0.0, 0.6}) ==
        doctest::Approx(oracle::annulus_bergman_diagonal(0.5, 0.6)).epsilon(1e-13));

  CHECK_THROWS_AS(
      pk::series_bergman_diagonal(DomainSpec::circular({{Complex(0.3, 0.0), 0.1}}), {-0.2, 0.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(pk::series_bergman_diagonal(disc, {1.2, 0.0}), std::domain_error);
}

TEST_CASE("extremal value decreases with degree and converges") {
  const auto ev = pk::make_green_evaluator(DomainSpec::annulus(0.5));
  const Complex w(0.7, 0.0);
  double prev = 1e300;
  double at_30 = 0.0, at_40 = 0.0;
  for (const int d : {5, 10, 20, 30, 40}) {
    const auto res =
        pk::minimize_area_norm(*ev, HolomorphicBasis::laurent({0, 0}, d), w, 1.0, 256);
    CHECK(res.value <= prev + 1e-14);
    prev = res.value;
    if (d == 30) at_30 = res.value;
    if (d == 40) at_40 = res.value;
  }
  CHECK(std::abs(at_40 - at_30) < 1e-7 * at_40);
}

TEST_CASE("boundary extremal problem: conjugate Hardy diagonal on the disc") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  // at w = 0 the measure is plain arclength/2pi and the minimum is 1
  const auto res0 =
      pk::minimize_boundary_norm(*ev, HolomorphicBasis::monomial({0, 0}, 20), {0.0, 0.0}, 512);
  CHECK(res0.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pk::hardy_diagonal(*ev, HolomorphicBasis::monomial({0, 0}, 20), {0.0, 0.0}, 512) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // on the disc the Saitoh inequality is an equality: hR(w) = pi B(w)
  const Complex w(0.3, 0.0);
  const double hr = pk::hardy_diagonal(*ev, HolomorphicBasis::monomial({0, 0}, 30), w, 512);
  const double piB = kPi * pk::bergman_diagonal(*ev, HolomorphicBasis::monomial(w, 30), w, 256);
  CHECK(hr == doctest::Approx(piB).epsilon(1e-8));
}

TEST_CASE("reproducing property via an independently assembled Gram matrix") {
  // The area minimizer f with f(w) = 1 satisfies <p, f> = p(w) <1, f> for
  // every polynomial p... more precisely f = B(.,w)/B(w,w), so
  // <p, f>_{A^2} = p(w)/B(w,w). Assemble the inner products directly.
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  const Complex w(0.25, 0.15);
  const auto basis = HolomorphicBasis::monomial({0, 0}, 25);
  const auto fn = pk::bergman_minimizer(*ev, basis, w, 256);
  const double gw0 = pk::minimize_area_norm(*ev, basis, w, 1.0, 256).value;  // 1/B(w,w)

  const auto rule = pk::build_sublevel_rule(*ev, w, 1.0, 256);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    // random polynomial of degree 6
    Eigen::VectorXcd coef(7);
    for (int i = 0; i < 7; ++i) coef(i) = Complex(u(rng), u(rng));
    const auto p = [&](Complex z) {
      Complex acc = 0.0, zn = 1.0;
      for (int i = 0; i < 7; ++i, zn *= z) acc += coef(i) * zn;
      return acc;
    };
    Complex inner = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i)
      inner += rule.weights(i) * p(rule.nodes(i)) * std::conj(fn(rule.nodes(i)));
    CHECK(std::abs(inner - p(w) * gw0) < 1e-7 * (1.0 + std::abs(p(w)) * gw0));
  }
}

TEST_CASE("Cauchy-Schwarz link between the area and boundary problems") {
  // The boundary norm of the area minimizer dominates the boundary minimum,
  // so its squared boundary norm is >= 1/hR(w).
  const auto ev = pk::make_green_evaluator(DomainSpec::annulus(0.5));
  const Complex w(0.7, 0.0);
  const auto fn = pk::bergman_minimizer(*ev, HolomorphicBasis::laurent({0, 0}, 30), w, 256);
  const auto sampling = pk::make_boundary_sampling(*ev, w, 512);
  double bnorm = 0.0;
  for (std::size_t i = 0; i < sampling.points.size(); ++i)
    bnorm += std::norm(fn(sampling.points[i].position)) * sampling.weight_values[i] *
             sampling.points[i].arclength_weight;
  bnorm /= 2.0 * kPi;
  const double hmin =
      pk::minimize_boundary_norm(*ev, HolomorphicBasis::laurent({0, 0}, 30), w, 512).value;
  CHECK(bnorm >= hmin - 1e-8);
}

TEST_CASE("extremal solve flags near-boundary points and bad bases") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  const auto res = pk::minimize_area_norm(*ev, HolomorphicBasis::monomial({0, 0}, 10),
                                          {0.995, 0.0}, 1.0, 256);
  CHECK(res.near_boundary);

  // Laurent basis is inadmissible on the disc (center cannot be in a hole)
  CHECK_THROWS_AS(pk::minimize_area_norm(*ev, HolomorphicBasis::laurent({0, 0}, 5),
                                         {0.3, 0.0}, 1.0, 256),
                  std::invalid_argument);
  // Laurent center must lie outside the domain
  const auto ann = pk::make_green_evaluator(DomainSpec::annulus(0.5));
  CHECK_THROWS_AS(pk::minimize_area_norm(*ann, HolomorphicBasis::laurent({0.7, 0.0}, 5),
                                         {0.6, 0.0}, 1.0, 256),
                  std::invalid_argument);
}

TEST_CASE("extremal agreement with bergman-via-green") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Case {
    DomainSpec domain;
    std::function<HolomorphicBasis(Complex)> basis;
  };
  const std::vector<Case> cases = {
      // origin-centered monomials: same span, far better conditioned on the
      // full disc than the w-centered variant at large |w|
      {DomainSpec::unit_disc(), [](Complex) { return HolomorphicBasis::monomial({0, 0}, 30); }},
      {DomainSpec::annulus(0.5), [](Complex) { return HolomorphicBasis::laurent({0, 0}, 40); }},
  };
  for (const Case& c : cases) {
    const auto ev = pk::make_green_evaluator(c.domain);
    int checked = 0;
    while (checked < 20) {
      const Complex w(u(rng), u(rng));
      if (!pk::contains(c.domain, w) || pk::dist_to_boundary(c.domain, w) < 0.15) continue;
      const double b_ext = pk::bergman_diagonal(*ev, c.basis(w), w, 256);
      const double b_green = ev->bergman(w, w).real();
      CHECK(std::abs(b_ext - b_green) < 1e-4 * b_ext + 1e-6);
      ++checked;
    }
  }
}
