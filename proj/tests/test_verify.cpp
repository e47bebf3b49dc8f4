#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pk/verify.hpp"

using pk::Complex;
using pk::DomainSpec;

namespace {
constexpr double kPi = oracle::kPi;

pk::VerifyOptions fast_opts() {
  pk::VerifyOptions o;
  o.basis_degree = 30;
  o.boundary_nodes = 256;
  o.area_resolution = 128;
  return o;
}
}  // namespace

TEST_CASE("check names and ordering") {
  const auto& all = pk::all_checks();
  REQUIRE(all.size() == 7);
  CHECK(pk::check_name(all.front()) == "concavity");
  CHECK(pk::check_name(all.back()) == "saitoh");
  CHECK(pk::check_name(pk::Check::SlopeChain) == "slope-chain");
  CHECK(pk::check_name(pk::Check::BoundaryLimit) == "boundary-limit");
}

TEST_CASE("g_value and hardy_value on the disc have closed-form limits") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  const auto opts = fast_opts();
  for (const double r : {0.25, 0.5, 1.0}) {
    const auto g = pk::g_value(*ev, {0.0, 0.0}, r, opts);
    CHECK(g.value == doctest::Approx(kPi * r).epsilon(1e-8));
    CHECK(std::abs(g.value - kPi * r) < std::max(g.est_error * 10.0, 1e-8));
  }
  CHECK(pk::hardy_value(*ev, {0.0, 0.0}, opts).value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("compute_kernels on the disc reproduces the equalities") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  const auto opts = fast_opts();
  for (const Complex w : {Complex(0.0, 0.0), Complex(0.3, 0.0)}) {
    const auto k = pk::compute_kernels(*ev, w, opts);
    const double exact_b = 1.0 / (kPi * std::pow(1.0 - std::norm(w), 2));
    CHECK(k.bergman == doctest::Approx(exact_b).epsilon(1e-7));
    CHECK(std::abs(k.saitoh_gap) < 1e-6);
    CHECK(std::abs(k.suita_gap) < 1e-6);
  }
}

TEST_CASE("all checks pass on the disc") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  const auto report = pk::run_checks(*ev, {0.3, 0.0}, pk::all_checks(), fast_opts());
  REQUIRE(report.checks.size() == 7);
  for (const auto& c : report.checks) {
    CAPTURE(c.name);
    CAPTURE(c.residual);
    CHECK(c.passed());
  }
}

TEST_CASE("all checks pass on the annulus, with strict inequalities") {
  const auto ev = pk::make_green_evaluator(DomainSpec::annulus(0.5));
  // The Hardy-side truncation at |w| = 0.7 decays like 0.7^degree; degree 40
  // is needed for the saitoh gap (~5e-5) to clear ten times the error.
  pk::VerifyOptions opts;
  opts.basis_degree = 40;
  opts.boundary_nodes = 512;
  opts.area_resolution = 256;
  const auto report = pk::run_checks(*ev, {0.7, 0.0}, pk::all_checks(), opts);
  REQUIRE(report.checks.size() == 7);
  for (const auto& c : report.checks) {
    CAPTURE(c.name);
    CAPTURE(c.residual);
    CAPTURE(c.notes);
    CHECK(c.passed());
    if (c.name == "suita" || c.name == "saitoh") {
      // the strict branch was taken
      CHECK(c.notes.find("strict") != std::string::npos);
      for (const auto& m : c.measured)
        if (m.label == "gap") CHECK(m.value > 0.0);
    }
  }
}

TEST_CASE("requested subset is run in canonical order") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  const auto report = pk::run_checks(*ev, {0.3, 0.0},
                                     {pk::Check::Capacity, pk::Check::Concavity}, fast_opts());
  REQUIRE(report.checks.size() == 2);
  CHECK(report.checks[0].name == "concavity");
  CHECK(report.checks[1].name == "capacity");
}

TEST_CASE("concavity grid validation") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  auto opts = fast_opts();
  opts.r_grid = {0.2, 0.4, 0.6};  // too short
  CHECK_THROWS_AS(pk::run_check(*ev, pk::Check::Concavity, {0.3, 0.0}, opts),
                  std::invalid_argument);
  opts.r_grid = {0.2, 0.4, 0.3, 0.6, 0.8};  // not increasing
  CHECK_THROWS_AS(pk::run_check(*ev, pk::Check::Concavity, {0.3, 0.0}, opts),
                  std::invalid_argument);
  opts.r_grid = {0.2, 0.4, 0.6, 0.8, 1.2};  // out of range
  CHECK_THROWS_AS(pk::run_check(*ev, pk::Check::Concavity, {0.3, 0.0}, opts),
                  std::invalid_argument);
}

TEST_CASE("capacity check rejects points too close to the boundary") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  CHECK_THROWS_AS(pk::run_check(*ev, pk::Check::Capacity, {0.97, 0.0}, fast_opts()),
                  std::invalid_argument);
}

TEST_CASE("run_check rejects exterior points") {
  const auto ev = pk::make_green_evaluator(DomainSpec::unit_disc());
  CHECK_THROWS_AS(pk::run_check(*ev, pk::Check::Saitoh, {1.2, 0.0}, fast_opts()),
                  std::domain_error);
}
