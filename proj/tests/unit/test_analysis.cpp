#include <cmath>
#include <random>

#include "bergman/analysis.hpp"
#include "bergman/errors.hpp"
#include "bergman/essential.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bergman;

TEST_CASE("growth integral against the power series") {
  for (double r = 0.0; r <= 0.9 + 1e-12; r += 0.05) {
    const double exact = 1.0 / std::pow(1.0 - r * r, 2);
    CHECK(std::abs(growth_integral(4.0, 0.0, std::polar(r, 0.3)) - exact) <= 1e-8 * exact);
  }
  for (double s : {0.0, 1.0, 2.5, 3.0}) {
    for (double t : {-0.5, 0.0, 0.7, 2.0}) {
      for (double r : {0.0, 0.5, 0.9, 0.99}) {
        const double series = growth_integral_series(s, t, r);
        CHECK(growth_integral(s, t, r) == doctest::Approx(series).epsilon(1e-9));
      }
    }
  }
  for (double t : {-0.5, 0.0, 1.5}) CHECK(growth_integral(0.0, t, cplx(0.3, 0.4)) == doctest::Approx(1.0 / (t + 1.0)));
  CHECK_THROWS_AS(growth_integral(2.0, -1.0, 0.3), DomainError);
}

TEST_CASE("growth integral depends only on |z|") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const cplx z = testutil::random_disc(rng, 0.95);
    const double a = growth_integral(3.0, 0.5, z);
    const double b = growth_integral(3.0, 0.5, std::abs(z));
    CHECK(std::abs(a - b) <= 1e-9 * b);
  }
}

TEST_CASE("boundary growth exponent") {
  CHECK(growth_exponent_fit(4.0, 0.0, {0.9, 0.95, 0.99, 0.995, 0.999}) == doctest::Approx(-2.0).epsilon(0.025));
  // s < 2 + t: bounded, exponent near zero.
  CHECK(std::abs(growth_exponent_fit(1.0, 0.0, {0.99, 0.995, 0.999})) < 0.05);
}

TEST_CASE("Schur test") {
  const SchurResult zero = schur_bound(KernelSpec::power(2.0, 0.0, 0.0), -0.25, 2.0);
  CHECK(zero.c_p == 0.0);
  CHECK(zero.c_q == 0.0);
  CHECK(zero.bound == 0.0);
  CHECK(zero.empirical_norm == 0.0);

  const SchurResult r = schur_bound(KernelSpec::power(2.0, 0.0), -0.25, 2.0);
  CHECK(std::isfinite(r.c_p));
  CHECK(r.c_p == doctest::Approx(r.c_q).epsilon(1e-12));
  CHECK(r.empirical_norm > 0.0);
  CHECK(r.empirical_norm <= r.bound * 1.05);

  const SchurResult r3 = schur_bound(KernelSpec::power(2.0, 0.0, 3.0), -0.25, 2.0);
  CHECK(r3.bound == doctest::Approx(3.0 * r.bound).epsilon(1e-12));
  CHECK(r3.empirical_norm == doctest::Approx(3.0 * r.empirical_norm).epsilon(1e-9));

  // p = 2, h = (1-|z|^2)^(-1/2): the C_q integral has weight (1-|y|^2)^(-1).
  CHECK_THROWS_AS(schur_bound(KernelSpec::power(2.0, 0.0), -0.5, 2.0), NumericError);
  // The Tech-1 kernel against dv on both sides: C_q grows like (1-|x|^2)^(-1/p).
  CHECK_THROWS_AS(schur_bound(KernelSpec::tech(3.0), -2.0 / 9.0, 3.0), NumericError);
}

TEST_CASE("Tech-1 ratio") {
  const AtomicMeasure mu = mu_rho(0.5, 1, 3.0);
  CHECK(tech1_ratio(1.0, 2.0, 0.2, AtomicMeasure{}, 100).ratio == 0.0);
  // A single atom at the origin is within sigma of the cells near it and far from the rest.
  const Tech1Report one = tech1_ratio(2.0, 2.0, 0.2, AtomicMeasure::dirac(PolyPoint{0.0}), 500);
  CHECK(std::isfinite(one.ratio));
  const double r1 = tech1_ratio(1.0, 2.0, 0.2, mu, 500).ratio;
  const double r3 = tech1_ratio(3.0, 2.0, 0.2, mu, 500).ratio;
  CHECK(std::isfinite(r1));
  CHECK(r3 <= r1);
  CHECK_THROWS_AS(tech1_ratio(1.0, 2.0, 0.3, mu, 10), DomainError);
  CHECK_THROWS_AS(tech1_ratio(0.5, 2.0, 0.2, mu, 10), DomainError);
}

TEST_CASE("Tech-1 ratio vanishes when every atom is within sigma of each cell") {
  // With sigma larger than beta(w, F_j) for all cells, no atom lies in any K_j.
  const AtomicMeasure near = AtomicMeasure::dirac(PolyPoint{0.0});
  Tech1Options opt;
  opt.beta_max = 0.5;
  CHECK(tech1_ratio(1.0, 2.0, 0.2, near, 200, opt).ratio == 0.0);
}
