#include <cmath>
#include <random>
#include <sstream>

#include "bergman/berezin.hpp"
#include "bergman/errors.hpp"
#include "bergman/operators.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bergman;
using testutil::random_point;

namespace {

TruncatedOperator projection_on_constants(const MonomialBasis& b) {
  Vec e0 = Vec::Zero(static_cast<Eigen::Index>(b.size()));
  e0[0] = 1.0;
  return rank_one(b, e0, e0);
}

}  // namespace

TEST_CASE("Berezin transform of basic operators") {
  const MonomialBasis b(1, 30);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const PolyPoint z = random_point(rng, 1, 0.5);
    const BerezinValue v = berezin_operator(TruncatedOperator::identity(b), z);
    CHECK(std::abs(v.value - 1.0) <= 1e-9);
    CHECK(std::abs(v.value.real() - (1.0 - v.tail)) < 1e-15);
  }
  const MonomialBasis b2(2, 6);
  for (int i = 0; i < 100; ++i) {
    const PolyPoint z = random_point(rng, 2, 0.2);
    CHECK(std::abs(berezin_operator(projection_on_constants(b2), z).value - std::pow(z.defect(), 2)) < 1e-10);
    CHECK(berezin_operator(TruncatedOperator::zero(b2), z).value == cplx(0.0));
  }
  CHECK_THROWS_AS(berezin_operator(TruncatedOperator::identity(MonomialBasis(1, 12)), PolyPoint{0.9}), DomainError);
}

TEST_CASE("Berezin boundedness by the operator norm") {
  const MonomialBasis b(1, 40);
  const TruncatedOperator t = toeplitz_symbol(symbols::coordinate(0), b, QuadratureSpec::for_degree(40));
  const double nrm = operator_norm(t);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    CHECK(std::abs(berezin_operator(t, random_point(rng, 1, admissible_radius(40))).value) <= nrm + 1e-12);
  }
}

TEST_CASE("admissible radius") {
  const double r = admissible_radius(12);
  CHECK(kernel_axis_tail(r * r, 12) <= 1e-8);
  CHECK(kernel_axis_tail(std::pow(r + 1e-6, 2), 12) > 1e-8);
}

TEST_CASE("k-Berezin of point masses and Lebesgue measure") {
  for (int k : {0, 1, 4, 16}) {
    const Measure d0 = AtomicMeasure::dirac(PolyPoint{0.0, 0.0});
    CHECK(k_berezin_measure(d0, k, PolyPoint{0.0, 0.0}).real() == doctest::Approx(std::pow(k + 1.0, 2)));
    const PolyPoint z{0.3, cplx(0.0, 0.6)};
    CHECK(k_berezin_measure(d0, k, z).real() ==
          doctest::Approx(std::pow(k + 1.0, 2) * std::pow(z.defect(), 2 + k)).epsilon(1e-14));
    const Measure dv = DensityMeasure{symbols::constant(1.0), 1, QuadratureSpec{}};
    for (const auto& p : RadialGrid{}.points(1)) {
      CHECK(std::abs(k_berezin_measure(dv, k, p) - 1.0) < 1e-8);
      CHECK(std::abs(k_berezin_symbol(symbols::constant(1.0), k, p) - 1.0) < 1e-8);
    }
  }
  // k = 0 reproduces the RKM integrand.
  const AtomicMeasure mu({{PolyPoint{0.2}, 0.5}, {PolyPoint{cplx(-0.4, 0.7)}, 2.0}});
  CHECK(k_berezin_measure(mu, 0, PolyPoint{0.6}).real() == doctest::Approx(rkm_integrand(mu, PolyPoint{0.6})));
}

TEST_CASE("k-Berezin of symbols") {
  CHECK(k_berezin_symbol(symbols::abs2(0), 0, PolyPoint{0.0}).real() == doctest::Approx(0.5).epsilon(1e-13));
  for (int k : {0, 3, 10}) CHECK(std::abs(k_berezin_symbol(symbols::real_part(0), k, PolyPoint{0.0})) < 1e-15);
  // Symbol path against the measure path on a dv, the two integrals in different variables.
  const Symbol a{[](std::span<const cplx> w) { return std::exp(w[0]) + std::norm(w[0]); }, 4.0, "test"};
  const Measure adv = DensityMeasure{a, 1, QuadratureSpec{}};
  for (int k : {0, 2, 8}) {
    for (double m : {0.0, 0.5, 0.9, 0.99}) {
      const PolyPoint z{std::polar(m, 0.4)};
      CHECK(std::abs(k_berezin_symbol(a, k, z) - k_berezin_measure(adv, k, z)) < 1e-10);
    }
  }
}

TEST_CASE("Berezin of T_a agrees with the 0-Berezin of a dv") {
  const int d = 30;
  const MonomialBasis b(1, d);
  const QuadratureSpec q = QuadratureSpec::for_degree(d);
  const double rmax = admissible_radius(d);
  const Symbol smooth{[](std::span<const cplx> w) { return std::exp(w[0]) * std::conj(w[0]) + 0.5; }, 3.5, "s"};
  for (const Symbol& a : {symbols::defect(), symbols::abs2(0), symbols::real_part(0), symbols::coordinate(0), smooth}) {
    const TruncatedOperator t = toeplitz_symbol(a, b, q);
    const Measure adv = DensityMeasure{a, 1, QuadratureSpec{}};
    for (const auto& z : RadialGrid{{0.0, 0.3, 0.6, rmax}, 8}.points(1)) {
      CHECK(std::abs(berezin_operator(t, z).value - k_berezin_measure(adv, 0, z)) < 1e-6);
    }
  }
}

TEST_CASE("covariance under automorphisms") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = trial % 2 + 1;
    std::vector<Atom> atoms;
    for (int i = 0; i < 5; ++i) atoms.push_back({random_point(rng, n, 0.9), cplx(i + 0.5, 0.3 * i - 0.4)});
    const AtomicMeasure mu(atoms);
    const int k = trial % 5;
    const PolyPoint z = random_point(rng, n, 0.9);
    const PolyPoint w = random_point(rng, n, 0.9);
    const CovarianceCheck c = berezin_covariance_check(mu, k, z, w);
    CHECK(c.diff <= 1e-11 * std::max(1.0, std::abs(c.lhs)));
    const CovarianceCheck c0 = berezin_covariance_check(mu, k, z, PolyPoint::zero(n));
    CHECK(std::abs(c0.lhs - k_berezin_measure(mu, k, z)) < 1e-12 * std::max(1.0, std::abs(c0.lhs)));
    const CovarianceCheck cd = berezin_covariance_check(AtomicMeasure::dirac(PolyPoint::zero(n)), k, z, w);
    CHECK(cd.diff <= 1e-12 * std::max(1.0, std::abs(cd.lhs)));

    // Domination by the 0-Berezin transform of |mu|, and positivity.
    const Measure abs_mu = total_variation_measure(mu);
    for (int s = 0; s < 5; ++s) {
      const PolyPoint p = random_point(rng, n, 0.99);
      CHECK(std::abs(k_berezin_measure(mu, k, p)) <= std::pow(k + 1.0, n) * k_berezin_measure(abs_mu, 0, p).real() * (1 + 1e-12));
      CHECK(k_berezin_measure(abs_mu, k, p).real() >= 0.0);
    }
  }
}

TEST_CASE("Lipschitz behaviour in the pseudohyperbolic metric") {
  std::mt19937_64 rng(77);
  std::vector<Atom> atoms;
  for (int i = 0; i < 20; ++i) atoms.push_back({random_point(rng, 1, 0.95), 1.0});
  const AtomicMeasure mu(atoms);
  double sup_b0 = 0.0;
  for (const auto& p : RadialGrid{}.points(1)) sup_b0 = std::max(sup_b0, k_berezin_measure(mu, 0, p).real());
  for (int k : {0, 2}) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const PolyPoint z1 = random_point(rng, 1, 0.99);
      const PolyPoint z2 = random_point(rng, 1, 0.99);
      const double r = rho(z1, z2);
      if (r < 1e-8) continue;
      worst = std::max(worst, std::abs(k_berezin_measure(mu, k, z1) - k_berezin_measure(mu, k, z2)) / r);
    }
    MESSAGE("k = " << k << ": max |dB_k| / rho = " << worst << ", grid sup of B_0 = " << sup_b0);
    CHECK(worst <= 20.0 * (k + 1) * std::max(sup_b0, 1.0));
  }
}

TEST_CASE("B_k(a) approaches a") {
  const auto grid = RadialGrid{}.points(1);
  CHECK(approx_symbol_error(symbols::constant(2.0), 5, grid).value < 1e-12);
  const double e1 = approx_symbol_error(symbols::defect(), 1, grid).value;
  const double e8 = approx_symbol_error(symbols::defect(), 8, grid).value;
  const double e32 = approx_symbol_error(symbols::defect(), 32, grid).value;
  CHECK(e1 > e8);
  CHECK(e8 > e32);
  // At z = 0 the error is exactly 1/(k+2) and it is the grid maximum.
  CHECK(e1 == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(e32 == doctest::Approx(1.0 / 34.0).epsilon(1e-10));
  // Harmonic symbols are fixed by every B_k, so only rounding remains.
  for (int k : {1, 8, 32}) CHECK(approx_symbol_error(symbols::real_part(0), k, grid).value < 1e-12);
}

TEST_CASE("decay profiles") {
  const MonomialBasis b(1, 1200);
  Vec e0 = Vec::Zero(1201);
  e0[0] = 1.0;
  const BerezinProfile p = decay_profile(rank_one(b, e0, e0), {cplx(0.0, 1.0)}, {0.5, 0.9, 0.99});
  CHECK(p.values[0].real() == doctest::Approx(0.5625).epsilon(1e-12));
  CHECK(p.values[1].real() == doctest::Approx(0.0361).epsilon(1e-12));
  CHECK(p.values[2].real() == doctest::Approx(std::pow(1 - 0.9801, 2)).epsilon(1e-10));
  const MonomialBasis small(1, 30);
  const BerezinProfile id = decay_profile(TruncatedOperator::identity(small), {1.0}, {0.1, 0.3, 0.5});
  for (const auto& v : id.values) CHECK(std::abs(v - 1.0) < 1e-9);
  const BerezinProfile zero = decay_profile(TruncatedOperator::zero(small), {1.0}, {0.1, 0.3});
  for (const auto& v : zero.values) CHECK(v == cplx(0.0));
  CHECK_THROWS_AS(decay_profile(TruncatedOperator::zero(small), {1.0}, {0.3, 0.1}), DomainError);
  std::ostringstream os;
  write_profile_csv(os, {id});
  CHECK(os.str().rfind("dir_arg_1,radius,re,im,tail_bound\n", 0) == 0);
}
