#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bergman/geometry.hpp"

namespace testutil {

using bergman::cplx;
using bergman::PolyPoint;

inline cplx random_disc(std::mt19937_64& rng, double max_modulus = 0.99) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = max_modulus * std::sqrt(u(rng));
  return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

inline PolyPoint random_point(std::mt19937_64& rng, std::size_t n, double max_modulus = 0.99) {
  std::vector<cplx> c(n);
  for (auto& x : c) x = random_disc(rng, max_modulus);
  return PolyPoint(std::move(c));
}

}  // namespace testutil
