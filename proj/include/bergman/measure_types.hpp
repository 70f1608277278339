#pragma once

#include <array>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

struct Atom {
  PolyPoint point;
  cplx weight;
};

/// Finite complex combination of point masses.
struct AtomicMeasure {
  std::vector<Atom> atoms;

  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<Atom> a);

  static AtomicMeasure dirac(const PolyPoint& p, cplx weight = 1.0);

  /// Dimension of the atoms; 0 for the empty measure.
  std::size_t dim() const { return atoms.empty() ? 0 : atoms.front().point.dim(); }
  double total_variation() const;
  cplx total_mass() const;

  /// Nonnegative parts (m1, m2, m3, m4) with mu = m1 - m2 + i m3 - i m4.
  std::array<AtomicMeasure, 4> jordan() const;

  AtomicMeasure scaled(cplx c) const;
  AtomicMeasure operator+(const AtomicMeasure& o) const;
};

/// The measure a dv on D^n, integrated by tensor quadrature.
struct DensityMeasure {
  Symbol density;
  std::size_t n = 1;
  QuadratureSpec quad;
};

}  // namespace bergman
