#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bergman {

using cplx = std::complex<double>;

namespace tol {
/// Points with some |z_l| >= 1 - kBoundary are rejected at construction.
inline constexpr double kBoundary = 1e-14;
/// Default tolerance for pure arithmetic identities.
inline constexpr double kIdentity = 1e-12;
}  // namespace tol

/// A point of the polydisc D^n.
class PolyPoint {
 public:
  PolyPoint() = default;
  explicit PolyPoint(std::vector<cplx> coords);
  PolyPoint(std::initializer_list<cplx> coords);

  /// The origin of D^n.
  static PolyPoint zero(std::size_t n);

  std::size_t dim() const { return coords_.size(); }
  const cplx& operator[](std::size_t l) const { return coords_[l]; }
  std::span<const cplx> coords() const { return coords_; }

  /// max_l |z_l|
  double max_modulus() const;
  /// prod_l (1 - |z_l|^2)
  double defect() const;

  friend bool operator==(const PolyPoint&, const PolyPoint&) = default;

 private:
  std::vector<cplx> coords_;
};

/// Product of per-axis hyperbolic discs D(center_l, radius).
struct HyperbolicDisc {
  PolyPoint center;
  double radius = 0.0;  // hyperbolic radius

  bool contains(const PolyPoint& w) const;
};

struct EuclideanDisc {
  cplx center;
  double radius = 0.0;
};

// One-variable primitives.
cplx mobius(cplx z, cplx w);
double rho1(cplx z, cplx w);
double beta1(cplx z, cplx w);
/// beta(0, w) for a single coordinate.
double beta_from_origin(cplx w);

/// phi_z(w), coordinatewise (z_l - w_l)/(1 - conj(z_l) w_l).
PolyPoint mobius_apply(const PolyPoint& z, const PolyPoint& w);
/// Pseudohyperbolic distance, maximum over coordinates.
double rho(const PolyPoint& z, const PolyPoint& w);
/// Hyperbolic distance atanh(rho).
double beta(const PolyPoint& z, const PolyPoint& w);

/// Euclidean disc equal to {w : rho(z_l, w) <= tanh(r)} on one axis.
EuclideanDisc euclidean_realization(const HyperbolicDisc& d, std::size_t axis);

/// Radial sampling grid standing in for sup over D^n.
struct RadialGrid {
  std::vector<double> moduli{0.0, 0.3, 0.6, 0.9, 0.99, 0.999};
  int angles = 16;

  /// All points of the tensor grid in dimension n (modulus 0 is not repeated).
  std::vector<PolyPoint> points(std::size_t n) const;
};

void require_same_dim(const PolyPoint& a, const PolyPoint& b);

}  // namespace bergman
