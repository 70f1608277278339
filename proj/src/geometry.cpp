#include "bergman/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

void validate(const std::vector<cplx>& coords) {
  if (coords.empty()) throw DomainError("PolyPoint: dimension must be >= 1");
  for (std::size_t l = 0; l < coords.size(); ++l) {
    const double m = std::abs(coords[l]);
    if (!std::isfinite(m) || m >= 1.0 - tol::kBoundary) {
      throw DomainError("PolyPoint: coordinate " + std::to_string(l) +
                        " is not inside the unit disc (|z| = " + std::to_string(m) + ")");
    }
  }
}

}  // namespace

PolyPoint::PolyPoint(std::vector<cplx> coords) : coords_(std::move(coords)) { validate(coords_); }

PolyPoint::PolyPoint(std::initializer_list<cplx> coords) : coords_(coords) { validate(coords_); }

PolyPoint PolyPoint::zero(std::size_t n) { return PolyPoint(std::vector<cplx>(n, cplx{0.0, 0.0})); }

double PolyPoint::max_modulus() const {
  double m = 0.0;
  for (const auto& c : coords_) m = std::max(m, std::abs(c));
  return m;
}

double PolyPoint::defect() const {
  double d = 1.0;
  for (const auto& c : coords_) d *= 1.0 - std::norm(c);
  return d;
}

void require_same_dim(const PolyPoint& a, const PolyPoint& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
}

cplx mobius(cplx z, cplx w) { return (z - w) / (1.0 - std::conj(z) * w); }

double rho1(cplx z, cplx w) { return std::abs((w - z) / (1.0 - std::conj(z) * w)); }

double beta1(cplx z, cplx w) { return std::atanh(rho1(z, w)); }

double beta_from_origin(cplx w) { return std::atanh(std::abs(w)); }

PolyPoint mobius_apply(const PolyPoint& z, const PolyPoint& w) {
  require_same_dim(z, w);
  std::vector<cplx> out(z.dim());
  for (std::size_t l = 0; l < z.dim(); ++l) out[l] = mobius(z[l], w[l]);
  return PolyPoint(std::move(out));
}

double rho(const PolyPoint& z, const PolyPoint& w) {
  require_same_dim(z, w);
  double r = 0.0;
  for (std::size_t l = 0; l < z.dim(); ++l) r = std::max(r, rho1(z[l], w[l]));
  return r;
}

double beta(const PolyPoint& z, const PolyPoint& w) { return std::atanh(rho(z, w)); }

bool HyperbolicDisc::contains(const PolyPoint& w) const {
  require_same_dim(center, w);
  for (std::size_t l = 0; l < w.dim(); ++l) {
    if (beta1(center[l], w[l]) > radius) return false;
  }
  return true;
}

EuclideanDisc euclidean_realization(const HyperbolicDisc& d, std::size_t axis) {
  if (axis >= d.center.dim()) throw DomainError("euclidean_realization: axis out of range");
  const cplx z = d.center[axis];
  const double t = std::tanh(d.radius);
  const double t2 = t * t;
  const double z2 = std::norm(z);
  const double den = 1.0 - t2 * z2;
  return EuclideanDisc{(1.0 - t2) * z / den, t * (1.0 - z2) / den};
}

std::vector<PolyPoint> RadialGrid::points(std::size_t n) const {
  if (n == 0) throw DomainError("RadialGrid: dimension must be >= 1");
  std::vector<cplx> axis;
  for (double m : moduli) {
    if (m == 0.0) {
      axis.emplace_back(0.0, 0.0);
      continue;
    }
    for (int a = 0; a < angles; ++a) {
      axis.push_back(std::polar(m, 2.0 * std::numbers::pi * a / angles));
    }
  }
  std::vector<PolyPoint> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<cplx> c(n);
    for (std::size_t l = 0; l < n; ++l) c[l] = axis[idx[l]];
    out.emplace_back(std::move(c));
    std::size_t l = n;
    while (l > 0) {
      --l;
      if (++idx[l] < axis.size()) break;
      idx[l] = 0;
      if (l == 0) return out;
    }
  }
}

}  // namespace bergman
