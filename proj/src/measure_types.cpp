#include "bergman/measure_types.hpp"

#include <cmath>

#include "bergman/errors.hpp"

namespace bergman {

AtomicMeasure::AtomicMeasure(std::vector<Atom> a) : atoms(std::move(a)) {
  for (const auto& at : atoms) {
    if (at.point.dim() != dim()) throw DomainError("AtomicMeasure: atoms have mixed dimensions");
    if (!std::isfinite(at.weight.real()) || !std::isfinite(at.weight.imag())) {
      throw DomainError("AtomicMeasure: non-finite weight");
    }
  }
}

AtomicMeasure AtomicMeasure::dirac(const PolyPoint& p, cplx weight) { return AtomicMeasure({{p, weight}}); }

double AtomicMeasure::total_variation() const {
  double s = 0.0;
  for (const auto& a : atoms) s += std::abs(a.weight);
  return s;
}

cplx AtomicMeasure::total_mass() const {
  cplx s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

std::array<AtomicMeasure, 4> AtomicMeasure::jordan() const {
  std::array<AtomicMeasure, 4> parts;
  for (const auto& a : atoms) {
    const double re = a.weight.real();
    const double im = a.weight.imag();
    if (re > 0.0) parts[0].atoms.push_back({a.point, re});
    if (re < 0.0) parts[1].atoms.push_back({a.point, -re});
    if (im > 0.0) parts[2].atoms.push_back({a.point, im});
    if (im < 0.0) parts[3].atoms.push_back({a.point, -im});
  }
  return parts;
}

AtomicMeasure AtomicMeasure::scaled(cplx c) const {
  AtomicMeasure out = *this;
  for (auto& a : out.atoms) a.weight *= c;
  return out;
}

AtomicMeasure AtomicMeasure::operator+(const AtomicMeasure& o) const {
  std::vector<Atom> all = atoms;
  all.insert(all.end(), o.atoms.begin(), o.atoms.end());
  return AtomicMeasure(std::move(all));
}

}  // namespace bergman
