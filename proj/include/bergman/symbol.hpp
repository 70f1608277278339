#pragma once

#include <functional>
#include <span>
#include <string>

#include "bergman/geometry.hpp"

namespace bergman {

/// A bounded function on D^n given as a black box plus a claimed sup bound.
struct Symbol {
  std::function<cplx(std::span<const cplx>)> fn;
  double sup_bound = 1.0;
  std::string name;

  cplx operator()(std::span<const cplx> z) const { return fn(z); }
  cplx operator()(const PolyPoint& z) const { return fn(z.coords()); }

  Symbol conj() const;
  Symbol scaled(double c) const;
};

namespace symbols {

Symbol constant(cplx c);
/// |z_axis|^2
Symbol abs2(std::size_t axis);
/// z_axis
Symbol coordinate(std::size_t axis);
/// Re z_axis
Symbol real_part(std::size_t axis);
/// prod_l (1 - |z_l|^2)
Symbol defect();
/// indicator of {Re z_axis > 0}
Symbol half_indicator(std::size_t axis);

}  // namespace symbols

}  // namespace bergman
