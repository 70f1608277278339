#include "bergman/symbol.hpp"

#include <cmath>

namespace bergman {

Symbol Symbol::conj() const {
  auto f = fn;
  return Symbol{[f](std::span<const cplx> z) { return std::conj(f(z)); }, sup_bound, "conj(" + name + ")"};
}

Symbol Symbol::scaled(double c) const {
  auto f = fn;
  return Symbol{[f, c](std::span<const cplx> z) { return c * f(z); }, std::abs(c) * sup_bound,
                std::to_string(c) + "*" + name};
}

namespace symbols {

Symbol constant(cplx c) {
  return Symbol{[c](std::span<const cplx>) { return c; }, std::abs(c), "const"};
}

Symbol abs2(std::size_t axis) {
  return Symbol{[axis](std::span<const cplx> z) { return cplx(std::norm(z[axis]), 0.0); }, 1.0,
                "abs2_z" + std::to_string(axis + 1)};
}

Symbol coordinate(std::size_t axis) {
  return Symbol{[axis](std::span<const cplx> z) { return z[axis]; }, 1.0, "z" + std::to_string(axis + 1)};
}

Symbol real_part(std::size_t axis) {
  return Symbol{[axis](std::span<const cplx> z) { return cplx(z[axis].real(), 0.0); }, 1.0,
                "re_z" + std::to_string(axis + 1)};
}

Symbol defect() {
  return Symbol{[](std::span<const cplx> z) {
                  double d = 1.0;
                  for (const auto& c : z) d *= 1.0 - std::norm(c);
                  return cplx(d, 0.0);
                },
                1.0, "defect"};
}

Symbol half_indicator(std::size_t axis) {
  return Symbol{[axis](std::span<const cplx> z) { return cplx(z[axis].real() > 0.0 ? 1.0 : 0.0, 0.0); },
                1.0, "half_indicator_z" + std::to_string(axis + 1)};
}

}  // namespace symbols

}  // namespace bergman
