#include "bergman/measures.hpp"

#include <cmath>
#include <string>

#include "bergman/errors.hpp"
#include "bergman/operators.hpp"
#include "bergman/parallel.hpp"

namespace bergman {

namespace {

double rkm_kernel(const PolyPoint& z, std::span<const cplx> w) {
  double v = 1.0;
  for (std::size_t l = 0; l < z.dim(); ++l) {
    const double d = 1.0 - std::norm(z[l]);
    v *= d * d / std::pow(std::norm(1.0 - std::conj(z[l]) * w[l]), 2);
  }
  return v;
}

double density_abs(const DensityMeasure& m, std::span<const cplx> w) {
  const double v = std::abs(m.density(w));
  if (!std::isfinite(v)) throw NumericError("density is not finite at a quadrature node");
  return v;
}

void require_dim(const Measure& mu, const PolyPoint& z) {
  const std::size_t n = std::visit(
      [](const auto& m) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, AtomicMeasure>) {
          return m.dim();
        } else {
          return m.n;
        }
      },
      mu);
  if (n != 0 && n != z.dim()) {
    throw DomainError("measure has dimension " + std::to_string(n) + ", point has " + std::to_string(z.dim()));
  }
}

template <class F>
GridSup grid_max(const std::vector<PolyPoint>& grid, F&& f) {
  if (grid.empty()) throw DomainError("grid must be nonempty");
  std::vector<double> vals(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { vals[i] = f(grid[i]); });
  GridSup out;
  out.grid_size = grid.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] > vals[best]) best = i;
  }
  out.value = vals[best];
  out.argmax = grid[best];
  return out;
}

}  // namespace

Measure total_variation_measure(const Measure& mu) {
  if (const auto* a = std::get_if<AtomicMeasure>(&mu)) {
    AtomicMeasure out = *a;
    for (auto& at : out.atoms) at.weight = std::abs(at.weight);
    return out;
  }
  DensityMeasure d = std::get<DensityMeasure>(mu);
  auto f = d.density.fn;
  d.density = Symbol{[f](std::span<const cplx> w) { return cplx(std::abs(f(w)), 0.0); }, d.density.sup_bound,
                     "abs(" + d.density.name + ")"};
  return d;
}

double rkm_integrand(const Measure& mu, const PolyPoint& z) {
  require_dim(mu, z);
  if (const auto* a = std::get_if<AtomicMeasure>(&mu)) {
    double s = 0.0;
    for (const auto& at : a->atoms) s += std::abs(at.weight) * rkm_kernel(z, at.point.coords());
    return s;
  }
  const auto& d = std::get<DensityMeasure>(mu);
  std::vector<DiscRule> axes;
  for (std::size_t l = 0; l < z.dim(); ++l) axes.push_back(focused_disc_rule(z[l], d.quad.panel_nodes));
  double s = 0.0;
  for_each_tensor_node(std::span<const DiscRule>(axes), [&](std::span<const cplx> w, double wt) {
    s += wt * density_abs(d, w) * rkm_kernel(z, w);
  });
  return s;
}

GridSup rkm_norm(const Measure& mu, const std::vector<PolyPoint>& grid) {
  return grid_max(grid, [&](const PolyPoint& z) { return rkm_integrand(mu, z); });
}

double disc_mass(const Measure& mu, const HyperbolicDisc& disc) {
  require_dim(mu, disc.center);
  if (!(disc.radius > 0.0)) throw DomainError("disc radius must be positive");
  if (const auto* a = std::get_if<AtomicMeasure>(&mu)) {
    double s = 0.0;
    for (const auto& at : a->atoms) {
      if (disc.contains(at.point)) s += std::abs(at.weight);
    }
    return s;
  }
  const auto& d = std::get<DensityMeasure>(mu);
  std::vector<DiscRule> axes;
  for (std::size_t l = 0; l < disc.center.dim(); ++l) {
    axes.push_back(euclidean_disc_rule(euclidean_realization(disc, l), d.quad));
  }
  double s = 0.0;
  for_each_tensor_node(std::span<const DiscRule>(axes),
                       [&](std::span<const cplx> w, double wt) { s += wt * density_abs(d, w); });
  return s;
}

GridSup geometric_norm(const Measure& mu, double r, const std::vector<PolyPoint>& centers) {
  if (!(r > 0.0)) throw DomainError("geometric_norm: r must be positive");
  return grid_max(centers, [&](const PolyPoint& z) {
    const double d = z.defect();
    return disc_mass(mu, HyperbolicDisc{z, r}) / (d * d);
  });
}

double carleson_constant(const Measure& mu, const MonomialBasis& basis) {
  const Measure abs_mu = total_variation_measure(mu);
  if (const auto* a = std::get_if<AtomicMeasure>(&abs_mu)) return operator_norm(toeplitz_measure(*a, basis));
  const auto& d = std::get<DensityMeasure>(abs_mu);
  if (d.n != basis.dim()) throw DomainError("carleson_constant: density and basis dimensions differ");
  QuadratureSpec q = d.quad;
  const QuadratureSpec exact = QuadratureSpec::for_degree(basis.max_degree());
  q.angular_nodes = std::max(q.angular_nodes, exact.angular_nodes);
  q.radial_nodes = std::max(q.radial_nodes, exact.radial_nodes);
  return operator_norm(toeplitz_symbol(d.density, basis, q));
}

AtomicMeasure pushforward_mu_z(const AtomicMeasure& mu, const PolyPoint& z) {
  std::vector<Atom> out;
  out.reserve(mu.atoms.size());
  for (const auto& at : mu.atoms) {
    require_same_dim(at.point, z);
    out.push_back({mobius_apply(z, at.point), at.weight * rkm_kernel(z, at.point.coords())});
  }
  return AtomicMeasure(std::move(out));
}

}  // namespace bergman
