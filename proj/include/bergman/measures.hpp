#pragma once

#include <variant>
#include <vector>

#include "bergman/basis.hpp"
#include "bergman/measure_types.hpp"

namespace bergman {

using Measure = std::variant<AtomicMeasure, DensityMeasure>;

/// A maximum over a finite grid, with the grid point attaining it.
struct GridSup {
  double value = 0.0;
  PolyPoint argmax;
  std::size_t grid_size = 0;
};

/// int prod_l (1-|z_l|^2)^2 / |1 - conj(z_l) w_l|^4 d|mu|(w) at one point.
double rkm_integrand(const Measure& mu, const PolyPoint& z);
/// Grid maximum of rkm_integrand; a lower bound for the supremum over D^n.
GridSup rkm_norm(const Measure& mu, const std::vector<PolyPoint>& grid);

/// |mu|(D(z, r)): membership count for atoms, quadrature over the Euclidean realization for densities.
double disc_mass(const Measure& mu, const HyperbolicDisc& d);
/// Maximum over centers of |mu|(D(z, r)) / prod_l (1-|z_l|^2)^2.
GridSup geometric_norm(const Measure& mu, double r, const std::vector<PolyPoint>& centers);

/// Largest singular value of the truncated T_|mu|.
double carleson_constant(const Measure& mu, const MonomialBasis& basis);

/// mu_z: atoms p -> phi_z(p) with weights multiplied by prod (1-|z_l|^2)^2 / |1 - conj(z_l) p_l|^4,
/// so that int f(phi_z(xi)) prod (1-|z_l|^2)^2/|1 - conj(z_l) xi_l|^4 dmu(xi) = int f dmu_z.
AtomicMeasure pushforward_mu_z(const AtomicMeasure& mu, const PolyPoint& z);

/// The nonnegative measure |mu| (atom weights |c_i|, density |a|).
Measure total_variation_measure(const Measure& mu);

}  // namespace bergman
