#pragma once

#include <span>
#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

/// Node counts for disc quadrature.
///
/// The plain rule is Gauss-Legendre in s = |w|^2 on [0,1] times uniform angles.
/// It integrates w^a conj(w)^b exactly when angular_nodes > |a - b| and
/// 2 * radial_nodes > a when a == b. `panel_nodes` is the per-panel
/// Gauss-Legendre order of graded (focused) rules.
struct QuadratureSpec {
  int radial_nodes = 32;
  int angular_nodes = 32;
  int panel_nodes = 16;

  /// Smallest plain rule that is exact on products e_a conj(e_b) with per-axis degree <= D.
  static QuadratureSpec for_degree(int max_degree);
  void validate() const;
};

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [a, b].
Rule1D gauss_legendre(int n, double a, double b);
/// Composite Gauss-Legendre over consecutive breakpoints.
Rule1D composite_gauss_legendre(std::span<const double> breaks, int nodes_per_panel);

/// Nodes and weights on D with weights summing to the measure of the region
/// under the normalized area dv = dA / pi (optionally times a radial weight).
struct DiscRule {
  std::vector<cplx> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
};

/// Plain tensor rule for dv on the whole disc.
DiscRule plain_disc_rule(const QuadratureSpec& q);

/// Tensor rule on the Euclidean disc |w - c| < R (weights are dv-measures).
DiscRule euclidean_disc_rule(const EuclideanDisc& d, const QuadratureSpec& q);

/// Gauss-Legendre in r and theta over {r1 <= |w| <= r2, th1 <= arg w <= th2}.
/// The radial factor r^(a+b+1) is integrated exactly when 2 * nr > a + b + 1.
DiscRule polar_box_rule(double r1, double r2, double th1, double th2, int nr, int nth);

/// Graded composite rule for the measure (1 - |w|^2)^weight_exponent dv(w),
/// refined geometrically around `focus` and towards the unit circle.
/// Suited to integrands with a peak of width ~ (1 - |focus|) near focus or near
/// the boundary point focus/|focus|. Requires weight_exponent > -1.
DiscRule focused_disc_rule(cplx focus, int panel_nodes, double weight_exponent = 0.0);

/// Visits every node of the tensor product of per-axis rules.
/// f(std::span<const cplx> point, double weight)
template <class F>
void for_each_tensor_node(std::span<const DiscRule> axes, F&& f) {
  const std::size_t n = axes.size();
  if (n == 0) return;
  for (const auto& a : axes) {
    if (a.size() == 0) return;
  }
  std::vector<std::size_t> idx(n, 0);
  std::vector<cplx> point(n);
  while (true) {
    double w = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
      point[l] = axes[l].nodes[idx[l]];
      w *= axes[l].weights[idx[l]];
    }
    f(std::span<const cplx>(point), w);
    std::size_t l = n;
    while (true) {
      if (l == 0) return;
      --l;
      if (++idx[l] < axes[l].size()) break;
      idx[l] = 0;
    }
  }
}

}  // namespace bergman
