#include "bergman/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

struct GslTableDeleter {
  void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
};
using GslTable = std::unique_ptr<gsl_integration_glfixed_table, GslTableDeleter>;

// Reference nodes/weights on [-1, 1], cached per order.
const Rule1D& reference_rule(int n) {
  static std::mutex mu;
  static std::map<int, Rule1D> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GslTable table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)));
  if (!table) throw NumericError("gauss_legendre: table allocation failed");
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &r.nodes[i], &r.weights[i],
                                  table.get());
  }
  return cache.emplace(n, std::move(r)).first->second;
}

std::vector<double> sorted_unique(std::vector<double> v, double lo, double hi) {
  std::erase_if(v, [&](double x) { return !(x >= lo && x <= hi); });
  v.push_back(lo);
  v.push_back(hi);
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x > out.back()) out.push_back(x);
  }
  return out;
}

// Breakpoints on [0, 1] refined around x0 at scale delta and geometrically
// towards 1 down to a gap of `floor`.
std::vector<double> graded_unit_breaks(double x0, double delta, double floor) {
  std::vector<double> b{x0, x0 - 0.25 * delta, x0 + 0.25 * delta};
  for (double h = 0.5 * delta; x0 - h > 0.0; h *= 2.0) b.push_back(x0 - h);
  for (double h = 0.5 * delta; h > floor; h *= 0.5) b.push_back(1.0 - h);
  return sorted_unique(std::move(b), 0.0, 1.0);
}

}  // namespace

QuadratureSpec QuadratureSpec::for_degree(int max_degree) {
  QuadratureSpec q;
  q.angular_nodes = 2 * max_degree + 2;
  q.radial_nodes = max_degree + 2;
  return q;
}

void QuadratureSpec::validate() const {
  if (radial_nodes < 1 || angular_nodes < 1 || panel_nodes < 1) {
    throw DomainError("QuadratureSpec: node counts must be positive");
  }
}

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  const Rule1D& ref = reference_rule(n);
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = mid + half * ref.nodes[i];
    r.weights[i] = half * ref.weights[i];
  }
  return r;
}

Rule1D composite_gauss_legendre(std::span<const double> breaks, int nodes_per_panel) {
  Rule1D out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Rule1D p = gauss_legendre(nodes_per_panel, breaks[i], breaks[i + 1]);
    out.nodes.insert(out.nodes.end(), p.nodes.begin(), p.nodes.end());
    out.weights.insert(out.weights.end(), p.weights.begin(), p.weights.end());
  }
  return out;
}

double DiscRule::total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

DiscRule plain_disc_rule(const QuadratureSpec& q) {
  q.validate();
  const Rule1D radial = gauss_legendre(q.radial_nodes, 0.0, 1.0);
  DiscRule d;
  d.nodes.reserve(static_cast<std::size_t>(q.radial_nodes) * q.angular_nodes);
  d.weights.reserve(d.nodes.capacity());
  for (int i = 0; i < q.radial_nodes; ++i) {
    const double r = std::sqrt(radial.nodes[i]);
    for (int a = 0; a < q.angular_nodes; ++a) {
      d.nodes.push_back(std::polar(r, 2.0 * kPi * a / q.angular_nodes));
      d.weights.push_back(radial.weights[i] / q.angular_nodes);
    }
  }
  return d;
}

DiscRule euclidean_disc_rule(const EuclideanDisc& e, const QuadratureSpec& q) {
  DiscRule d = plain_disc_rule(q);
  const double r2 = e.radius * e.radius;
  for (std::size_t i = 0; i < d.size(); ++i) {
    d.nodes[i] = e.center + e.radius * d.nodes[i];
    d.weights[i] *= r2;
  }
  return d;
}

DiscRule polar_box_rule(double r1, double r2, double th1, double th2, int nr, int nth) {
  const Rule1D radial = gauss_legendre(nr, r1, r2);
  const Rule1D angular = gauss_legendre(nth, th1, th2);
  DiscRule d;
  d.nodes.reserve(static_cast<std::size_t>(nr) * nth);
  d.weights.reserve(d.nodes.capacity());
  for (int i = 0; i < nr; ++i) {
    for (int a = 0; a < nth; ++a) {
      d.nodes.push_back(std::polar(radial.nodes[i], angular.nodes[a]));
      d.weights.push_back(radial.weights[i] * radial.nodes[i] * angular.weights[a] / kPi);
    }
  }
  return d;
}

DiscRule focused_disc_rule(cplx focus, int panel_nodes, double weight_exponent) {
  if (!(weight_exponent > -1.0)) throw DomainError("focused_disc_rule: weight exponent must exceed -1");
  const double r0 = std::min(std::abs(focus), 1.0 - tol::kBoundary);
  const double s0 = r0 * r0;
  const double defect = 1.0 - s0;

  // Radial variable u on [0,1]. For negative exponents the substitution
  // 1 - s = (1 - u)^(1/(t+1)) absorbs (1 - s)^t ds into du / (t+1).
  const bool transform = weight_exponent < 0.0;
  const double t1 = weight_exponent + 1.0;
  const double u0 = transform ? 1.0 - std::pow(defect, t1) : s0;
  const double du = transform ? std::pow(defect, t1) : defect;
  // Smooth integrands only need grading down to a fraction of the peak width;
  // a non-integer exponent leaves an endpoint singularity that needs the full grading.
  const bool smooth = !transform && weight_exponent == std::floor(weight_exponent);
  const std::vector<double> rbreaks = graded_unit_breaks(u0, du, smooth ? 1e-2 * du : 4e-16);
  const Rule1D radial = composite_gauss_legendre(rbreaks, panel_nodes);

  // Angular panels refined around arg(focus) at scale (1 - r0).
  const double th0 = std::arg(focus);
  const double dth = std::max(1.0 - r0, 1e-15);
  std::vector<double> abreaks{0.0, 0.25 * dth, -0.25 * dth};
  for (double h = 0.5 * dth; h < kPi; h *= 2.0) {
    abreaks.push_back(h);
    abreaks.push_back(-h);
  }
  abreaks = sorted_unique(std::move(abreaks), -kPi, kPi);
  const Rule1D angular = composite_gauss_legendre(abreaks, panel_nodes);

  DiscRule d;
  d.nodes.reserve(radial.nodes.size() * angular.nodes.size());
  d.weights.reserve(d.nodes.capacity());
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double u = radial.nodes[i];
    double s;
    double w;
    if (transform) {
      s = 1.0 - std::pow(1.0 - u, 1.0 / t1);
      w = radial.weights[i] / t1;
    } else {
      s = u;
      w = radial.weights[i] * (weight_exponent == 0.0 ? 1.0 : std::pow(1.0 - s, weight_exponent));
    }
    const double r = std::sqrt(std::max(s, 0.0));
    // dv = ds dtheta / (2 pi)
    for (std::size_t a = 0; a < angular.nodes.size(); ++a) {
      d.nodes.push_back(std::polar(r, th0 + angular.nodes[a]));
      d.weights.push_back(w * angular.weights[a] / (2.0 * kPi));
    }
  }
  return d;
}

}  // namespace bergman
