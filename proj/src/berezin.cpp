#include "bergman/berezin.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include "bergman/errors.hpp"
#include "bergman/operators.hpp"
#include "bergman/parallel.hpp"

namespace bergman {

namespace {

double k_kernel(const PolyPoint& z, std::span<const cplx> w, int k) {
  double v = 1.0;
  for (std::size_t l = 0; l < z.dim(); ++l) {
    const double dz = 1.0 - std::norm(z[l]);
    const double dw = 1.0 - std::norm(w[l]);
    v *= (k + 1) * std::pow(dz, 2 + k) * std::pow(dw, k) / std::pow(std::norm(1.0 - std::conj(w[l]) * z[l]), 2 + k);
  }
  return v;
}

}  // namespace

double admissible_radius(int max_degree, double max_tail) {
  // The one-variable tail is increasing in |z|; bisect on x = |z|^2.
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kernel_axis_tail(mid, max_degree) <= max_tail) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Slightly inside, so points built as r * e^(i theta) also pass after rounding.
  return std::sqrt(lo) * (1.0 - 1e-12);
}

BerezinValue berezin_operator(const TruncatedOperator& s, const PolyPoint& z, double max_tail) {
  const KernelCoefficients c = kernel_coefficients(z, s.basis);
  if (c.tail > max_tail) {
    std::ostringstream msg;
    msg << std::setprecision(3) << "berezin: kernel truncation tail " << c.tail << " exceeds " << max_tail
        << " at max|z| = " << std::setprecision(6) << z.max_modulus() << "; raise the basis degree or move z inward";
    throw DomainError(msg.str());
  }
  return {c.coeffs.dot(s.matrix * c.coeffs), c.tail};
}

cplx k_berezin_measure(const Measure& mu, int k, const PolyPoint& z, int panel_nodes) {
  if (k < 0) throw DomainError("k-Berezin: k must be >= 0");
  if (const auto* a = std::get_if<AtomicMeasure>(&mu)) {
    cplx s = 0.0;
    for (const auto& at : a->atoms) {
      require_same_dim(at.point, z);
      s += at.weight * k_kernel(z, at.point.coords(), k);
    }
    return s;
  }
  const auto& d = std::get<DensityMeasure>(mu);
  if (d.n != z.dim()) throw DomainError("k-Berezin: density and point dimensions differ");
  std::vector<DiscRule> axes;
  for (std::size_t l = 0; l < z.dim(); ++l) axes.push_back(focused_disc_rule(z[l], panel_nodes, double(k)));
  cplx s = 0.0;
  // The rule carries (1-|w|^2)^k, so the kernel is evaluated without that factor.
  for_each_tensor_node(std::span<const DiscRule>(axes), [&](std::span<const cplx> w, double wt) {
    double v = 1.0;
    for (std::size_t l = 0; l < z.dim(); ++l) {
      const double dz = 1.0 - std::norm(z[l]);
      v *= (k + 1) * std::pow(dz, 2 + k) / std::pow(std::norm(1.0 - std::conj(w[l]) * z[l]), 2 + k);
    }
    s += wt * v * d.density(w);
  });
  return s;
}

cplx k_berezin_symbol(const Symbol& a, int k, const PolyPoint& z, int panel_nodes) {
  if (k < 0) throw DomainError("k-Berezin: k must be >= 0");
  std::vector<DiscRule> axes;
  for (std::size_t l = 0; l < z.dim(); ++l) axes.push_back(focused_disc_rule(z[l], panel_nodes, double(k)));
  cplx s = 0.0;
  std::vector<cplx> image(z.dim());
  for_each_tensor_node(std::span<const DiscRule>(axes), [&](std::span<const cplx> xi, double wt) {
    for (std::size_t l = 0; l < z.dim(); ++l) image[l] = mobius(z[l], xi[l]);
    s += wt * a(std::span<const cplx>(image));
  });
  return std::pow(double(k + 1), double(z.dim())) * s;
}

CovarianceCheck berezin_covariance_check(const AtomicMeasure& mu, int k, const PolyPoint& z, const PolyPoint& w) {
  CovarianceCheck c;
  c.lhs = k_berezin_measure(mu, k, mobius_apply(z, w));
  c.rhs = k_berezin_measure(pushforward_mu_z(mu, z), k, w);
  c.diff = std::abs(c.lhs - c.rhs);
  return c;
}

GridSup approx_symbol_error(const Symbol& a, int k, const std::vector<PolyPoint>& grid, int panel_nodes) {
  if (grid.empty()) throw DomainError("approx_symbol_error: grid must be nonempty");
  std::vector<double> err(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    err[i] = std::abs(k_berezin_symbol(a, k, grid[i], panel_nodes) - a(grid[i]));
  });
  GridSup out;
  out.grid_size = grid.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < err.size(); ++i) {
    if (err[i] > err[best]) best = i;
  }
  out.value = err[best];
  out.argmax = grid[best];
  return out;
}

BerezinProfile decay_profile(const TruncatedOperator& s, const std::vector<cplx>& direction,
                             const std::vector<double>& radii, double max_tail) {
  if (direction.size() != s.basis.dim()) throw DomainError("decay_profile: direction has the wrong dimension");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0 && radii[i] < 1.0)) throw DomainError("decay_profile: radii must lie in [0, 1)");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("decay_profile: radii must be strictly increasing");
  }
  BerezinProfile p;
  for (const auto& d : direction) p.direction.push_back(d / std::abs(d));
  p.radii = radii;
  p.values.resize(radii.size());
  p.tails.resize(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    std::vector<cplx> z(direction.size());
    for (std::size_t l = 0; l < z.size(); ++l) z[l] = radii[i] * p.direction[l];
    const BerezinValue v = berezin_operator(s, PolyPoint(std::move(z)), max_tail);
    p.values[i] = v.value;
    p.tails[i] = v.tail;
  }
  return p;
}

void write_profile_csv(std::ostream& os, const std::vector<BerezinProfile>& profiles, bool header) {
  const std::size_t n = profiles.empty() ? 0 : profiles.front().direction.size();
  if (header) {
    for (std::size_t l = 0; l < n; ++l) os << "dir_arg_" << (l + 1) << ',';
    os << "radius,re,im,tail_bound\n";
  }
  os << std::setprecision(17);
  for (const auto& p : profiles) {
    for (std::size_t i = 0; i < p.radii.size(); ++i) {
      for (const auto& d : p.direction) os << std::arg(d) << ',';
      os << p.radii[i] << ',' << p.values[i].real() << ',' << p.values[i].imag() << ',' << p.tails[i] << '\n';
    }
  }
}

}  // namespace bergman
