#include "bergman/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "bergman/basis.hpp"
#include "bergman/covering.hpp"
#include "bergman/errors.hpp"
#include "bergman/measures.hpp"
#include "bergman/operators.hpp"
#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExact = 1e-12;

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Whether sup_r F_{s,t}(r) (1-r^2)^extra is finite, using F ~ (1-r^2)^min(2+t-s, 0),
// with a logarithm when 2 + t = s.
bool bounded_growth(double s, double t, double extra) {
  const double g = 2.0 + t - s;
  const double e = std::min(g, 0.0) + extra;
  if (e > kExact) return true;
  if (e < -kExact) return false;
  return std::abs(g) > kExact;
}

}  // namespace

double growth_integral(double s, double t, cplx z, int panel_nodes) {
  if (!(t > -1.0)) throw DomainError("growth_integral: t must exceed -1 (the integral diverges)");
  if (!(std::abs(z) < 1.0)) throw DomainError("growth_integral: z must lie in the unit disc");
  const DiscRule rule = focused_disc_rule(z, panel_nodes, t);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    sum += rule.weights[i] * std::pow(std::norm(1.0 - std::conj(rule.nodes[i]) * z), -0.5 * s);
  }
  return sum;
}

double growth_integral_series(double s, double t, double modulus, double rel_tol) {
  if (!(t > -1.0)) throw DomainError("growth_integral_series: t must exceed -1");
  if (!(modulus >= 0.0 && modulus < 1.0)) throw DomainError("growth_integral_series: modulus must lie in [0, 1)");
  const double x = modulus * modulus;
  double c = 1.0;
  double b = 1.0 / (t + 1.0);
  double xk = 1.0;
  double sum = b;
  for (int k = 1; k < 10'000'000; ++k) {
    c *= (k - 1 + 0.5 * s) / k;
    b *= k / (k + t + 1.0);
    xk *= x;
    const double term = c * c * xk * b;
    sum += term;
    // Terms eventually decrease geometrically; stop once they are negligible and shrinking.
    if (term < rel_tol * sum && k > 2.0 * std::abs(s) + 10.0) return sum;
  }
  throw NumericError("growth_integral_series: no convergence");
}

double growth_exponent_fit(double s, double t, const std::vector<double>& moduli, int panel_nodes) {
  if (moduli.size() < 2) throw DomainError("growth_exponent_fit: need at least two moduli");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double r : moduli) {
    const double x = std::log1p(-r * r);
    const double y = std::log(growth_integral(s, t, r, panel_nodes));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(moduli.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

KernelSpec KernelSpec::power(double s, double t, double scale) {
  if (!(scale >= 0.0)) throw DomainError("KernelSpec: scale must be nonnegative");
  return KernelSpec{s, t, scale, "power"};
}

KernelSpec KernelSpec::tech(double p) {
  if (!(p > 1.0)) throw DomainError("KernelSpec::tech: p must exceed 1");
  return KernelSpec{2.0, -1.0 / p, 1.0, "tech"};
}

double KernelSpec::operator()(cplx x, cplx y) const {
  return scale * std::pow(1.0 - std::norm(y), t) * std::pow(std::norm(1.0 - std::conj(x) * y), -0.5 * s);
}

SchurResult schur_bound(const KernelSpec& kernel, double h_exponent, double p, const SchurOptions& opt) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("schur_bound: p must lie in (1, infinity)");
  if (!(kernel.scale >= 0.0)) throw DomainError("schur_bound: kernel must be nonnegative");
  if (opt.grid.empty()) throw DomainError("schur_bound: empty test grid");
  SchurResult out;
  if (kernel.scale == 0.0) return out;
  const double q = p / (p - 1.0);
  const double a = h_exponent;

  // int K(x,y) h(y)^q dv(y) = scale F_{s, t + q a}(x); int K(x,y) h(x)^p dv(x) = scale F_{s, p a}(y) (1-|y|^2)^t.
  const double tq = kernel.t + q * a;
  const double tp = p * a;
  if (!(tq > -1.0)) {
    throw NumericError("schur_bound: C_q integral diverges (t + q h_exponent = " + num(tq) + " <= -1)");
  }
  if (!(tp > -1.0)) throw NumericError("schur_bound: C_p integral diverges (p h_exponent = " + num(tp) + " <= -1)");
  if (!bounded_growth(kernel.s, tq, -q * a)) {
    throw NumericError("schur_bound: C_q unbounded toward the circle (int K h^q grows faster than h^q)");
  }
  if (!bounded_growth(kernel.s, tp, kernel.t - p * a)) {
    throw NumericError("schur_bound: C_p unbounded toward the circle (int K h^p grows faster than h^p)");
  }
  for (double r : opt.grid) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("schur_bound: grid moduli must lie in [0, 1)");
    const double d = 1.0 - r * r;
    const double cq = kernel.scale * growth_integral(kernel.s, tq, r, opt.panel_nodes) * std::pow(d, -q * a);
    const double cp = kernel.scale * growth_integral(kernel.s, tp, r, opt.panel_nodes) * std::pow(d, kernel.t - p * a);
    if (!std::isfinite(cq) || !std::isfinite(cp)) throw NumericError("schur_bound: Schur integral not finite on the grid");
    out.c_q = std::max(out.c_q, cq);
    out.c_p = std::max(out.c_p, cp);
  }
  out.bound = std::pow(out.c_q, 1.0 / q) * std::pow(out.c_p, 1.0 / p);

  // Nystrom nodes: radial panels graded geometrically in 1 - r toward r_max, uniform angles.
  if (!(opt.r_max > 0.0 && opt.r_max < 1.0)) throw DomainError("schur_bound: r_max must lie in (0, 1)");
  std::vector<double> breaks;
  for (int k = 0; k <= opt.radial_panels; ++k) {
    breaks.push_back(1.0 - std::pow(1.0 - opt.r_max, static_cast<double>(k) / opt.radial_panels));
  }
  const Rule1D radial = composite_gauss_legendre(breaks, opt.radial_nodes);
  std::vector<cplx> nodes;
  std::vector<double> w;
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    for (int j = 0; j < opt.angular_nodes; ++j) {
      nodes.push_back(std::polar(radial.nodes[i], 2.0 * kPi * j / opt.angular_nodes));
      w.push_back(radial.weights[i] * radial.nodes[i] * 2.0 / opt.angular_nodes);
    }
  }
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd kmat(m, m);
  parallel_for(nodes.size(), [&](std::size_t i) {
    for (Eigen::Index j = 0; j < m; ++j) kmat(static_cast<Eigen::Index>(i), j) = kernel(nodes[i], nodes[j]);
  });
  const Eigen::VectorXd omega = Eigen::Map<const Eigen::VectorXd>(w.data(), m);
  auto pnorm = [&](const Eigen::VectorXd& f) { return std::pow((f.array().pow(p) * omega.array()).sum(), 1.0 / p); };

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int trial = 0; trial < opt.trials; ++trial) {
    Eigen::VectorXd f(m);
    for (Eigen::Index i = 0; i < m; ++i) f[i] = u(rng);
    f /= pnorm(f);
    for (int it = 0; it < opt.iterations; ++it) {
      const Eigen::VectorXd g = kmat * (omega.array() * f.array()).matrix();
      out.empirical_norm = std::max(out.empirical_norm, pnorm(g));
      // Nonnegative power step for the p-norm: f_j ~ (sum_i K_ij w_i g_i^(p-1))^(q-1).
      const Eigen::VectorXd y = kmat.transpose() * (omega.array() * g.array().pow(p - 1.0)).matrix();
      f = y.array().pow(q - 1.0).matrix();
      const double fn = pnorm(f);
      if (!(fn > 0.0) || !std::isfinite(fn)) break;
      f /= fn;
    }
  }
  return out;
}

Tech1Report tech1_ratio(double sigma, double p, double gamma, const AtomicMeasure& mu, std::size_t samples,
                        const Tech1Options& opt) {
  if (!(sigma >= 1.0)) throw DomainError("tech1_ratio: sigma must be at least 1");
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("tech1_ratio: p must lie in (1, infinity)");
  const double gmax = std::min(0.5 / p, (p - 1.0) / p);
  if (!(gamma > 0.0 && gamma < gmax)) {
    throw DomainError("tech1_ratio: gamma must lie in (0, " + num(gmax) + ")");
  }
  Tech1Report rep;
  rep.samples = samples;
  if (mu.atoms.empty() || samples == 0) return rep;
  const std::size_t n = mu.dim();

  const Covering cov = build_suarez_covering(sigma, 0, n, opt.beta_max);
  const auto& cells = cov.levels.front();
  const std::size_t per_axis = cov.lattice->cells().size();
  AtomicMeasure abs_mu;
  for (const auto& a : mu.atoms) abs_mu.atoms.push_back(Atom{a.point, std::abs(a.weight)});
  rep.t_mu_norm = operator_norm(toeplitz_measure(abs_mu, MonomialBasis(n, opt.degree)));
  const double delta = std::tanh(0.5 * sigma);
  const double decay = std::pow(1.0 - delta * delta, gamma);

  std::mt19937_64 rng(opt.seed);
  std::vector<PolyPoint> pts;
  for (std::size_t i = 0; i < samples; ++i) pts.push_back(sample_point(rng, n, opt.beta_max));
  std::vector<double> ratio(samples, 0.0);
  parallel_for(samples, [&](std::size_t i) {
    const PolyPoint& z = pts[i];
    std::size_t flat = 0;
    for (std::size_t l = 0; l < n; ++l) {
      const auto loc = cov.lattice->locate(z[l]);
      if (!loc) return;
      flat = flat * per_axis + *loc;
    }
    const LatticeCell& f = cells[flat];
    double lhs = 0.0;
    for (const auto& a : abs_mu.atoms) {
      if (!(f.distance(a.point) > sigma)) continue;
      double k = a.weight.real();
      for (std::size_t l = 0; l < n; ++l) {
        k *= std::pow(1.0 - std::norm(a.point[l]), -1.0 / p) / std::norm(1.0 - std::conj(z[l]) * a.point[l]);
      }
      lhs += k;
    }
    if (lhs == 0.0) return;
    double rhs = rep.t_mu_norm * decay;
    for (std::size_t l = 0; l < n; ++l) rhs *= std::pow(1.0 - std::norm(z[l]), -1.0 / p);
    ratio[i] = lhs / rhs;
  });
  for (std::size_t i = 0; i < samples; ++i) {
    if (ratio[i] > rep.ratio) {
      rep.ratio = ratio[i];
      rep.argmax = pts[i];
    }
  }
  return rep;
}

}  // namespace bergman
