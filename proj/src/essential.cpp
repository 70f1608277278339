#include "bergman/essential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "bergman/errors.hpp"
#include "bergman/operators.hpp"
#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

Mat kron_power(const Mat& a, std::size_t n) {
  Mat out = Mat::Ones(1, 1);
  for (std::size_t l = 0; l < n; ++l) out = kron(out, a);
  return out;
}

// Angular factor (1/pi) int_{th1}^{th2} e^{i d theta} d theta.
cplx angular_integral(int d, double th1, double th2) {
  if (d == 0) return (th2 - th1) / kPi;
  const cplx num = std::polar(1.0, d * th2) - std::polar(1.0, d * th1);
  return num / (cplx(0.0, 1.0) * static_cast<double>(d) * kPi);
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

AtomicMeasure mu_rho(double rho, std::size_t n, double beta_max) {
  const CrLattice lattice(rho, beta_max);
  std::vector<Atom> atoms;
  for (const auto& cell : product_cells(lattice, n)) atoms.push_back(Atom{cell.center, cell_volume(cell)});
  return AtomicMeasure(std::move(atoms));
}

TruncatedOperator toeplitz_mu_rho(double rho, const MonomialBasis& basis, double beta_max) {
  const int d = basis.max_degree();
  Mat one = Mat::Zero(d + 1, d + 1);
  std::vector<double> pw(2 * d + 1);
  for (const Ring& ring : cr_lattice_rings(rho, beta_max)) {
    const bool disc = ring.b_in == 0.0;
    // Cell volume times sector count: the ring's share of dv.
    double ring_mass;
    if (disc) {
      const double t = std::tanh(ring.b_out);
      ring_mass = t * t;
    } else {
      const double si = 1.0 / std::cosh(ring.b_in);
      const double so = 1.0 / std::cosh(ring.b_out);
      ring_mass = si * si - so * so;
    }
    const double t = disc ? 0.0 : std::tanh(0.5 * (ring.b_in + ring.b_out));
    pw[0] = 1.0;
    for (int k = 1; k <= 2 * d; ++k) pw[k] = pw[k - 1] * t;
    const int m = ring.sectors;
    for (int a = 0; a <= d; ++a) {
      for (int b = 0; b <= d; ++b) {
        const int diff = a - b;
        if (diff % m != 0) continue;
        const double mag = ring_mass * std::sqrt(static_cast<double>((a + 1) * (b + 1))) * pw[a + b];
        one(b, a) += mag * std::polar(1.0, diff * kPi / m);
      }
    }
  }
  return {basis, kron_power(one, basis.dim())};
}

ApproxIdentityResult approx_identity_error(double rho, const MonomialBasis& basis, double beta_max) {
  if (!(beta_max > 1.0)) throw DomainError("approx_identity_error: beta_max must exceed 1");
  const TruncatedOperator id = TruncatedOperator::identity(basis);
  ApproxIdentityResult out;
  out.beta_max = beta_max;
  out.error = operator_norm(toeplitz_mu_rho(rho, basis, beta_max) - id);
  out.error_inner = operator_norm(toeplitz_mu_rho(rho, basis, beta_max - 1.0) - id);
  if (!(std::abs(out.error - out.error_inner) < 0.1 * out.error)) {
    throw NumericError("approx_identity_error: error moves from " + sci(out.error_inner) + " to " + sci(out.error) +
                       " between beta_max " + sci(beta_max - 1.0) + " and " + sci(beta_max) +
                       "; the uncovered region dominates, increase beta_max");
  }
  return out;
}

Vec annulus_gram_diagonal(const MonomialBasis& basis, double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("annulus Gram: r must lie in (0, 1)");
  Vec g(static_cast<Eigen::Index>(basis.size()));
  const double log_r2 = 2.0 * std::log(r);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double e = 0.0;
    for (int a : basis.multi_index(i)) e += a + 1.0;
    g[static_cast<Eigen::Index>(i)] = -std::expm1(e * log_r2);
  }
  return g;
}

double estimator_c(const TruncatedOperator& s, double r) {
  const Vec g = annulus_gram_diagonal(s.basis, r);
  return operator_norm(Mat(g.real().cwiseSqrt().asDiagonal() * s.matrix));
}

Mat disc_gram(const EuclideanDisc& disc, int max_degree, int nodes) {
  const double a = std::abs(disc.center);
  const double big = disc.radius;
  if (!(big > 0.0) || !(a + big < 1.0)) throw DomainError("disc_gram: disc must lie inside the unit disc");
  if (max_degree < 0) throw DomainError("disc_gram: negative degree");
  if (nodes <= 0) nodes = 2 * max_degree + 64;
  const int d = max_degree;
  const double tc = std::arg(disc.center);
  Mat g = Mat::Zero(d + 1, d + 1);
  std::vector<double> sq(d + 1);
  for (int k = 0; k <= d; ++k) sq[k] = std::sqrt(k + 1.0);

  // Full circles |w| < big - a when the disc contains the origin.
  if (big > a) {
    const double r0 = big - a;
    for (int k = 0; k <= d; ++k) g(k, k) += std::pow(r0, 2 * k + 2);
  }
  if (a == 0.0) return g;

  // The remaining radii [mid - half, mid + half] see an arc of half-width th(r).
  const double mid = std::max(a, big);
  const double half = std::min(a, big);
  const Rule1D rule = gauss_legendre(nodes, 0.0, kPi);
  std::vector<double> pw(2 * d + 2);
  std::vector<cplx> ang(2 * d + 1);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double phi = rule.nodes[i];
    const double r = mid - half * std::cos(phi);
    const double jac = half * std::sin(phi);
    const double c = std::clamp((r * r + a * a - big * big) / (2.0 * r * a), -1.0, 1.0);
    const double th = std::acos(c);
    pw[0] = 1.0;
    for (int k = 1; k <= 2 * d + 1; ++k) pw[k] = pw[k - 1] * r;
    for (int k = -d; k <= d; ++k) ang[k + d] = angular_integral(k, tc - th, tc + th);
    const double w = rule.weights[i] * jac;
    for (int al = 0; al <= d; ++al) {
      for (int be = 0; be <= d; ++be) {
        g(be, al) += w * sq[al] * sq[be] * pw[al + be + 1] * ang[al - be + d];
      }
    }
  }
  return g;
}

Mat hyperbolic_box_gram(const HyperbolicDisc& box, const MonomialBasis& basis) {
  if (box.center.dim() != basis.dim()) throw DomainError("hyperbolic_box_gram: dimension mismatch");
  Mat g = Mat::Ones(1, 1);
  for (std::size_t l = 0; l < basis.dim(); ++l) {
    g = kron(g, disc_gram(euclidean_realization(box, l), basis.max_degree()));
  }
  return g;
}

double gram_weighted_norm(const Mat& gram, const Mat& s) {
  if (gram.rows() != s.rows()) throw DomainError("gram_weighted_norm: size mismatch");
  Mat h = s.adjoint() * gram * s;
  h = 0.5 * (h + h.adjoint()).eval();
  if (h.size() == 0) return 0.0;
  const Eigen::SelfAdjointEigenSolver<Mat> eig(h, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericError("gram_weighted_norm: eigensolver failed");
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

double estimator_b(const TruncatedOperator& s, double r, const std::vector<PolyPoint>& centers) {
  if (!(r > 0.0)) throw DomainError("estimator_b: radius must be positive");
  std::vector<double> vals(centers.size(), 0.0);
  parallel_for(centers.size(), [&](std::size_t i) {
    vals[i] = gram_weighted_norm(hyperbolic_box_gram(HyperbolicDisc{centers[i], r}, s.basis), s.matrix);
  });
  double best = 0.0;
  for (double v : vals) best = std::max(best, v);
  return best;
}

EstimatorAResult estimator_a(const TruncatedOperator& s, double r, const PolyPoint& z, double rho, double rank_tol) {
  const std::size_t n = s.basis.dim();
  if (z.dim() != n) throw DomainError("estimator_a: point dimension does not match the basis");
  if (!(r > 0.0)) throw DomainError("estimator_a: radius must be positive");
  double reach = 0.0;
  for (std::size_t l = 0; l < n; ++l) reach = std::max(reach, beta_from_origin(z[l]));
  const CrLattice lattice(rho, std::min(15.0, reach + r + rho));
  std::vector<std::vector<cplx>> per_axis(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i : lattice.centers_within(z[l], r)) per_axis[l].push_back(lattice.cells()[i].center);
    if (per_axis[l].empty()) throw DomainError("estimator_a: no lattice point inside D(z, r)");
  }

  std::vector<Vec> cols;
  EstimatorAResult out;
  std::vector<std::size_t> idx(n, 0);
  std::vector<cplx> p(n);
  while (true) {
    for (std::size_t l = 0; l < n; ++l) p[l] = per_axis[l][idx[l]];
    const KernelCoefficients k = kernel_coefficients(PolyPoint(p), s.basis);
    out.max_tail = std::max(out.max_tail, k.tail);
    cols.push_back(k.coeffs);
    std::size_t l = n;
    while (l > 0 && ++idx[l - 1] == per_axis[l - 1].size()) idx[--l] = 0;
    if (l == 0) break;
  }
  out.lattice_points = cols.size();

  Mat kmat(static_cast<Eigen::Index>(s.basis.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) kmat.col(static_cast<Eigen::Index>(j)) = cols[j] / cols[j].norm();
  const Eigen::JacobiSVD<Mat> svd(kmat, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > rank_tol * sv[0]) ++rank;
  out.rank = static_cast<std::size_t>(rank);
  out.value = operator_norm(Mat(s.matrix * svd.matrixU().leftCols(rank)));
  return out;
}

Mat polar_box_gram(double r1, double r2, double th1, double th2, int max_degree) {
  if (!(0.0 <= r1 && r1 <= r2 && r2 <= 1.0)) throw DomainError("polar_box_gram: need 0 <= r1 <= r2 <= 1");
  const int d = max_degree;
  Mat g = Mat::Zero(d + 1, d + 1);
  std::vector<double> radial(2 * d + 1);
  for (int k = 0; k <= 2 * d; ++k) {
    // int_{r1}^{r2} r^(k+1) dr, with the difference of powers taken via expm1 to keep thin shells accurate.
    const double e = k + 2.0;
    radial[k] = r1 > 0.0 ? std::pow(r2, e) * -std::expm1(e * std::log(r1 / r2)) / e : std::pow(r2, e) / e;
  }
  for (int al = 0; al <= d; ++al) {
    for (int be = 0; be <= d; ++be) {
      g(be, al) = std::sqrt((al + 1.0) * (be + 1.0)) * radial[al + be] * angular_integral(al - be, th1, th2);
    }
  }
  return g;
}

SegmentedResult segmented_error(const TruncatedOperator& s, const AtomicMeasure& mu, const Covering& cov) {
  const MonomialBasis& basis = s.basis;
  const std::size_t n = basis.dim();
  if (cov.levels.size() < static_cast<std::size_t>(cov.k + 2)) {
    throw DomainError("segmented_error: covering lacks level k + 1");
  }
  if (cov.n != n) throw DomainError("segmented_error: covering dimension does not match the basis");
  for (const auto& at : mu.atoms) {
    if (at.point.dim() != n) throw DomainError("segmented_error: atom dimension does not match the basis");
  }
  const auto& base = cov.levels.front();
  const auto& outer = cov.levels[static_cast<std::size_t>(cov.k) + 1];
  if (base.size() != outer.size()) throw DomainError("segmented_error: levels 0 and k + 1 differ in cell count");

  SegmentedResult out;
  out.cells = base.size();
  out.atoms = mu.atoms.size();
  const auto dim = static_cast<Eigen::Index>(basis.size());
  if (mu.atoms.empty()) return out;

  const Mat t_mu = toeplitz_measure(mu, basis).matrix;
  const double omega = cov.beta_max;
  const int d = basis.max_degree();

  std::vector<Mat> parts(base.size());
  parallel_for(base.size(), [&](std::size_t j) {
    // Gram of F_j within Omega.
    Mat gram = Mat::Ones(1, 1);
    for (const DiscCell& f : base[j].factors) {
      if (f.kind == CellKind::Point || f.b_in >= omega) {
        gram = Mat::Zero(1, 1);
        break;
      }
      const double r2 = std::tanh(std::min(f.b_out, omega));
      const double r1 = f.kind == CellKind::Disc ? 0.0 : std::tanh(f.b_in);
      const double lo = f.kind == CellKind::Disc ? 0.0 : f.theta_lo();
      const double hi = f.kind == CellKind::Disc ? 2.0 * kPi : lo + f.theta_width();
      gram = kron(gram, polar_box_gram(r1, r2, lo, hi, d));
    }
    if (gram.size() == 1) {
      parts[j] = Mat::Zero(dim, dim);
      return;
    }
    const LatticeCell& g = outer[j];
    const double reach = g.circumradius();
    AtomicMeasure inside;
    AtomicMeasure outside;
    for (const auto& at : mu.atoms) {
      bool near = true;
      for (std::size_t l = 0; l < n && near; ++l) near = beta1(at.point[l], g.center[l]) <= reach;
      if (near && g.contains(at.point)) {
        inside.atoms.push_back(at);
      } else {
        outside.atoms.push_back(at);
      }
    }
    // T of the complement, from whichever side has fewer atoms.
    const Mat t_out = inside.atoms.size() <= outside.atoms.size() ? Mat(t_mu - toeplitz_measure(inside, basis).matrix)
                                                                  : toeplitz_measure(outside, basis).matrix;
    const Mat a = s.matrix * t_out;
    parts[j] = a.adjoint() * gram * a;
  });
  Mat h = Mat::Zero(dim, dim);
  for (const auto& p : parts) h += p;
  h = 0.5 * (h + h.adjoint()).eval();
  const Eigen::SelfAdjointEigenSolver<Mat> eig(h, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericError("segmented_error: eigensolver failed");
  out.error = std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Vanishing:
      return "vanishing";
    case Verdict::NonVanishing:
      return "non-vanishing";
    case Verdict::Inconclusive:
      break;
  }
  return "inconclusive";
}

VerdictReport compactness_verdict(const TruncatedOperator& s, const VerdictConfig& cfg) {
  const MonomialBasis& basis = s.basis;
  const std::size_t n = basis.dim();
  if (cfg.directions < 1 || cfg.profile_points < 2) throw DomainError("compactness_verdict: need directions >= 1, profile_points >= 2");
  VerdictReport rep;
  rep.operator_norm = operator_norm(s);
  // The total tail of n equal axes is about n times the axis tail.
  rep.admissible_radius = admissible_radius(basis.max_degree(), cfg.max_tail / static_cast<double>(n));
  rep.eps_radius_admissible = cfg.eps_radius <= rep.admissible_radius;

  // Radii with 1 - r^2 geometric from 3/4 down to the admissible shell.
  const double top = 1.0 - rep.admissible_radius * rep.admissible_radius;
  std::vector<double> radii;
  if (rep.admissible_radius > 0.5) {
    for (int i = 0; i < cfg.profile_points; ++i) {
      const double f = static_cast<double>(i) / (cfg.profile_points - 1);
      const double defect = 0.75 * std::pow(top / 0.75, f);
      radii.push_back(std::min(std::sqrt(1.0 - defect), rep.admissible_radius));
    }
  } else {
    radii.push_back(rep.admissible_radius);
  }

  // Directions: products of equally spaced angles per axis.
  std::vector<std::vector<cplx>> dirs{{}};
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<std::vector<cplx>> next;
    for (const auto& d : dirs) {
      for (int j = 0; j < cfg.directions; ++j) {
        auto e = d;
        e.push_back(std::polar(1.0, 2.0 * kPi * j / cfg.directions));
        next.push_back(std::move(e));
      }
    }
    dirs = std::move(next);
  }
  rep.profiles.resize(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) { rep.profiles[i] = decay_profile(s, dirs[i], radii, cfg.max_tail); });
  rep.radial_max.assign(radii.size(), 0.0);
  for (const auto& p : rep.profiles) {
    for (std::size_t i = 0; i < radii.size(); ++i) rep.radial_max[i] = std::max(rep.radial_max[i], std::abs(p.values[i]));
  }

  rep.estimator_c_trend.kind = 'c';
  rep.estimator_c_trend.parameter = "r";
  rep.estimator_c_trend.max_degree = basis.max_degree();
  for (double r : cfg.c_ladder) {
    rep.estimator_c_trend.params.push_back(r);
    rep.estimator_c_trend.values.push_back(estimator_c(s, r));
  }
  if (!rep.estimator_c_trend.values.empty()) rep.estimator_c_trend.value = rep.estimator_c_trend.values.back();

  rep.estimator_b_trend.kind = 'b';
  rep.estimator_b_trend.parameter = "center_modulus";
  rep.estimator_b_trend.max_degree = basis.max_degree();
  for (double r : radii) {
    if (!rep.estimator_b_trend.params.empty() && r <= rep.estimator_b_trend.params.back()) continue;
    std::vector<PolyPoint> centers;
    for (const auto& d : dirs) {
      std::vector<cplx> c(n);
      for (std::size_t l = 0; l < n; ++l) c[l] = r * d[l];
      centers.emplace_back(std::move(c));
    }
    rep.estimator_b_trend.params.push_back(r);
    rep.estimator_b_trend.values.push_back(estimator_b(s, cfg.b_radius, centers));
  }
  if (!rep.estimator_b_trend.values.empty()) rep.estimator_b_trend.value = rep.estimator_b_trend.values.back();

  rep.below_eps_compact = rep.radial_max.back() < cfg.eps_compact_rel * rep.operator_norm;

  const double floor = 1e-14 * std::max(1.0, rep.operator_norm);
  if (*std::max_element(rep.radial_max.begin(), rep.radial_max.end()) <= floor) {
    rep.verdict = Verdict::Vanishing;
    rep.reason = "Berezin transform vanishes to rounding on every profile";
    return rep;
  }
  if (rep.admissible_radius < cfg.min_admissible_radius) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = "admissible radius " + sci(rep.admissible_radius) + " below " + sci(cfg.min_admissible_radius) +
                 "; raise the basis degree to reach the boundary";
    return rep;
  }
  // Least squares over the outer half of the radii.
  const std::size_t first = radii.size() / 2;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double cnt = static_cast<double>(radii.size() - first);
  for (std::size_t i = first; i < radii.size(); ++i) {
    const double x = std::log1p(-radii[i] * radii[i]);
    const double y = std::log(std::max(rep.radial_max[i], floor));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.decay_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  if (rep.decay_slope >= cfg.vanishing_slope) {
    rep.verdict = Verdict::Vanishing;
    rep.reason = "max |B(S)| decays like (1 - r^2)^" + sci(rep.decay_slope);
  } else if (rep.decay_slope <= cfg.nonvanishing_slope) {
    rep.verdict = Verdict::NonVanishing;
    rep.reason = "max |B(S)| stays bounded below; fitted exponent " + sci(rep.decay_slope);
  } else {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = "fitted exponent " + sci(rep.decay_slope) + " between the thresholds";
  }
  return rep;
}

}  // namespace bergman
