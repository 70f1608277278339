#include "bergman/operators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(const PolyPoint& z, const MonomialBasis& basis, const char* what) {
  if (z.dim() != basis.dim()) {
    throw DomainError(std::string(what) + ": point dimension " + std::to_string(z.dim()) +
                      " does not match basis dimension " + std::to_string(basis.dim()));
  }
}

void require_exact_angles(const QuadratureSpec& quad, const MonomialBasis& basis, const char* what) {
  quad.validate();
  if (quad.angular_nodes < 2 * basis.max_degree() + 2) {
    throw DomainError(std::string(what) + ": angular_nodes must be at least 2*D+2 = " +
                      std::to_string(2 * basis.max_degree() + 2));
  }
}

cplx checked(cplx v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericError("symbol is not finite at a quadrature node");
  }
  return v;
}

// Accumulates sum_i w_i conj(e(x_i)) e(x_i)^T over chunks of rows.
class GramAccumulator {
 public:
  explicit GramAccumulator(const MonomialBasis& basis)
      : basis_(basis),
        rows_(kChunk, static_cast<Eigen::Index>(basis.size())),
        weights_(kChunk),
        acc_(Mat::Zero(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()))) {}

  void add(std::span<const cplx> x, cplx w) {
    rows_.row(fill_) = basis_.eval(x).transpose();
    weights_[fill_] = w;
    if (++fill_ == kChunk) flush();
  }

  Mat take() {
    flush();
    return std::move(acc_);
  }

 private:
  static constexpr Eigen::Index kChunk = 1024;

  void flush() {
    if (fill_ == 0) return;
    const auto e = rows_.topRows(fill_);
    acc_.noalias() += e.adjoint() * (weights_.head(fill_).asDiagonal() * e);
    fill_ = 0;
  }

  const MonomialBasis& basis_;
  Mat rows_;
  Vec weights_;
  Mat acc_;
  Eigen::Index fill_ = 0;
};

Mat toeplitz_symbol_1d_fourier(const Symbol& a, const MonomialBasis& basis, const QuadratureSpec& quad) {
  const int d = basis.max_degree();
  const int m = quad.angular_nodes;
  const Rule1D radial = gauss_legendre(quad.radial_nodes, 0.0, 1.0);
  std::vector<cplx> roots(m);
  for (int j = 0; j < m; ++j) roots[j] = std::polar(1.0, -2.0 * kPi * j / m);

  Mat out = Mat::Zero(d + 1, d + 1);
  std::vector<cplx> vals(m);
  std::vector<cplx> coef(2 * d + 1);
  std::vector<double> pw(2 * d + 1);
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double r = std::sqrt(radial.nodes[i]);
    for (int j = 0; j < m; ++j) {
      const cplx w = std::polar(r, 2.0 * kPi * j / m);
      vals[j] = checked(a(std::span<const cplx>(&w, 1)));
    }
    // coef[k + d] = (1/m) sum_j a_j exp(-i k theta_j), k = -d..d
    for (int k = -d; k <= d; ++k) {
      cplx s = 0.0;
      const int step = ((k % m) + m) % m;
      int idx = 0;
      for (int j = 0; j < m; ++j) {
        s += vals[j] * roots[idx];
        idx += step;
        if (idx >= m) idx -= m;
      }
      coef[k + d] = s / static_cast<double>(m);
    }
    pw[0] = 1.0;
    for (int k = 1; k <= 2 * d; ++k) pw[k] = pw[k - 1] * r;
    const double w = radial.weights[i];
    for (int al = 0; al <= d; ++al) {
      for (int be = 0; be <= d; ++be) {
        out(be, al) += w * std::sqrt(static_cast<double>((al + 1) * (be + 1))) * pw[al + be] * coef[be - al + d];
      }
    }
  }
  return out;
}

cplx unit_phase(cplx v) { return v / std::abs(v); }

}  // namespace

SpaceParams SpaceParams::make(double p, std::size_t n) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("SpaceParams: p must lie in (1, infinity)");
  if (n == 0) throw DomainError("SpaceParams: dimension must be >= 1");
  return SpaceParams{p, p / (p - 1.0), n};
}

cplx kernel_eval(const PolyPoint& lambda, const PolyPoint& z) {
  require_same_dim(lambda, z);
  cplx v = 1.0;
  for (std::size_t l = 0; l < z.dim(); ++l) {
    const cplx d = 1.0 - std::conj(lambda[l]) * z[l];
    v /= d * d;
  }
  return v;
}

cplx normalized_kernel_eval(const PolyPoint& lambda, const PolyPoint& z, const SpaceParams& params) {
  require_same_dim(lambda, z);
  double scale = 1.0;
  for (std::size_t l = 0; l < z.dim(); ++l) scale *= std::pow(1.0 - std::norm(lambda[l]), 2.0 / params.q);
  return scale * kernel_eval(lambda, z);
}

double kernel_axis_tail(double x, int max_degree) {
  const double d1 = max_degree + 1.0;
  return std::pow(x, d1) * (d1 + 1.0 - d1 * x);
}

KernelCoefficients kernel_coefficients(const PolyPoint& z, const MonomialBasis& basis) {
  require_dim(z, basis, "kernel_coefficients");
  std::vector<cplx> conj_z(z.dim());
  double log_keep = 0.0;
  for (std::size_t l = 0; l < z.dim(); ++l) {
    conj_z[l] = std::conj(z[l]);
    log_keep += std::log1p(-kernel_axis_tail(std::norm(z[l]), basis.max_degree()));
  }
  KernelCoefficients out;
  out.coeffs = z.defect() * basis.eval(conj_z);
  out.tail = -std::expm1(log_keep);
  return out;
}

TruncatedOperator toeplitz_symbol(const Symbol& a, const MonomialBasis& basis, const QuadratureSpec& quad) {
  require_exact_angles(quad, basis, "toeplitz_symbol");
  if (basis.dim() == 1) return {basis, toeplitz_symbol_1d_fourier(a, basis, quad)};
  const DiscRule axis = plain_disc_rule(quad);
  std::vector<DiscRule> axes(basis.dim(), axis);
  GramAccumulator acc(basis);
  for_each_tensor_node(std::span<const DiscRule>(axes), [&](std::span<const cplx> x, double w) {
    acc.add(x, w * checked(a(x)));
  });
  return {basis, acc.take()};
}

TruncatedOperator toeplitz_measure(const AtomicMeasure& mu, const MonomialBasis& basis) {
  GramAccumulator acc(basis);
  for (const auto& at : mu.atoms) {
    require_dim(at.point, basis, "toeplitz_measure");
    acc.add(at.point.coords(), at.weight);
  }
  return {basis, acc.take()};
}

TruncatedOperator rank_one(const MonomialBasis& basis, const Vec& f, const Vec& g) {
  const auto s = static_cast<Eigen::Index>(basis.size());
  if (f.size() != s || g.size() != s) throw DomainError("rank_one: vectors do not match the basis");
  return {basis, f * g.adjoint()};
}

UnitaryCompression u_z_matrix(const PolyPoint& z, const MonomialBasis& basis, const QuadratureSpec& quad) {
  require_dim(z, basis, "u_z_matrix");
  require_exact_angles(quad, basis, "u_z_matrix");
  const DiscRule rule = plain_disc_rule(quad);
  const int d = basis.max_degree();
  Mat full = Mat::Ones(1, 1);
  for (std::size_t l = 0; l < z.dim(); ++l) {
    const cplx zl = z[l];
    const double defect = 1.0 - std::norm(zl);
    Mat u = Mat::Zero(d + 1, d + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const cplx w = rule.nodes[i];
      const cplx den = 1.0 - w * std::conj(zl);
      const cplx jac = defect / (den * den);
      const Vec src = basis.eval_axis(mobius(zl, w));
      const Vec dst = basis.eval_axis(w);
      u.noalias() += (rule.weights[i] * jac) * dst.conjugate() * src.transpose();
    }
    full = kron(full, u);
  }
  UnitaryCompression out{TruncatedOperator(basis, std::move(full)), {}, 0.0};
  out.column_deficit.resize(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    out.column_deficit[a] = 1.0 - out.op.matrix.col(static_cast<Eigen::Index>(a)).squaredNorm();
    out.max_deficit = std::max(out.max_deficit, std::abs(out.column_deficit[a]));
  }
  return out;
}

cplx j_z_eval(const PolyPoint& z, const PolyPoint& w, double r) {
  require_same_dim(z, w);
  cplx v = 1.0;
  for (std::size_t l = 0; l < z.dim(); ++l) {
    const cplx den = 1.0 - w[l] * std::conj(z[l]);
    v *= std::pow(1.0 - std::norm(z[l]), r) * std::exp(-2.0 * r * std::log(den));
  }
  return v;
}

cplx b_z_eval(const PolyPoint& z, const PolyPoint& w, const SpaceParams& params) {
  require_same_dim(z, w);
  const double gamma = 2.0 * (1.0 / params.q - 1.0 / params.p);
  if (gamma == 0.0) return 1.0;
  cplx v = 1.0;
  for (std::size_t l = 0; l < z.dim(); ++l) {
    const cplx num = 1.0 - std::conj(w[l]) * z[l];
    const cplx den = 1.0 - std::conj(z[l]) * w[l];
    // Principal logs; num and den have positive real part.
    v *= std::exp(gamma * (std::log(num) - std::log(den)));
  }
  return unit_phase(v);
}

cplx lambda_p(const PolyPoint& xi, const PolyPoint& z, const SpaceParams& params) {
  require_same_dim(xi, z);
  // 1 - |phi_z(xi)|^2 = (1 - |z|^2)(1 - |xi|^2)/|1 - conj(z) xi|^2, so the ratio
  // reduces to |1 - xi conj(z)|^(4/p) / (1 - xi conj(z))^(4/p).
  const double e = 4.0 / params.p;
  cplx v = 1.0;
  for (std::size_t l = 0; l < z.dim(); ++l) {
    const cplx den = 1.0 - xi[l] * std::conj(z[l]);
    v *= std::exp(-e * cplx(0.0, std::arg(den)));
  }
  return v;
}

double operator_norm(const TruncatedOperator& s, const NormOptions& opt) { return operator_norm(s.matrix, opt); }

double operator_norm(const Mat& s, const NormOptions& opt) {
  if (!s.allFinite()) throw NumericError("operator_norm: matrix has non-finite entries");
  if (s.size() == 0) return 0.0;
  const Mat a = s.adjoint() * s;
  const double scale = a.norm();
  if (scale == 0.0) return 0.0;

  // Repeated squaring of the normalized Gram matrix converges to the spectral
  // projector of the top eigenvalue cluster; it separates clustered spectra that
  // plain power iteration resolves only after ~1/gap steps.
  Mat b = a / scale;
  for (int k = 0; k < 64; ++k) {
    Mat c = b * b;
    c = 0.5 * (c + c.adjoint()).eval();
    const double cn = c.norm();
    if (!(cn > 0.0)) break;
    c /= cn;
    const double diff = (c - b).norm();
    b = std::move(c);
    if (diff < 1e-10) break;
  }

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd;
  Vec x(a.rows());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = cplx(nd(rng), nd(rng));
  Vec v = b * x;
  if (!(v.norm() > 1e-300)) {
    Eigen::Index best = 0;
    b.colwise().norm().maxCoeff(&best);
    v = b.col(best);
  }
  v.normalize();

  double residual = 0.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const Vec w = a * v;
    const double theta = v.dot(w).real();
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    residual = (w - theta * v).norm() / std::max(theta, 1e-300);
    if (residual <= opt.tolerance) return std::sqrt(theta);
    v = w / wn;
  }
  throw NumericError("operator_norm: power iteration did not converge (relative residual " +
                     std::to_string(residual) + ")");
}

}  // namespace bergman
