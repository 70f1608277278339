#pragma once

#include <string>
#include <vector>

#include "bergman/basis.hpp"
#include "bergman/berezin.hpp"
#include "bergman/covering.hpp"
#include "bergman/measure_types.hpp"

namespace bergman {

/// Point masses at the lattice centers weighted by the cell volumes.
AtomicMeasure mu_rho(double rho, std::size_t n, double beta_max);

/// T_{mu_rho} on the truncation, assembled ring by ring in closed form:
/// a ring of m equal sectors at center radius t and cell volume v contributes
/// v m sqrt((a+1)(b+1)) t^(a+b) e^(i(a-b) pi/m) to entry (b, a) when m divides a - b.
/// Multi-variable operators are Kronecker powers of the one-variable matrix.
TruncatedOperator toeplitz_mu_rho(double rho, const MonomialBasis& basis, double beta_max);

struct ApproxIdentityResult {
  double error = 0.0;
  /// The same error with beta_max - 1, for the coverage check.
  double error_inner = 0.0;
  double beta_max = 0.0;
};

/// ||T_{mu_rho} - I|| on the truncation. Throws NumericError when dropping the outermost
/// unit of hyperbolic radius moves the error by 10% or more.
ApproxIdentityResult approx_identity_error(double rho, const MonomialBasis& basis, double beta_max);

/// Diagonal Gram of the basis over D^n minus the closed polydisc of radius r.
Vec annulus_gram_diagonal(const MonomialBasis& basis, double r);
/// ||G_r^(1/2) S|| with G_r the Gram above.
double estimator_c(const TruncatedOperator& s, double r);

/// One-variable Gram (b, a) = int_{|w - c| < R} e_a conj(e_b) dv, by Gauss-Legendre in the
/// angle phi with |w| = |c| - R cos(phi) and exact angular integration on each circle.
Mat disc_gram(const EuclideanDisc& disc, int max_degree, int nodes = 0);
/// Gram over the hyperbolic box D(z, r): Kronecker product of per-axis disc Grams.
Mat hyperbolic_box_gram(const HyperbolicDisc& box, const MonomialBasis& basis);
/// ||G^(1/2) S|| for a positive semidefinite Gram G.
double gram_weighted_norm(const Mat& gram, const Mat& s);

/// Maximum over centers of ||G_{D(z,r)}^(1/2) S||.
double estimator_b(const TruncatedOperator& s, double r, const std::vector<PolyPoint>& centers);

struct EstimatorAResult {
  double value = 0.0;
  std::size_t lattice_points = 0;
  std::size_t rank = 0;
  /// Largest kernel truncation tail among the spanning kernels.
  double max_tail = 0.0;
};

/// sup ||S f|| over unit f in the span of the truncated normalized kernels at the
/// mu_rho lattice points inside D(z, r). The span is orthonormalized by SVD, dropping
/// directions with singular value below rank_tol times the largest.
EstimatorAResult estimator_a(const TruncatedOperator& s, double r, const PolyPoint& z, double rho,
                             double rank_tol = 1e-6);

/// Gram (b, a) = int e_a conj(e_b) dv over the polar box {r1 <= |w| <= r2, th1 <= arg w <= th2}, closed form.
Mat polar_box_gram(double r1, double r2, double th1, double th2, int max_degree);

struct SegmentedResult {
  double error = 0.0;
  std::size_t cells = 0;
  std::size_t atoms = 0;
};

/// || S T_mu - sum_j M_{1_{F_j}} S T_{1_{G_j} mu} || from A^2 into L^2(Omega), where F_j are the
/// level-0 cells, G_j the level-(k+1) cells, and Omega = {beta(0, z_l) < beta_max for all l}.
/// On Omega the difference is sum_j 1_{F_j} S T_{1_{G_j^c} mu}, so the squared norm form is
/// sum_j A_j^H Gram(F_j within Omega) A_j with A_j = S T_{1_{G_j^c} mu}.
SegmentedResult segmented_error(const TruncatedOperator& s, const AtomicMeasure& mu, const Covering& cov);

struct EstimatorReport {
  char kind = 'c';
  std::string parameter;  // name of the trend parameter
  int max_degree = 0;
  std::vector<double> params;
  std::vector<double> values;
  double value = 0.0;  // value at the last (outermost) parameter
};

enum class Verdict { Vanishing, NonVanishing, Inconclusive };
std::string to_string(Verdict v);

struct VerdictConfig {
  int directions = 8;  // per axis
  int profile_points = 8;
  double max_tail = kDefaultMaxTail;
  double min_admissible_radius = 0.9;
  double vanishing_slope = 0.5;
  double nonvanishing_slope = 0.1;
  double eps_compact_rel = 1e-2;
  double eps_radius = 0.99;
  std::vector<double> c_ladder{0.5, 0.7, 0.9, 0.95};
  double b_radius = 1.0;
};

struct VerdictReport {
  std::vector<BerezinProfile> profiles;
  EstimatorReport estimator_c_trend;
  EstimatorReport estimator_b_trend;
  double operator_norm = 0.0;
  double admissible_radius = 0.0;
  /// max over directions of |B(S)| at each profile radius
  std::vector<double> radial_max;
  /// Least-squares slope of log max|B| against log(1 - r^2) over the outer half of the radii.
  double decay_slope = 0.0;
  /// max|B| at the outermost admissible radius compared with eps_compact_rel * ||S||.
  bool below_eps_compact = false;
  /// Whether eps_radius itself is admissible for the basis degree.
  bool eps_radius_admissible = false;
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
};

/// Berezin decay along radial rays plus estimator trends; a heuristic label, not a proof.
/// Membership of S in the Toeplitz algebra is assumed, not decided.
VerdictReport compactness_verdict(const TruncatedOperator& s, const VerdictConfig& cfg = {});

}  // namespace bergman
