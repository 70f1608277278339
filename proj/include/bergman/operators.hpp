#pragma once

#include <cstdint>
#include <vector>

#include "bergman/basis.hpp"
#include "bergman/measure_types.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

/// Exponent pair with 1/p + 1/q = 1.
struct SpaceParams {
  double p = 2.0;
  double q = 2.0;
  std::size_t n = 1;

  /// Throws DomainError unless 1 < p < infinity.
  static SpaceParams make(double p, std::size_t n);
};

/// K_lambda(z) = prod_l (1 - conj(lambda_l) z_l)^-2.
cplx kernel_eval(const PolyPoint& lambda, const PolyPoint& z);
/// k_lambda^(p)(z) = prod_l (1 - |lambda_l|^2)^(2/q) (1 - conj(lambda_l) z_l)^-2.
cplx normalized_kernel_eval(const PolyPoint& lambda, const PolyPoint& z, const SpaceParams& params);

struct KernelCoefficients {
  Vec coeffs;
  /// Squared norm of the part of k_z^(2) outside the basis span.
  double tail = 0.0;
};

/// Coefficients of k_z^(2) in the basis: prod_l (1 - |z_l|^2) sqrt(a_l + 1) conj(z_l)^a_l.
KernelCoefficients kernel_coefficients(const PolyPoint& z, const MonomialBasis& basis);

/// Exact squared norm of the one-variable kernel tail beyond degree D, for x = |z|^2.
double kernel_axis_tail(double x, int max_degree);

/// T_a compressed to the basis, entries int a e_a conj(e_b) dv by tensor quadrature.
/// For n = 1 the angular integrals go through a discrete Fourier transform per radial node.
TruncatedOperator toeplitz_symbol(const Symbol& a, const MonomialBasis& basis, const QuadratureSpec& quad);

/// T_mu for an atomic measure, entries sum_i c_i e_a(p_i) conj(e_b(p_i)).
TruncatedOperator toeplitz_measure(const AtomicMeasure& mu, const MonomialBasis& basis);

/// f (x) g : h -> <h, g> f.
TruncatedOperator rank_one(const MonomialBasis& basis, const Vec& f, const Vec& g);

struct UnitaryCompression {
  TruncatedOperator op;
  /// 1 - |column a|^2 for each basis index: the energy of U_z e_a beyond the truncation.
  std::vector<double> column_deficit;
  double max_deficit = 0.0;
};

/// U_z f(w) = f(phi_z(w)) prod_l (1 - |z_l|^2)/(1 - w_l conj(z_l))^2 compressed to the basis (p = 2).
UnitaryCompression u_z_matrix(const PolyPoint& z, const MonomialBasis& basis, const QuadratureSpec& quad);

/// J_z^r(w) = prod_l (1 - |z_l|^2)^r / (1 - w_l conj(z_l))^(2r), principal branch.
cplx j_z_eval(const PolyPoint& z, const PolyPoint& w, double r);
/// b_z(w) = prod_l ((1 - conj(w_l) z_l)/(1 - conj(z_l) w_l))^(2(1/q - 1/p)); unimodular.
cplx b_z_eval(const PolyPoint& z, const PolyPoint& w, const SpaceParams& params);
/// Unimodular factor in prod (1-|xi_l|^2)^(2/p) J_z^(2/p)(xi) = prod (1-|phi_z(xi)_l|^2)^(2/p) lambda.
cplx lambda_p(const PolyPoint& xi, const PolyPoint& z, const SpaceParams& params);

struct NormOptions {
  double tolerance = 1e-8;
  int max_iterations = 5000;
  std::uint64_t seed = 0x5eed5eedULL;
};

/// Largest singular value by power iteration on S*S, accelerated by repeated squaring.
/// Throws NumericError (with the final residual) when the iteration does not settle.
double operator_norm(const TruncatedOperator& s, const NormOptions& opt = {});
double operator_norm(const Mat& s, const NormOptions& opt = {});

}  // namespace bergman
