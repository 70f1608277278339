#pragma once

#include <ostream>
#include <vector>

#include "bergman/basis.hpp"
#include "bergman/measure_types.hpp"
#include "bergman/measures.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

struct BerezinValue {
  cplx value;
  /// Squared norm of the kernel part outside the truncation.
  double tail = 0.0;
};

inline constexpr double kDefaultMaxTail = 1e-8;

/// <S k_z, k_z> with k_z the truncated normalized kernel. Throws DomainError when the
/// kernel tail exceeds max_tail.
BerezinValue berezin_operator(const TruncatedOperator& s, const PolyPoint& z, double max_tail = kDefaultMaxTail);

/// Largest |z| on a ray whose kernel tail stays within max_tail (same bound on every axis).
double admissible_radius(int max_degree, double max_tail = kDefaultMaxTail);

/// (k+1)^n int prod (1-|z_l|^2)^(2+k) (1-|w_l|^2)^k / |1 - conj(w_l) z_l|^(2(2+k)) dmu(w).
/// Exact for atoms; densities use a rule graded around z with the (1-|w|^2)^k weight built in.
cplx k_berezin_measure(const Measure& mu, int k, const PolyPoint& z, int panel_nodes = 16);

/// (k+1)^n int prod (1-|xi_l|^2)^k a(phi_z(xi)) dv(xi), graded quadrature in xi.
cplx k_berezin_symbol(const Symbol& a, int k, const PolyPoint& z, int panel_nodes = 16);

struct CovarianceCheck {
  cplx lhs;
  cplx rhs;
  double diff = 0.0;
};

/// B_k(mu)(phi_z(w)) against B_k(mu_z)(w).
CovarianceCheck berezin_covariance_check(const AtomicMeasure& mu, int k, const PolyPoint& z, const PolyPoint& w);

/// Grid maximum of |B_k(a)(z) - a(z)|.
GridSup approx_symbol_error(const Symbol& a, int k, const std::vector<PolyPoint>& grid, int panel_nodes = 16);

struct BerezinProfile {
  std::vector<cplx> direction;  // unimodular per axis
  std::vector<double> radii;
  std::vector<cplx> values;
  std::vector<double> tails;
};

/// B(S) along z = r * direction.
BerezinProfile decay_profile(const TruncatedOperator& s, const std::vector<cplx>& direction,
                             const std::vector<double>& radii, double max_tail = kDefaultMaxTail);

/// CSV with header dir_arg_1..dir_arg_n,radius,re,im,tail_bound.
void write_profile_csv(std::ostream& os, const std::vector<BerezinProfile>& profiles, bool header = true);

}  // namespace bergman
