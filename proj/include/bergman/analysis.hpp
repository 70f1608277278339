#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/measure_types.hpp"

namespace bergman {

/// F_{s,t}(z) = int (1-|w|^2)^t |1 - conj(w) z|^(-s) dv(w), by a rule graded toward z.
/// Throws DomainError for t <= -1 (divergent).
double growth_integral(double s, double t, cplx z, int panel_nodes = 16);

/// The same integral from the power series sum_k c_k^2 |z|^(2k) B(k+1, t+1),
/// c_k = Gamma(k + s/2) / (Gamma(s/2) k!). Converges for |z| < 1; used as an oracle.
double growth_integral_series(double s, double t, double modulus, double rel_tol = 1e-15);

/// Least-squares slope of log F_{s,t}(r) against log(1 - r^2) over the given moduli.
double growth_exponent_fit(double s, double t, const std::vector<double>& moduli, int panel_nodes = 16);

/// One-variable kernel K(x, y) = scale (1-|y|^2)^t / |1 - conj(x) y|^s.
struct KernelSpec {
  double s = 2.0;
  double t = 0.0;
  double scale = 1.0;
  std::string rule = "power";

  static KernelSpec power(double s, double t, double scale = 1.0);
  /// (1-|w|^2)^(-1/p) / |1 - conj(z) w|^2, the kernel of the Tech-1 estimate.
  static KernelSpec tech(double p);
  double operator()(cplx x, cplx y) const;
};

struct SchurOptions {
  /// Moduli at which the two Schur integrals are compared with h (rotation invariance covers angles).
  std::vector<double> grid{0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 0.98, 0.99, 0.995, 0.999};
  int panel_nodes = 16;
  // Nystrom discretization for the empirical norm.
  double r_max = 0.98;
  int radial_panels = 10;
  int radial_nodes = 4;
  int angular_nodes = 48;
  int trials = 4;
  int iterations = 60;
  std::uint64_t seed = 0x5c4a7ULL;
};

struct SchurResult {
  double c_p = 0.0;
  double c_q = 0.0;
  double bound = 0.0;
  double empirical_norm = 0.0;
};

/// Schur test on (D, dv) with h(z) = (1-|z|^2)^h_exponent:
/// C_q = max_x int K(x,y) h(y)^q dv(y) / h(x)^q and C_p = max_y int K(x,y) h(x)^p dv(x) / h(y)^p
/// over the grid, bound = C_q^(1/q) C_p^(1/p). empirical_norm is the largest ||Tf||_p / ||f||_p
/// found by nonnegative power iteration from random starts on a Nystrom discretization.
/// Throws NumericError naming the condition when a Schur integral diverges or grows without
/// bound toward the circle.
SchurResult schur_bound(const KernelSpec& kernel, double h_exponent, double p, const SchurOptions& opt = {});

struct Tech1Options {
  double beta_max = 3.0;
  int degree = 12;  // truncation used for ||T_mu||
  std::uint64_t seed = 0x7ec1ULL;
};

struct Tech1Report {
  double ratio = 0.0;  // max over samples of LHS / RHS
  double t_mu_norm = 0.0;
  PolyPoint argmax;
  std::size_t samples = 0;
};

/// Ratio of the two sides of the Tech-1 estimate with F_j the level-0 cells of a Suarez
/// covering (k = 0) and K_j = {w : beta(w, F_j) > sigma}. Reported, not asserted.
/// Requires sigma >= 1 and 0 < gamma < min(1/(2p), (p-1)/p).
Tech1Report tech1_ratio(double sigma, double p, double gamma, const AtomicMeasure& mu, std::size_t samples,
                        const Tech1Options& opt = {});

}  // namespace bergman
