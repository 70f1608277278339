#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

enum class CellKind { Disc, Sector, Point };

/// One-variable lattice cell.
///
/// Disc: {beta(0, w) < b_out}. Sector: {b_in <= beta(0, w) < b_out, arg w in
/// [2 pi s / m, 2 pi (s + 1) / m)}. Point: the singleton {center}.
/// Radii are hyperbolic (beta) distances from the origin.
struct DiscCell {
  CellKind kind = CellKind::Disc;
  int ring = 0;
  int sector = 0;
  int sectors = 1;
  double b_in = 0.0;
  double b_out = 0.0;
  cplx center;

  static DiscCell disc(double b_out);
  static DiscCell point(cplx w);

  double theta_lo() const;
  double theta_width() const;

  /// Half-open membership used for the disjoint decomposition.
  bool contains(cplx w) const;
  /// beta distance from w to the closure of the cell (0 inside).
  double distance(cplx w) const;
  /// Largest beta distance from the center to a point of the closed cell.
  double circumradius() const;
  /// Normalized area, exact.
  double volume() const;
};

/// Product cell in D^n, optionally enlarged to {z : beta(z, cell) <= enlargement}.
struct LatticeCell {
  std::vector<DiscCell> factors;
  std::vector<int> index;  // per-axis position in the one-variable lattice
  PolyPoint center;
  double volume = 0.0;
  double enlargement = 0.0;

  bool contains(const PolyPoint& w) const;
  /// beta distance to the closure of the base cell, maximum over axes.
  double distance(const PolyPoint& w) const;
  /// Radius of a beta-ball about the center containing the (enlarged) cell.
  double circumradius() const;
};

struct Ring {
  double b_in = 0.0;
  double b_out = 0.0;
  std::int64_t sectors = 1;
  std::size_t first = 0;  // index of the ring's first cell
};

/// Ring layout of the one-variable lattice described below, without materializing cells.
std::vector<Ring> cr_lattice_rings(double rho, double beta_max);

/// One-variable lattice with fast point location.
///
/// Ring j covers hyperbolic radii [j rho/2, (j+1) rho/2); ring 0 is a single disc
/// and ring j >= 1 is cut into the fewest equal sectors whose corners lie within rho
/// of the center (midpoint radius, mid angle). This gives
/// D(center, rho/4) within the cell within D(center, rho).
class CrLattice {
 public:
  CrLattice(double rho, double beta_max);

  double rho() const { return rho_; }
  double beta_max() const { return beta_max_; }
  /// Every point with beta(0, w) < covered_radius() lies in exactly one cell.
  double covered_radius() const;
  const std::vector<Ring>& rings() const { return rings_; }
  const std::vector<DiscCell>& cells() const { return cells_; }

  std::optional<std::size_t> locate(cplx w) const;
  /// Indices of cells whose center lies within beta distance `radius` of w.
  std::vector<std::size_t> centers_within(cplx w, double radius) const;

 private:
  double rho_;
  double beta_max_;
  std::vector<Ring> rings_;
  std::vector<DiscCell> cells_;
};

std::vector<LatticeCell> build_cr_lattice_disc(double rho, double beta_max);
std::vector<LatticeCell> build_cr_lattice_polydisc(double rho, std::size_t n, double beta_max);
/// Products of cells of a one-variable lattice, first axis slowest.
std::vector<LatticeCell> product_cells(const CrLattice& lattice, std::size_t n);

/// Cells {z : beta(z, cell) <= sigma}; repeated enlargement adds radii (beta is a length metric).
std::vector<LatticeCell> enlarge(const std::vector<LatticeCell>& cells, double sigma);

/// Exact normalized volume of an unenlarged cell.
double cell_volume(const LatticeCell& cell);
/// The same volume by polar-box quadrature.
double cell_volume(const LatticeCell& cell, const QuadratureSpec& quad);

/// Per axis: hyperbolic radius uniform on [0, beta_max], angle uniform.
PolyPoint sample_point(std::mt19937_64& rng, std::size_t n, double beta_max);

struct CoveringOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 20240611ULL;
  double sample_margin = 1e-6;
  std::size_t separation_cells = 24;
  std::size_t pair_samples = 150;
};

/// Nested coverings F_0 within F_1 within ... F_{k+1}; F_0 is the lattice at scale (k+1) sigma
/// and F_{i,j} = {z : beta(z, F_{0,j}) <= i sigma}.
struct Covering {
  double sigma = 0.0;
  int k = 0;
  std::size_t n = 1;
  double beta_max = 0.0;
  double base_rho = 0.0;
  std::shared_ptr<const CrLattice> lattice;  // one-variable base lattice
  std::vector<std::vector<LatticeCell>> levels;
  /// Largest number of level-i cells containing a sampled point, per level.
  std::vector<int> level_overlap;
  int overlap_bound = 0;
  /// Beta-diameter bound for every level: 2 base_rho + 2 (k + 1) sigma.
  double diameter_bound = 0.0;
  std::size_t samples = 0;
};

/// Builds the covering and verifies disjointness, coverage, nesting, separation,
/// overlap and diameter by sampling; throws NumericError naming a violated property.
Covering build_suarez_covering(double sigma, int k, std::size_t n, double beta_max,
                               const CoveringOptions& opt = {});

/// Number of level-i cells containing w (candidates pruned per axis).
int covering_multiplicity(const Covering& c, std::size_t level, const PolyPoint& w);

}  // namespace bergman
