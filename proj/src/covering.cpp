#include "bergman/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// |angle difference| folded into [0, pi].
double angle_gap(double a, double b) {
  const double d = wrap_2pi(a - b);
  return d > kPi ? kTwoPi - d : d;
}

cplx polar_beta(double b, double theta) { return std::polar(std::tanh(b), theta); }

double point_distance(cplx w, double b, double theta) { return beta1(w, polar_beta(b, theta)); }

int sector_of(double theta, int m) {
  const int s = static_cast<int>(std::floor(wrap_2pi(theta) * m / kTwoPi));
  return std::clamp(s, 0, m - 1);
}

// Beta distance from w (polar bw, tw) to the radial segment {arg = te, b_in <= beta <= b_out}.
double segment_distance(cplx w, double bw, double tw, double te, double b_in, double b_out) {
  const double gap = angle_gap(tw, te);
  double best = std::min(point_distance(w, b_in, te), point_distance(w, b_out, te));
  if (gap < 0.5 * kPi) {
    // Right triangle in curvature -1, where lengths are 2 beta.
    const double foot = 0.5 * std::atanh(std::tanh(2.0 * bw) * std::cos(gap));
    if (foot >= b_in && foot <= b_out) best = std::min(best, 0.5 * std::asinh(std::sinh(2.0 * bw) * std::sin(gap)));
  }
  return best;
}

// Beta distance from w to the arc {beta = b, arg in [lo, lo + width]}.
double arc_distance(cplx w, double bw, double tw, double b, double lo, double width) {
  if (wrap_2pi(tw - lo) <= width) return std::abs(bw - b);
  return std::min(point_distance(w, b, lo), point_distance(w, b, lo + width));
}

}  // namespace

DiscCell DiscCell::disc(double b_out) {
  DiscCell c;
  c.kind = CellKind::Disc;
  c.b_out = b_out;
  c.center = 0.0;
  return c;
}

DiscCell DiscCell::point(cplx w) {
  DiscCell c;
  c.kind = CellKind::Point;
  c.center = w;
  c.b_in = c.b_out = beta_from_origin(w);
  return c;
}

double DiscCell::theta_lo() const { return kTwoPi * sector / sectors; }

double DiscCell::theta_width() const { return kTwoPi / sectors; }

bool DiscCell::contains(cplx w) const {
  switch (kind) {
    case CellKind::Point:
      return w == center;
    case CellKind::Disc:
      return beta_from_origin(w) < b_out;
    case CellKind::Sector: {
      const double bw = beta_from_origin(w);
      return bw >= b_in && bw < b_out && sector_of(std::arg(w), sectors) == sector;
    }
  }
  return false;
}

double DiscCell::distance(cplx w) const {
  switch (kind) {
    case CellKind::Point:
      return beta1(center, w);
    case CellKind::Disc:
      return std::max(0.0, beta_from_origin(w) - b_out);
    case CellKind::Sector:
      break;
  }
  const double bw = beta_from_origin(w);
  const double tw = std::arg(w);
  const double lo = theta_lo();
  const double width = theta_width();
  if (bw >= b_in && bw <= b_out && wrap_2pi(tw - lo) <= width) return 0.0;
  double d = std::min(arc_distance(w, bw, tw, b_in, lo, width), arc_distance(w, bw, tw, b_out, lo, width));
  if (sectors > 1) {
    d = std::min(d, segment_distance(w, bw, tw, lo, b_in, b_out));
    d = std::min(d, segment_distance(w, bw, tw, lo + width, b_in, b_out));
  }
  return d;
}

double DiscCell::circumradius() const {
  switch (kind) {
    case CellKind::Point:
      return 0.0;
    case CellKind::Disc:
      return b_out;
    case CellKind::Sector:
      break;
  }
  const double lo = theta_lo();
  const double hi = lo + theta_width();
  return std::max({point_distance(center, b_in, lo), point_distance(center, b_out, lo),
                   point_distance(center, b_in, hi), point_distance(center, b_out, hi)});
}

double DiscCell::volume() const {
  switch (kind) {
    case CellKind::Point:
      return 0.0;
    case CellKind::Disc: {
      const double t = std::tanh(b_out);
      return t * t;
    }
    case CellKind::Sector:
      break;
  }
  // tanh^2(b_out) - tanh^2(b_in) = sech^2(b_in) - sech^2(b_out)
  const double si = 1.0 / std::cosh(b_in);
  const double so = 1.0 / std::cosh(b_out);
  return (si * si - so * so) / sectors;
}

bool LatticeCell::contains(const PolyPoint& w) const {
  if (w.dim() != factors.size()) throw DomainError("LatticeCell: dimension mismatch");
  if (enlargement > 0.0) return distance(w) <= enlargement;
  for (std::size_t l = 0; l < factors.size(); ++l) {
    if (!factors[l].contains(w[l])) return false;
  }
  return true;
}

double LatticeCell::distance(const PolyPoint& w) const {
  if (w.dim() != factors.size()) throw DomainError("LatticeCell: dimension mismatch");
  double d = 0.0;
  for (std::size_t l = 0; l < factors.size(); ++l) d = std::max(d, factors[l].distance(w[l]));
  return d;
}

double LatticeCell::circumradius() const {
  double r = 0.0;
  for (const auto& f : factors) r = std::max(r, f.circumradius());
  return r + enlargement;
}

std::vector<Ring> cr_lattice_rings(double rho, double beta_max) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("CR lattice: rho must be positive");
  if (!(beta_max > 0.0)) throw DomainError("CR lattice: beta_max must be positive");
  if (beta_max > 15.0) throw DomainError("CR lattice: beta_max above 15 reaches the boundary tolerance");
  const double h = 0.5 * rho;
  std::vector<Ring> rings{Ring{0.0, h, 1, 0}};
  std::size_t next = 1;
  for (int j = 1; j * h < beta_max; ++j) {
    const double b_in = j * h;
    const double b_out = (j + 1) * h;
    const double mid = 0.5 * (b_in + b_out);
    // Corner (b_out, +-Delta) within rho of (mid, 0):
    // 1 - cos Delta <= (cosh 2rho - cosh 2(b_out - mid)) / (sinh 2b_out sinh 2mid).
    const double eps = (std::cosh(2.0 * rho) - std::cosh(2.0 * (b_out - mid))) /
                       (std::sinh(2.0 * b_out) * std::sinh(2.0 * mid));
    std::int64_t m = 1;
    if (eps < 2.0) {
      const double half_angle = 2.0 * std::asin(std::sqrt(0.5 * eps));
      const double need = std::ceil(kPi / half_angle);
      if (need > 1e15) throw DomainError("CR lattice: too many sectors; lower beta_max or raise rho");
      m = std::max<std::int64_t>(1, static_cast<std::int64_t>(need));
    }
    // Inner containment: the radial edges stay rho/4 away from the center.
    const double half = kPi / static_cast<double>(m);
    if (half < 0.5 * kPi && std::sin(half) * std::sinh(2.0 * mid) < std::sinh(0.5 * rho) * (1.0 - 1e-12)) {
      throw NumericError("CR lattice: sector too narrow for inner containment at ring " + std::to_string(j));
    }
    rings.push_back(Ring{b_in, b_out, m, next});
    next += static_cast<std::size_t>(m);
  }
  return rings;
}

CrLattice::CrLattice(double rho, double beta_max)
    : rho_(rho), beta_max_(beta_max), rings_(cr_lattice_rings(rho, beta_max)) {
  if (rings_.back().first + static_cast<std::size_t>(rings_.back().sectors) > 50'000'000) {
    throw DomainError("CR lattice: more than 5e7 cells; lower beta_max or raise rho");
  }
  cells_.push_back(DiscCell::disc(rings_.front().b_out));
  for (std::size_t j = 1; j < rings_.size(); ++j) {
    const Ring& r = rings_[j];
    const double mid = 0.5 * (r.b_in + r.b_out);
    const int m = static_cast<int>(r.sectors);
    for (int s = 0; s < m; ++s) {
      DiscCell c;
      c.kind = CellKind::Sector;
      c.ring = static_cast<int>(j);
      c.sector = s;
      c.sectors = m;
      c.b_in = r.b_in;
      c.b_out = r.b_out;
      c.center = polar_beta(mid, kTwoPi * (s + 0.5) / m);
      cells_.push_back(c);
    }
  }
}

double CrLattice::covered_radius() const { return rings_.back().b_out; }

std::optional<std::size_t> CrLattice::locate(cplx w) const {
  const double bw = beta_from_origin(w);
  const double h = 0.5 * rho_;
  auto j = static_cast<std::size_t>(std::floor(bw / h));
  if (j >= rings_.size()) return std::nullopt;
  // Guard the floor against rounding at ring edges.
  while (j > 0 && bw < rings_[j].b_in) --j;
  while (j + 1 < rings_.size() && bw >= rings_[j].b_out) ++j;
  if (bw >= rings_[j].b_out) return std::nullopt;
  const Ring& r = rings_[j];
  if (r.sectors == 1) return r.first;
  return r.first + static_cast<std::size_t>(sector_of(std::arg(w), static_cast<int>(r.sectors)));
}

std::vector<std::size_t> CrLattice::centers_within(cplx w, double radius) const {
  const double bw = beta_from_origin(w);
  std::vector<std::size_t> out;
  for (const Ring& r : rings_) {
    const double mid = r.sectors == 1 && r.b_in == 0.0 ? 0.0 : 0.5 * (r.b_in + r.b_out);
    if (std::abs(bw - mid) > radius) continue;
    for (std::int64_t s = 0; s < r.sectors; ++s) {
      const std::size_t i = r.first + static_cast<std::size_t>(s);
      if (beta1(cells_[i].center, w) <= radius) out.push_back(i);
    }
  }
  return out;
}

std::vector<LatticeCell> product_cells(const CrLattice& lattice, std::size_t n) {
  if (n == 0) throw DomainError("lattice dimension must be >= 1");
  const auto& base = lattice.cells();
  std::size_t total = 1;
  for (std::size_t l = 0; l < n; ++l) {
    if (total > std::numeric_limits<std::size_t>::max() / base.size() || total * base.size() > 50'000'000) {
      throw DomainError("lattice has too many cells for explicit enumeration");
    }
    total *= base.size();
  }
  std::vector<LatticeCell> out;
  out.reserve(total);
  std::vector<int> idx(n, 0);
  while (true) {
    LatticeCell c;
    std::vector<cplx> center(n);
    c.volume = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
      c.factors.push_back(base[static_cast<std::size_t>(idx[l])]);
      center[l] = c.factors.back().center;
      c.volume *= c.factors.back().volume();
    }
    c.index = idx;
    c.center = PolyPoint(std::move(center));
    out.push_back(std::move(c));
    std::size_t l = n;
    while (true) {
      if (l == 0) return out;
      --l;
      if (static_cast<std::size_t>(++idx[l]) < base.size()) break;
      idx[l] = 0;
    }
  }
}

std::vector<LatticeCell> build_cr_lattice_disc(double rho, double beta_max) {
  return product_cells(CrLattice(rho, beta_max), 1);
}

std::vector<LatticeCell> build_cr_lattice_polydisc(double rho, std::size_t n, double beta_max) {
  if (n == 0) throw DomainError("lattice dimension must be >= 1");
  return product_cells(CrLattice(rho, beta_max), n);
}

std::vector<LatticeCell> enlarge(const std::vector<LatticeCell>& cells, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("enlarge: sigma must be positive");
  std::vector<LatticeCell> out = cells;
  for (auto& c : out) c.enlargement += sigma;
  return out;
}

double cell_volume(const LatticeCell& cell) {
  if (cell.enlargement > 0.0) throw DomainError("cell_volume: enlarged cells have no closed-form volume");
  double v = 1.0;
  for (const auto& f : cell.factors) v *= f.volume();
  return v;
}

double cell_volume(const LatticeCell& cell, const QuadratureSpec& quad) {
  if (cell.enlargement > 0.0) throw DomainError("cell_volume: enlarged cells are not supported");
  quad.validate();
  double v = 1.0;
  for (const auto& f : cell.factors) {
    switch (f.kind) {
      case CellKind::Point:
        return 0.0;
      case CellKind::Disc:
        v *= polar_box_rule(0.0, std::tanh(f.b_out), 0.0, kTwoPi, quad.radial_nodes, quad.angular_nodes)
                 .total_weight();
        break;
      case CellKind::Sector:
        v *= polar_box_rule(std::tanh(f.b_in), std::tanh(f.b_out), f.theta_lo(), f.theta_lo() + f.theta_width(),
                            quad.radial_nodes, quad.angular_nodes)
                 .total_weight();
        break;
    }
  }
  return v;
}

PolyPoint sample_point(std::mt19937_64& rng, std::size_t n, double beta_max) {
  std::uniform_real_distribution<double> ub(0.0, beta_max);
  std::uniform_real_distribution<double> ut(0.0, kTwoPi);
  std::vector<cplx> c(n);
  for (auto& x : c) {
    const double b = ub(rng);
    x = polar_beta(b, ut(rng));
  }
  return PolyPoint(std::move(c));
}

namespace {

// Per-axis membership counts of one point in level `level`; the n-dimensional
// count is their product because level cells are products of one-variable cells.
std::vector<std::size_t> axis_members(const Covering& c, std::size_t level, cplx w) {
  const CrLattice& lat = *c.lattice;
  const double radius = level * c.sigma;
  std::vector<std::size_t> out;
  // Cells lie within base_rho of their centers.
  for (std::size_t i : lat.centers_within(w, c.base_rho + radius + 1e-12)) {
    const DiscCell& cell = lat.cells()[i];
    const bool in = level == 0 ? cell.contains(w) : cell.distance(w) <= radius;
    if (in) out.push_back(i);
  }
  return out;
}

cplx sample_in_ball(std::mt19937_64& rng, cplx center, double radius) {
  std::uniform_real_distribution<double> ub(0.0, radius);
  std::uniform_real_distribution<double> ut(0.0, kTwoPi);
  return mobius(center, polar_beta(ub(rng), ut(rng)));
}

[[noreturn]] void violation(const std::string& what) {
  throw NumericError("covering property check failed: " + what);
}

}  // namespace

int covering_multiplicity(const Covering& c, std::size_t level, const PolyPoint& w) {
  if (level >= c.levels.size()) throw DomainError("covering_multiplicity: level out of range");
  if (w.dim() != c.n) throw DomainError("covering_multiplicity: dimension mismatch");
  std::size_t count = 1;
  for (std::size_t l = 0; l < c.n; ++l) count *= axis_members(c, level, w[l]).size();
  return static_cast<int>(count);
}

Covering build_suarez_covering(double sigma, int k, std::size_t n, double beta_max, const CoveringOptions& opt) {
  if (!(sigma > 0.0)) throw DomainError("covering: sigma must be positive");
  if (k < 0) throw DomainError("covering: k must be >= 0");
  if (n == 0) throw DomainError("covering: dimension must be >= 1");
  Covering c;
  c.sigma = sigma;
  c.k = k;
  c.n = n;
  c.beta_max = beta_max;
  c.base_rho = (k + 1) * sigma;
  c.lattice = std::make_shared<const CrLattice>(c.base_rho, beta_max);
  c.diameter_bound = 2.0 * c.base_rho + 2.0 * (k + 1) * sigma;
  const std::vector<LatticeCell> base = product_cells(*c.lattice, n);
  c.levels.push_back(base);
  for (int i = 1; i <= k + 1; ++i) c.levels.push_back(enlarge(c.levels.back(), sigma));

  const std::size_t nlev = c.levels.size();
  const auto& cells1 = c.lattice->cells();
  std::mt19937_64 rng(opt.seed);
  c.level_overlap.assign(nlev, 0);
  c.samples = opt.samples;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    const PolyPoint w = sample_point(rng, n, beta_max);
    // Level 0: exactly one cell, checked against every one-variable cell.
    for (std::size_t l = 0; l < n; ++l) {
      std::size_t hits = 0;
      for (const auto& cell : cells1) hits += cell.contains(w[l]) ? 1 : 0;
      if (hits == 0) violation("coverage (a sampled point lies in no level-0 cell)");
      if (hits > 1) violation("disjointness (a sampled point lies in two level-0 cells)");
    }
    std::vector<std::vector<std::size_t>> prev;
    for (std::size_t i = 0; i < nlev; ++i) {
      std::vector<std::vector<std::size_t>> cur(n);
      std::size_t count = 1;
      for (std::size_t l = 0; l < n; ++l) {
        cur[l] = axis_members(c, i, w[l]);
        count *= cur[l].size();
        if (i > 0) {
          for (std::size_t j : prev[l]) {
            if (!std::binary_search(cur[l].begin(), cur[l].end(), j)) {
              violation("nesting (a level-" + std::to_string(i - 1) + " cell is not inside its level-" +
                        std::to_string(i) + " enlargement)");
            }
          }
        }
      }
      c.level_overlap[i] = std::max(c.level_overlap[i], static_cast<int>(count));
      prev = std::move(cur);
    }
  }
  c.overlap_bound = *std::max_element(c.level_overlap.begin(), c.level_overlap.end());

  // Separation and diameter on sampled pairs for a spread of cells.
  const double tanh_sigma = std::tanh(sigma);
  const std::size_t stride = std::max<std::size_t>(1, base.size() / std::max<std::size_t>(1, opt.separation_cells));
  for (std::size_t ci = 0; ci < base.size(); ci += stride) {
    const LatticeCell& cell = base[ci];
    const double circ = cell.circumradius();
    for (std::size_t i = 0; i < nlev; ++i) {
      const double ri = i * sigma;
      std::vector<PolyPoint> inside;
      std::vector<PolyPoint> outside;
      std::size_t guard = 0;
      while ((inside.size() < opt.pair_samples || outside.size() < opt.pair_samples) && guard++ < 200 * opt.pair_samples) {
        std::vector<cplx> p(n);
        for (std::size_t l = 0; l < n; ++l) p[l] = sample_in_ball(rng, cell.center[l], circ + ri + 1.5 * sigma);
        PolyPoint w(std::move(p));
        const double d = cell.distance(w);
        const bool in_level = i == 0 ? cell.contains(w) : d <= ri;
        if (in_level && inside.size() < opt.pair_samples) inside.push_back(w);
        if (!in_level && d > ri + sigma && outside.size() < opt.pair_samples) outside.push_back(w);
      }
      for (std::size_t a = 0; a < inside.size(); ++a) {
        for (std::size_t b = a + 1; b < inside.size(); ++b) {
          if (beta(inside[a], inside[b]) > c.diameter_bound + opt.sample_margin) {
            violation("diameter (level " + std::to_string(i) + ")");
          }
        }
        if (i + 1 < nlev) {
          for (const auto& q : outside) {
            if (rho(inside[a], q) < tanh_sigma - opt.sample_margin) {
              violation("separation between level " + std::to_string(i) + " and the complement of level " +
                        std::to_string(i + 1));
            }
          }
        }
      }
    }
  }
  return c;
}

}  // namespace bergman
