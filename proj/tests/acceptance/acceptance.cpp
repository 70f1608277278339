// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <type_traits>
#include <variant>
#include <vector>

#include "bergman/analysis.hpp"
#include "bergman/berezin.hpp"
#include "bergman/covering.hpp"
#include "bergman/errors.hpp"
#include "bergman/essential.hpp"
#include "bergman/measures.hpp"
#include "bergman/operators.hpp"

namespace fs = std::filesystem;
using namespace bergman;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool pass() const { return failures.empty(); }
};

cplx random_disc(std::mt19937_64& rng, double max_modulus) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(max_modulus * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

PolyPoint random_point(std::mt19937_64& rng, std::size_t n, double max_modulus = 0.99) {
  std::vector<cplx> c(n);
  for (auto& x : c) x = random_disc(rng, max_modulus);
  return PolyPoint(std::move(c));
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

TruncatedOperator projection_on_constants(const MonomialBasis& b) {
  Vec e0 = Vec::Zero(static_cast<Eigen::Index>(b.size()));
  e0[0] = 1.0;
  return rank_one(b, e0, e0);
}

// 1. Mobius involution and the two product identities.
void mobius_suite(Outcome& o) {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (std::size_t n : {1u, 2u}) {
    for (int i = 0; i < 1000; ++i) {
      const PolyPoint z = random_point(rng, n), w = random_point(rng, n), xi = random_point(rng, n);
      const PolyPoint pw = mobius_apply(z, w), px = mobius_apply(z, xi), back = mobius_apply(z, pw);
      for (std::size_t l = 0; l < n; ++l) {
        worst = std::max(worst, std::abs(back[l] - w[l]));
        const double rhs1 = (1.0 - std::norm(z[l])) * (1.0 - std::norm(w[l])) / std::norm(1.0 - std::conj(z[l]) * w[l]);
        worst = std::max(worst, std::abs(1.0 - std::norm(pw[l]) - rhs1));
        const cplx rhs2 = (1.0 - std::norm(z[l])) * (1.0 - std::conj(w[l]) * xi[l]) /
                          ((1.0 - std::conj(z[l]) * xi[l]) * (1.0 - std::conj(w[l]) * z[l]));
        worst = std::max(worst, std::abs(1.0 - std::conj(pw[l]) * px[l] - rhs2) / std::max(1.0, std::abs(rhs2)));
      }
    }
  }
  o.detail << "max deviation " << num(worst) << " over 2000 triples";
  o.require(worst <= 1e-12, "max deviation " + num(worst) + " > 1e-12");
}

// 2. CR lattice partition and containment; Suarez covering sampled properties.
void covering_suite(Outcome& o) {
  const double beta_max = 3.0;
  const double margin = 1e-6;
  std::size_t violations = 0;
  for (double rho : {0.5, 1.0}) {
    const CrLattice lat(rho, beta_max);
    const auto& cells = lat.cells();
    std::mt19937_64 rng(7);
    for (int s = 0; s < 10000; ++s) {
      const PolyPoint p = sample_point(rng, 1, beta_max - margin);
      std::size_t hits = 0, where = 0;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].contains(p[0])) {
          ++hits;
          where = i;
        }
      }
      if (hits != 1) {
        ++violations;
        continue;
      }
      if (beta1(p[0], cells[where].center) > rho + margin) ++violations;
    }
    std::uniform_real_distribution<double> ub(0.0, 0.25 * rho - margin);
    std::uniform_real_distribution<double> ut(0.0, 2.0 * std::numbers::pi);
    for (const auto& c : cells) {
      for (int s = 0; s < 20; ++s) {
        if (!c.contains(mobius(c.center, std::polar(std::tanh(ub(rng)), ut(rng))))) ++violations;
      }
    }
  }
  std::ostringstream overlaps;
  for (double sigma : {1.0, 2.0}) {
    for (int k : {0, 2}) {
      CoveringOptions opt;
      opt.sample_margin = margin;
      try {
        const Covering c = build_suarez_covering(sigma, k, 1, beta_max, opt);
        overlaps << " N(" << sigma << "," << k << ")=" << c.overlap_bound;
      } catch (const NumericError& e) {
        ++violations;
        o.require(false, std::string("Suarez covering: ") + e.what());
      }
    }
  }
  o.detail << violations << " violations; CR rho in {0.5, 1}, Suarez sigma in {1, 2}, k in {0, 2};" << overlaps.str();
  o.require(violations == 0, std::to_string(violations) + " violations");
}

// 3. Carleson norms: rkm of dv, three-norm agreement within 20, 1-homogeneity.
void carleson_suite(Outcome& o) {
  const auto grid = RadialGrid{}.points(1);
  const MonomialBasis b(1, 12);
  const QuadratureSpec q;
  const Measure dv = DensityMeasure{symbols::constant(1.0), 1, q};
  const double r_dv = rkm_norm(dv, grid).value;
  o.require(std::abs(r_dv - 1.0) <= 1e-8, "rkm_norm(dv) = " + num(r_dv));
  const std::vector<Measure> battery{
      dv,
      DensityMeasure{symbols::half_indicator(0), 1, q},
      DensityMeasure{symbols::defect(), 1, q},
      AtomicMeasure::dirac(PolyPoint{0.0}),
      AtomicMeasure({{PolyPoint{0.3}, 0.2}, {PolyPoint{-0.8}, 0.05}, {PolyPoint{cplx(0.1, 0.9)}, 0.01}}),
      mu_rho(1.0, 1, 3.0)};
  double worst_ratio = 0.0, worst_homog = 0.0;
  for (const Measure& mu : battery) {
    const double a = rkm_norm(mu, grid).value, g = geometric_norm(mu, 1.0, grid).value, c = carleson_constant(mu, b);
    worst_ratio = std::max(worst_ratio, std::max({a, g, c}) / std::min({a, g, c}));
    const Measure scaled = std::visit(
        [](const auto& m) -> Measure {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, AtomicMeasure>) {
            return m.scaled(2.5);
          } else {
            return DensityMeasure{m.density.scaled(2.5), m.n, m.quad};
          }
        },
        mu);
    const double a2 = rkm_norm(scaled, grid).value, g2 = geometric_norm(scaled, 1.0, grid).value,
                 c2 = carleson_constant(scaled, b);
    worst_homog = std::max({worst_homog, std::abs(a2 / a - 2.5), std::abs(g2 / g - 2.5), std::abs(c2 / c - 2.5)});
  }
  o.detail << "rkm(dv) = " << num(r_dv) << ", max norm ratio " << num(worst_ratio) << " over " << battery.size()
           << " measures, homogeneity deviation " << num(worst_homog);
  o.require(worst_ratio < 20.0, "norm ratio " + num(worst_ratio) + " >= 20");
  o.require(worst_homog <= 1e-8 * 2.5, "homogeneity deviation " + num(worst_homog));
}

// 4. Berezin exactness for I, 1 (x) 1 and T_a.
void berezin_suite(Outcome& o) {
  std::mt19937_64 rng(4);
  const MonomialBasis b30(1, 30);
  double worst_i = 0.0;
  for (int i = 0; i < 500; ++i) {
    const BerezinValue v = berezin_operator(TruncatedOperator::identity(b30), random_point(rng, 1, 0.5));
    const double d = std::abs(v.value - 1.0);
    worst_i = std::max(worst_i, d);
    if (d > v.tail + 1e-15) o.require(false, "B(I) deviation exceeds its tail bound");
  }
  o.require(worst_i <= 1e-9, "B(I) deviation " + num(worst_i));

  double worst_p = 0.0;
  for (const MonomialBasis& b : {MonomialBasis(1, 12), MonomialBasis(2, 6)}) {
    const double rmax = admissible_radius(b.max_degree(), kDefaultMaxTail / static_cast<double>(b.dim()));
    const TruncatedOperator p = projection_on_constants(b);
    for (int i = 0; i < 200; ++i) {
      const PolyPoint z = random_point(rng, b.dim(), rmax);
      worst_p = std::max(worst_p, std::abs(berezin_operator(p, z).value - std::pow(z.defect(), 2)));
    }
  }
  o.require(worst_p <= 1e-10, "B(1 (x) 1) deviation " + num(worst_p));

  const int d = 30;
  const MonomialBasis b(1, d);
  const QuadratureSpec q = QuadratureSpec::for_degree(d);
  const double rmax = admissible_radius(d);
  double worst_t = 0.0;
  // Continuous symbols only: plain rules converge like 1/N across a jump, far from 1e-6.
  const Symbol smooth{[](std::span<const cplx> w) { return std::exp(w[0]) * std::conj(w[0]) + 0.5; }, 3.5, "smooth"};
  for (const Symbol& a : {symbols::defect(), symbols::abs2(0), symbols::real_part(0), symbols::coordinate(0), smooth}) {
    const TruncatedOperator t = toeplitz_symbol(a, b, q);
    const Measure adv = DensityMeasure{a, 1, QuadratureSpec{}};
    for (const auto& z : RadialGrid{{0.0, 0.2, 0.4, rmax}, 8}.points(1)) {
      worst_t = std::max(worst_t, std::abs(berezin_operator(t, z).value - k_berezin_measure(adv, 0, z)));
    }
  }
  o.require(worst_t <= 1e-6, "B(T_a) vs B_0(a dv) deviation " + num(worst_t));
  o.detail << "B(I) " << num(worst_i) << ", B(1 (x) 1) " << num(worst_p) << ", B(T_a) " << num(worst_t);
}

// 5. k-Berezin normalization, covariance, domination.
void k_berezin_suite(Outcome& o) {
  const Measure dv = DensityMeasure{symbols::constant(1.0), 1, QuadratureSpec{}};
  double worst_norm = 0.0;
  for (int k : {0, 1, 4, 16}) {
    for (const auto& z : RadialGrid{}.points(1)) worst_norm = std::max(worst_norm, std::abs(k_berezin_measure(dv, k, z) - 1.0));
  }
  o.require(worst_norm <= 1e-8, "B_k(dv) deviation " + num(worst_norm));

  std::mt19937_64 rng(55);
  double worst_cov = 0.0;
  int dominated_fail = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = trial % 2 + 1;
    std::vector<Atom> atoms;
    for (int i = 0; i < 6; ++i) atoms.push_back({random_point(rng, n, 0.9), cplx(std::cos(i + trial), std::sin(2.0 * i))});
    const AtomicMeasure mu(atoms);
    const int k = trial % 6;
    const CovarianceCheck c = berezin_covariance_check(mu, k, random_point(rng, n, 0.9), random_point(rng, n, 0.9));
    worst_cov = std::max(worst_cov, c.diff / std::max(1.0, std::abs(c.lhs)));
    const Measure abs_mu = total_variation_measure(mu);
    for (int s = 0; s < 10; ++s) {
      const PolyPoint p = random_point(rng, n, 0.99);
      if (std::abs(k_berezin_measure(mu, k, p)) > std::pow(k + 1.0, n) * k_berezin_measure(abs_mu, 0, p).real() * (1 + 1e-12)) {
        ++dominated_fail;
      }
    }
  }
  o.require(worst_cov <= 1e-11, "covariance deviation " + num(worst_cov));
  o.require(dominated_fail == 0, std::to_string(dominated_fail) + " domination failures");
  o.detail << "normalization " << num(worst_norm) << ", covariance " << num(worst_cov) << " (100 instances), "
           << dominated_fail << " domination failures";
}

// 6. B_k(a) -> a along k in {1, 8, 32}.
void bk_approx_suite(Outcome& o) {
  const auto grid = RadialGrid{}.points(1);
  for (const auto& [label, a] : {std::pair{"1-|z|^2", symbols::defect()}, std::pair{"Re z1", symbols::real_part(0)}}) {
    std::vector<double> e;
    for (int k : {1, 8, 32}) e.push_back(approx_symbol_error(a, k, grid).value);
    o.detail << label << ": " << num(e[0]) << ", " << num(e[1]) << ", " << num(e[2]) << "; ";
    o.require(e[1] < e[0] && e[2] < e[1], std::string(label) + " errors not strictly decreasing (" + num(e[0]) + ", " +
                                              num(e[1]) + ", " + num(e[2]) + ")");
  }
}

// 7. Approximate identity along rho in {0.5, 0.25, 0.125}.
void approx_identity_suite(Outcome& o) {
  const MonomialBasis b(1, 12);
  std::vector<double> e;
  for (double rho : {0.5, 0.25, 0.125}) e.push_back(approx_identity_error(rho, b, 11.0).error);
  const double r1 = e[1] / e[0], r2 = e[2] / e[1];
  o.detail << "errors " << num(e[0]) << ", " << num(e[1]) << ", " << num(e[2]) << "; ratios " << num(r1) << ", "
           << num(r2);
  o.require(e[1] < e[0] && e[2] < e[1], "errors not strictly decreasing");
  for (double r : {r1, r2}) o.require(r > 0.2 && r < 0.9, "halving ratio " + num(r) + " outside (0.2, 0.9)");
}

// 8. Segmented approximation along sigma in {1, 2, 3}.
void segmented_suite(Outcome& o) {
  const MonomialBasis b(1, 12);
  const TruncatedOperator s = toeplitz_symbol(symbols::abs2(0), b, QuadratureSpec::for_degree(12));
  const AtomicMeasure mu = mu_rho(0.5, 1, 3.0);
  std::vector<double> e;
  for (double sigma : {1.0, 2.0, 3.0}) {
    CoveringOptions opt;
    opt.samples = 2000;
    e.push_back(segmented_error(s, mu, build_suarez_covering(sigma, 0, 1, 3.0, opt)).error);
  }
  o.detail << "errors " << num(e[0]) << ", " << num(e[1]) << ", " << num(e[2]) << " (D = 12, beta_max = 3)";
  o.require(e[1] < e[0] && e[2] < e[1], "errors not strictly decreasing");
}

// 9. Compactness discrimination.
void verdict_suite(Outcome& o) {
  const int d = 240;
  const MonomialBasis b(1, d);
  const QuadratureSpec q = QuadratureSpec::for_degree(d);
  const std::vector<std::pair<std::string, TruncatedOperator>> compact{
      {"1(x)1", projection_on_constants(b)}, {"T_defect", toeplitz_symbol(symbols::defect(), b, q)}};
  const std::vector<std::pair<std::string, TruncatedOperator>> noncompact{
      {"I", TruncatedOperator::identity(b)}, {"T_z1", toeplitz_symbol(symbols::coordinate(0), b, q)}};
  for (const auto& [name, s] : compact) {
    const VerdictReport r = compactness_verdict(s);
    o.detail << name << ": " << to_string(r.verdict) << " (slope " << num(r.decay_slope) << "); ";
    o.require(r.verdict == Verdict::Vanishing, name + " labeled " + to_string(r.verdict));
  }
  for (const auto& [name, s] : noncompact) {
    const VerdictReport r = compactness_verdict(s);
    o.detail << name << ": " << to_string(r.verdict) << " (slope " << num(r.decay_slope) << "); ";
    o.require(r.verdict == Verdict::NonVanishing, name + " labeled " + to_string(r.verdict));
  }
  const MonomialBasis b12(1, 12);
  const double c_id = estimator_c(TruncatedOperator::identity(b12), 0.95);
  const double c_p = estimator_c(projection_on_constants(b12), 0.95);
  o.detail << "estimator_c(0.95, D = 12): I " << num(c_id) << ", 1(x)1 " << num(c_p);
  o.require(c_id > 0.9, "estimator_c(I) = " + num(c_id) + " is not > 0.9");
  o.require(c_p < 0.1, "estimator_c(1(x)1) = " + num(c_p) + " is not < 0.1");
}

// 10. Growth integral and Schur battery.
void growth_schur_suite(Outcome& o) {
  double worst = 0.0;
  for (double r = 0.0; r <= 0.9 + 1e-12; r += 0.05) {
    for (double th : {0.0, 1.0, 2.5}) {
      const double exact = std::pow(1.0 - r * r, -2.0);
      worst = std::max(worst, std::abs(growth_integral(4.0, 0.0, std::polar(r, th)) - exact) / exact);
    }
  }
  const double slope = growth_exponent_fit(4.0, 0.0, {0.9, 0.95, 0.99, 0.995, 0.999});
  o.require(worst <= 1e-8, "F_{4,0} relative deviation " + num(worst));
  o.require(std::abs(slope + 2.0) <= 0.05, "fitted exponent " + num(slope));
  struct Case {
    double s, t, h, p;
  };
  double worst_ratio = 0.0;
  const std::vector<Case> battery{{2, 0, -0.25, 2}, {2, 0, -2.0 / 9.0, 3}, {2, 0, -2.0 / 9.0, 1.5},
                                  {3, 1, -0.25, 2}, {2, 0, -0.4, 2},       {2.5, 0.5, -0.3, 2}};
  for (const Case& c : battery) {
    const SchurResult r = schur_bound(KernelSpec::power(c.s, c.t), c.h, c.p);
    const double ratio = r.empirical_norm / r.bound;
    worst_ratio = std::max(worst_ratio, ratio);
    o.require(ratio <= 1.05, "Schur case (" + num(c.s) + ", " + num(c.t) + ", " + num(c.h) + ", " + num(c.p) +
                                 ") empirical/bound " + num(ratio));
  }
  o.detail << "F_{4,0} deviation " << num(worst) << ", exponent " << num(slope) << ", max empirical/bound "
           << num(worst_ratio) << " over " << battery.size() << " Schur cases";
}

// 11. CLI byte-reproducibility.
int run_cli(const std::string& args) {
  const std::string cmd = std::string(BERGMAN_KIT_EXE) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void determinism_suite(Outcome& o) {
  const fs::path work = fs::path(ACCEPTANCE_WORKDIR) / "acceptance_cli";
  fs::create_directories(work);
  const std::vector<std::pair<std::string, std::string>> configs{
      {"lattice", R"({"sigma_ladder": [1.0, 2.0], "k_list": [0, 2], "samples": 3000, "seed": 17})"},
      {"carleson", R"({"seed": 17})"},
      {"berezin-profile", R"({"operator": {"kind": "toeplitz", "symbol": "coordinate"}, "seed": 17})"},
      {"approx-identity", R"({"rho_ladder": [0.5, 0.25, 0.125], "seed": 17})"},
      {"bk-approx", R"({"seed": 17})"},
      {"segmented", R"({"samples": 1000, "seed": 17})"},
      {"estimators", R"({"operator": {"kind": "rank_one_constants"}, "seed": 17})"},
      {"verdict", R"({"operator": {"kind": "rank_one_constants"}, "seed": 17})"}};
  int identical = 0;
  for (const auto& [name, body] : configs) {
    const fs::path cfg = work / (name + ".json");
    std::ofstream(cfg) << body;
    bool ok = true;
    for (const char* run : {"a", "b"}) {
      if (run_cli(name + " --config " + cfg.string() + " --out " + (work / run).string()) != 0) ok = false;
    }
    for (const char* ext : {".json", ".csv"}) {
      const std::string a = slurp(work / "a" / (name + ext)), b = slurp(work / "b" / (name + ext));
      if (a.empty() || a != b) ok = false;
    }
    if (ok) ++identical;
    o.require(ok, name + " not byte-identical or failed");
  }
  o.detail << identical << "/" << configs.size() << " experiments byte-identical across reruns";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Mobius identities", mobius_suite},
      {"coverings", covering_suite},
      {"Carleson norms", carleson_suite},
      {"Berezin exactness", berezin_suite},
      {"k-Berezin", k_berezin_suite},
      {"B_k(a) -> a", bk_approx_suite},
      {"approximate identity", approx_identity_suite},
      {"segmented approximation", segmented_suite},
      {"compactness discrimination", verdict_suite},
      {"growth and Schur", growth_schur_suite},
      {"CLI determinism", determinism_suite}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    failed += o.pass() ? 0 : 1;
    std::cout << "criterion " << (i + 1) << " [" << criteria[i].first << "]: " << (o.pass() ? "PASS" : "FAIL") << ": "
              << o.detail.str();
    for (const auto& f : o.failures) std::cout << " | failed: " << f;
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
