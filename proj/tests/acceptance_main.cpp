// Acceptance suite: one criterion per check, each printing a PASS/FAIL
// line with the measured figure against its pinned tolerance. Exit status
// is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "projdyn/corpus.hpp"
#include "projdyn/error.hpp"
#include "projdyn/fatou.hpp"
#include "projdyn/green.hpp"
#include "projdyn/parser.hpp"
#include "projdyn/report.hpp"
#include "projdyn/rng.hpp"

using namespace projdyn;

namespace {

int g_failures = 0;
int g_index = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  ++g_index;
  std::string dots(name.size() < 44 ? 44 - name.size() : 1, '.');
  std::printf("[%2d] %s %s %s\n", g_index, name.c_str(), dots.c_str(),
              pass ? "PASS" : "FAIL");
  std::printf("     %s\n", detail.c_str());
  if (!pass) ++g_failures;
}

void guarded(const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(name, false, std::string("exception: ") + e.what());
  }
}

// Raster parameters shared by the raster criteria: resolution-adaptive
// perturbation ring (0.85 pixel pitches), stability floor 30 ring radii,
// blow-up at 1.0 FS radians, 16 ring samples, depth 20.
ClassifierParams raster_params() {
  ClassifierParams cp;
  cp.depth = 20;
  cp.ring = 16;
  cp.r0 = 0;
  cp.r0_scale = 0.85;
  cp.stab_scale = 30;
  cp.delta_blow = 1.0;
  return cp;
}

constexpr double kMaskTau = 0.004;

// ---------------------------------------------------------------- 1 & 2

void criterion_cremona_exactness() {
  const std::string name = "cremona exact involution and degrees";
  RationalMap f = corpus_map("cremona");
  IterateResult r2 = iterate_symbolic(f, 2);
  bool ok = true;
  std::string why;
  HPoly x = parse_hpoly("x"), y = parse_hpoly("y"), z = parse_hpoly("z");
  // Identity lift up to one common scalar.
  const auto& L = r2.map.lift();
  GaussRat s0 = L[0].leading().coeff;
  ok &= L[0] == hp_scale(s0, x) && L[1] == hp_scale(s0, y) &&
        L[2] == hp_scale(s0, z);
  if (!ok) why = "square is not the identity lift";
  ok &= r2.cofactors.size() == 1 && r2.cofactors[0] == parse_hpoly("x*y*z");
  DegreeReport rep = as_test(f, 6);
  bool deg_ok = rep.degrees == std::vector<long long>{2, 1, 2, 1, 2, 1};
  bool verdict_ok = !rep.algebraically_stable && rep.witness == 2;
  ok &= deg_ok && verdict_ok;
  std::string seq;
  for (auto d : rep.degrees) seq += std::to_string(d) + " ";
  report(name, ok,
         "f^2 = [x:y:z] with cancelled factor x*y*z (exact); degrees " + seq +
             "witness n=" + std::to_string(rep.witness));
}

void criterion_cremona_indeterminacy() {
  const std::string name = "cremona indeterminacy points certified";
  RationalMap f = corpus_map("cremona");
  const auto& ind = f.indeterminacy();
  bool ok = ind.size() == 3;
  double worst = 0.0;
  for (const ProjPoint& want : {ProjPoint::of(1, 0, 0), ProjPoint::of(0, 1, 0),
                                ProjPoint::of(0, 0, 1)}) {
    bool found = false;
    for (const auto& ip : ind)
      if (fs_distance(ip.point, want) < 1e-9) {
        found = ip.exact && ip.residual < 1e-10;
        worst = std::max(worst, ip.residual);
      }
    ok &= found;
  }
  report(name, ok,
         "points=" + std::to_string(ind.size()) +
             " all exact, max residual=" + fmt_double(worst) + " (< 1e-10)");
}

// -------------------------------------------------------------------- 3

void criterion_cremona_fatou_raster() {
  const std::string name = "cremona Fatou raster vs analytic mask";
  RationalMap f = corpus_map("cremona");
  Slice s = Slice::chart_plane(2, -2, 2, -2, 2, 128, 128);
  FatouRaster r = fatou_raster(f, s, raster_params(), 2);
  const double tube = 1e-3;  // |xy| <= tube marks the excluded cross
  const double h = s.ds();
  long long agree = 0, total = 0;
  double worst_px = 0.0;
  for (int j = 0; j < 128; ++j)
    for (int i = 0; i < 128; ++i) {
      auto [x, y] = s.param(i, j);
      bool mask_fatou = std::abs(x * y) > tube;
      bool raster_fatou = r.verdicts[r.idx(i, j)] == FatouVerdict::Fatou;
      ++total;
      if (mask_fatou == raster_fatou) ++agree;
      else worst_px = std::max(worst_px, std::min(std::abs(x), std::abs(y)) / h);
    }
  double ratio = static_cast<double>(agree) / total;
  bool ok = ratio >= 0.95 && worst_px <= 2.0;
  report(name, ok,
         "agreement=" + fmt_double(ratio, 6) +
             " (>= 0.95), farthest disagreement " + fmt_double(worst_px, 3) +
             " px from {xy=0} (<= 2)");
}

// -------------------------------------------------------------------- 4

void criterion_green_oracle() {
  const std::string name = "squaring escape potential vs closed form";
  RationalMap f = corpus_map("squaring");
  Slice s = Slice::chart_plane(2, -2, 2, -2, 2, 64, 64);
  GreenField g = v_field(f, s, 20, 2);
  const double h = s.ds();
  double sup = 0.0;
  int used = 0;
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i) {
      auto [x, y] = s.param(i, j);
      double margin = 2.0 * h;
      // Distance to the switching locus pieces of log max(|x|,|y|,1).
      double dist = std::min(std::abs(std::abs(x) - 1.0), std::abs(std::abs(y) - 1.0));
      if (std::max(std::abs(x), std::abs(y)) >= 1.0)
        dist = std::min(dist, std::abs(std::abs(x) - std::abs(y)) / std::sqrt(2.0));
      if (dist <= margin) continue;
      int k = g.idx(i, j);
      if (g.status[k] != PixelStatus::OK) continue;
      double cf = std::log(std::max({std::abs(x), std::abs(y), 1.0})) -
                  std::log(vec_norm(s.representative(i, j)));
      sup = std::max(sup, std::abs(g.v[k] - cf));
      ++used;
    }
  bool ok = used > 2000 && sup < 1e-5;

  // Functional equation d*v(p) = v(f p) + log||F(p_hat)|| on 100 points.
  SplitMix64 rng(1234);
  int checked = 0;
  double worst = 0.0;
  while (checked < 100) {
    ProjPoint p = ProjPoint::normalize({cplx(rng.normal(), rng.normal()),
                                        cplx(rng.normal(), rng.normal()),
                                        cplx(rng.normal(), rng.normal())});
    Vec3c img = f.apply_raw(p.coords());
    double n = vec_norm(img);
    if (n < 1e-8) continue;
    GreenResult vp = green_potential(f, p, 25);
    GreenResult vf = green_potential(f, ProjPoint::normalize(img), 25);
    if (vp.status != PixelStatus::OK || vf.status != PixelStatus::OK) continue;
    worst = std::max(worst,
                     std::abs(2.0 * vp.value - vf.value - std::log(n)));
    ++checked;
  }
  ok &= worst < 1e-5;
  report(name, ok,
         "sup|v - closed form|=" + fmt_double(sup, 4) + " over " +
             std::to_string(used) + " px (< 1e-5); functional equation worst=" +
             fmt_double(worst, 4) + " on 100 points (< 1e-5)");
}

// -------------------------------------------------------------------- 5

void criterion_julia_equals_support() {
  const std::string name = "holomorphic J matches the support mask";
  RationalMap f = corpus_map("squaring");
  Slice s = Slice::chart_plane(2, -2, 2, -2, 2, 128, 128);
  FatouRaster r = fatou_raster(f, s, raster_params(), 2);
  GreenField g = v_field(f, s, 20, 2);
  SuppMask m = laplacian_mask(g, kMaskTau);
  long long mask_count = 0, symdiff = 0;
  for (int j = 1; j + 1 < 128; ++j)
    for (int i = 1; i + 1 < 128; ++i) {
      int k = r.idx(i, j);
      bool julia = r.verdicts[k] == FatouVerdict::Julia ||
                   r.verdicts[k] == FatouVerdict::NearIndeterminacy;
      bool masked = m.mask[k] != 0;
      mask_count += masked;
      symdiff += (julia != masked);
    }
  double ratio = mask_count ? static_cast<double>(symdiff) / mask_count : 1.0;
  report(name, mask_count > 0 && ratio < 0.10,
         "symmetric difference " + std::to_string(symdiff) + " px / mask " +
             std::to_string(mask_count) + " px = " + fmt_double(ratio, 4) +
             " (< 0.10)");
}

// -------------------------------------------------------------------- 6

void criterion_classifier_equivalence() {
  const std::string name = "classifier agreement and graph tails";
  ClassifierParams cp = raster_params();
  RationalMap sq = corpus_map("squaring");
  Slice sq_slice = Slice::chart_plane(2, -2, 2, -2, 2, 128, 128);
  CompareReport a = classifier_compare(sq, sq_slice, cp, 20, kMaskTau, 2);
  bool ok = a.green_available && a.agreement_defined && a.agreement >= 0.95;

  RationalMap he = corpus_map("henon");
  Slice he_slice = Slice::chart_plane(2, -3, 3, -3, 3, 128, 128);
  CompareReport b = classifier_compare(he, he_slice, cp, 20, kMaskTau, 2);
  ok &= b.green_available && b.agreement_defined && b.agreement >= 0.90;

  // Strong-convergence spot check: graph tails collapse on a basin patch.
  Slice patch = Slice::complex_line({cplx(0, 0), cplx(0, 0), cplx(1, 0)},
                                    {cplx(1, 0), cplx(0, 0), cplx(0, 0)}, 1.3,
                                    1.7, -0.2, 0.2, 8, 8);
  double tail = 0.0;
  for (auto [n, m] : {std::pair{15, 16}, {15, 17}, {16, 17}})
    tail = std::max(tail, graph_hausdorff(sq, patch, n, m, 6));
  ok &= tail < 1e-3;
  report(name, ok,
         "agreement squaring=" + fmt_double(a.agreement, 6) +
             " (>= 0.95), henon=" + fmt_double(b.agreement, 6) +
             " (>= 0.90); max graph tail=" + fmt_double(tail, 3) + " (< 1e-3)");
}

// -------------------------------------------------------------------- 7

void criterion_no_charge() {
  const std::string name = "curve charge decreases into shrinking tubes";
  RationalMap f = corpus_map("squaring");
  Slice s = Slice::complex_line({cplx(0, 0), cplx(1.3, 0), cplx(1, 0)},
                                {cplx(1, 0), cplx(0, 0), cplx(0, 0)}, -2, 2,
                                -2, 2, 160, 160);
  ChargeReport rep = curve_charge_estimate(f, parse_hpoly("x - y"), s,
                                           {0.8, 0.4, 0.2, 0.1, 0.05}, 20,
                                           kMaskTau, 2);
  bool ok = !rep.curve_misses_window && rep.masses.front() > 0;
  std::string seq;
  for (size_t k = 0; k < rep.masses.size(); ++k) {
    seq += fmt_double(rep.masses[k], 4) + (k + 1 < rep.masses.size() ? " " : "");
    if (k > 0) ok &= rep.masses[k] <= 1.05 * rep.masses[k - 1];
  }
  ok &= rep.masses.back() < rep.masses.front();
  report(name, ok, "masses over 4 halvings: " + seq +
                       " (each step <= 1.05x previous)");
}

// -------------------------------------------------------------------- 8

void criterion_julia_connected() {
  const std::string name = "squaring Julia raster is 8-connected";
  RationalMap f = corpus_map("squaring");
  Slice s = Slice::chart_plane(2, -2, 2, -2, 2, 128, 128);
  FatouRaster r = fatou_raster(f, s, raster_params(), 2);
  ConnectivityReport c = connectivity_check(r);
  report(name, c.has_julia && c.component_count == 1,
         "julia pixels=" + std::to_string(r.counts[1]) +
             ", components=" + std::to_string(c.component_count) + " (== 1)");
}

// -------------------------------------------------------------------- 9

void criterion_dichotomy() {
  const std::string name = "henon regular/irregular dichotomy";
  RationalMap f = corpus_map("henon");
  Slice s = Slice::chart_plane(2, -3, 3, -3, 3, 96, 96);
  FatouRaster r = fatou_raster(f, s, raster_params(), 2);
  DichotomyParams dp;
  DichotomyReport rep = dichotomy_check(f, r, dp);
  bool ok = !rep.vacuous && !rep.components.empty();
  // The escape basin of [0:1:0] is the component holding (0, 2.9).
  int bi = static_cast<int>(std::lround((0.0 - s.s0) / s.ds()));
  int bj = static_cast<int>(std::lround((2.9 - s.t0) / s.dt()));
  int basin_label = r.components[r.idx(bi, bj)];
  double basin_fraction = -1.0;
  std::string fr;
  for (const auto& c : rep.components) {
    if (c.skipped) continue;
    ok &= (c.fraction <= 0.2 || c.fraction >= 0.8);
    if (c.label == basin_label) basin_fraction = c.fraction;
    fr += fmt_double(c.fraction, 3) + " ";
  }
  ok &= basin_fraction >= 0.99;
  report(name, ok,
         "component fractions: " + fr + "(none in (0.2, 0.8)); basin of "
             "[0:1:0] fraction=" + fmt_double(basin_fraction, 4) + " (>= 0.99)");
}

// ------------------------------------------------------------------- 10

void criterion_oracle_completeness() {
  const std::string name = "indeterminacy solver vs sphere-grid oracle";
  bool ok = true;
  std::string detail;
  for (const auto& e : builtin_corpus()) {
    RationalMap f = parse_map(e.expression);
    auto minima = oracles::sphere_grid_minima(f.lift(), 1000000, kEpsInd / 10);
    const auto& ind = f.indeterminacy();
    double worst = 0.0;
    for (const auto& gm : minima) {
      ProjPoint p = ProjPoint::normalize(gm.point);
      double best = 4.0;
      for (const auto& ip : ind) best = std::min(best, fs_distance(p, ip.point));
      worst = std::max(worst, best);
      ok &= best < 1e-3;
    }
    ok &= minima.size() >= ind.size();  // the oracle sees every certified point
    detail += e.name + ":" + std::to_string(minima.size()) + "/" +
              std::to_string(ind.size()) + " ";
  }
  report(name, ok,
         "grid minima vs certified points (10^6 samples each): " + detail +
             "- every refined minimum within 1e-3 FS of a certified point");
}

// ------------------------------------------------------------------- 11

HPoly random_hpoly(SplitMix64& rng, int maxdeg) {
  int d = static_cast<int>(rng.below(maxdeg + 1));
  int nterms = 1 + static_cast<int>(rng.below(4));
  std::vector<Monomial> terms;
  for (int t = 0; t < nterms; ++t) {
    int a = static_cast<int>(rng.below(d + 1));
    int b = static_cast<int>(rng.below(d - a + 1));
    long re = static_cast<long>(rng.below(7)) - 3;
    long im = rng.below(4) == 0 ? static_cast<long>(rng.below(5)) - 2 : 0;
    if (re == 0 && im == 0) re = 1;
    terms.push_back({GaussRat(mpq_class(re), mpq_class(im)), {a, b, d - a - b}});
  }
  HPoly p = HPoly::from_terms(std::move(terms));
  if (p.is_zero()) return HPoly::monomial(GaussRat(1), d, 0, 0);
  return p;
}

void criterion_property_suite() {
  const std::string name = "randomized algebra property suite";
  SplitMix64 rng(20260810);
  long long cases = 0, failures = 0;

  // Degree and homogeneity laws for products and compositions.
  for (int it = 0; it < 1000; ++it) {
    HPoly a = random_hpoly(rng, 3), b = random_hpoly(rng, 3);
    HPoly ab = hp_mul(a, b);
    ++cases;
    if (ab.degree() != a.degree() + b.degree() || ab != hp_mul(b, a)) ++failures;
  }

  // gcd divides both operands with zero remainder.
  for (int it = 0; it < 1000; ++it) {
    HPoly g = random_hpoly(rng, 2);
    HPoly p = hp_mul(random_hpoly(rng, 2), g);
    HPoly q = hp_mul(random_hpoly(rng, 2), g);
    HPoly d = hp_gcd(p, q);
    auto qp = hp_divexact(p, d), qq = hp_divexact(q, d);
    ++cases;
    if (!qp || !qq || hp_mul(*qp, d) != p || hp_mul(*qq, d) != q) ++failures;
  }

  // Compose associativity: p(F) then G equals p(F o G).
  for (int it = 0; it < 1000; ++it) {
    HPoly p = random_hpoly(rng, 2);
    std::array<HPoly, 3> F, G;
    for (auto& f : F)
      do { f = random_hpoly(rng, 2); } while (f.is_zero() || f.degree() != 2);
    for (auto& g : G)
      do { g = random_hpoly(rng, 1); } while (g.is_zero() || g.degree() != 1);
    std::array<HPoly, 3> FoG;
    for (int i = 0; i < 3; ++i) FoG[i] = hp_compose(F[i], G);
    ++cases;
    if (hp_compose(hp_compose(p, F), G) != hp_compose(p, FoG)) ++failures;
  }

  // Iterate semigroup law on small random maps, reduced lifts equal up to
  // one scalar.
  std::vector<RationalMap> maps{corpus_map("cremona"), corpus_map("squaring"),
                                corpus_map("henon")};
  int done = 0;
  while (done < 1000) {
    const RationalMap& f = maps[done % maps.size()];
    int m = 1 + static_cast<int>(rng.below(2));
    int n = 1 + static_cast<int>(rng.below(2));
    IterateResult whole = iterate_symbolic(f, m + n);
    std::array<HPoly, 3> cur = iterate_symbolic(f, m).map.lift();
    for (int k = 0; k < n; ++k) {
      std::array<HPoly, 3> next;
      for (int i = 0; i < 3; ++i) next[i] = hp_compose(f.lift()[i], cur);
      cur = reduce_lift(next).first;
    }
    ++cases;
    ++done;
    bool same = true;
    GaussRat scale;
    bool have = false;
    for (int i = 0; i < 3; ++i) {
      const HPoly& A = whole.map.lift()[i];
      const HPoly& B = cur[i];
      if (A.is_zero() != B.is_zero()) { same = false; break; }
      if (A.is_zero()) continue;
      GaussRat s = A.leading().coeff / B.leading().coeff;
      if (!have) { scale = s; have = true; }
      if (s != scale || A != hp_scale(s, B)) { same = false; break; }
    }
    if (!same) ++failures;
  }

  // Parse/print round trip.
  for (int it = 0; it < 1000; ++it) {
    HPoly p = random_hpoly(rng, 4);
    ++cases;
    if (parse_hpoly(p.str()) != p) ++failures;
  }

  report(name, failures == 0,
         std::to_string(cases) + " randomized cases across 5 law families, " +
             std::to_string(failures) + " failures");
}

}  // namespace

int main() {
  std::printf("projdyn acceptance suite\n");
  guarded("cremona exact involution and degrees", criterion_cremona_exactness);
  guarded("cremona indeterminacy points certified", criterion_cremona_indeterminacy);
  guarded("cremona Fatou raster vs analytic mask", criterion_cremona_fatou_raster);
  guarded("squaring escape potential vs closed form", criterion_green_oracle);
  guarded("holomorphic J matches the support mask", criterion_julia_equals_support);
  guarded("classifier agreement and graph tails", criterion_classifier_equivalence);
  guarded("curve charge decreases into shrinking tubes", criterion_no_charge);
  guarded("squaring Julia raster is 8-connected", criterion_julia_connected);
  guarded("henon regular/irregular dichotomy", criterion_dichotomy);
  guarded("indeterminacy solver vs sphere-grid oracle", criterion_oracle_completeness);
  guarded("randomized algebra property suite", criterion_property_suite);
  if (g_failures == 0) std::printf("all %d criteria passed\n", g_index);
  else std::printf("%d of %d criteria FAILED\n", g_failures, g_index);
  return g_failures;
}
