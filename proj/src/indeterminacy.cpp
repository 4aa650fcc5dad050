#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "projdyn/error.hpp"
#include "projdyn/hpoly.hpp"
#include "projdyn/projpoint.hpp"
#include "projdyn/ratmap.hpp"

// Indeterminacy locus: exact elimination (pairwise resultants, gcd of the
// nonzero ones), numeric roots of the resulting binary form, then
// back-substitution and certification. Candidates snapping to small exact
// Gaussian rationals that annihilate the lift are flagged exact.

namespace projdyn {

namespace {

GaussRat hp_eval_exact(const HPoly& p, const std::array<GaussRat, 3>& w) {
  GaussRat s(0);
  for (const auto& t : p.terms()) {
    GaussRat m = t.coeff;
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < t.exps[v]; ++k) m *= w[v];
    s += m;
  }
  return s;
}

std::vector<cplx> poly_roots(std::vector<cplx> c) {
  // Ascending coefficients. Strip exact/near-zero leading terms.
  double scale = 0.0;
  for (const auto& x : c) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return {};
  while (!c.empty() && std::abs(c.back()) < 1e-13 * scale) c.pop_back();
  std::vector<cplx> roots;
  // Trailing zeros are roots at the origin.
  size_t lead = 0;
  while (lead < c.size() && std::abs(c[lead]) < 1e-13 * scale) ++lead;
  if (lead > 0 && lead < c.size()) roots.push_back(cplx(0, 0));
  if (c.size() - lead < 2) return roots;
  const int d = static_cast<int>(c.size() - lead) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[lead + i] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (int i = 0; i < d; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

// Coefficients of p viewed as a univariate polynomial in `var`, the other
// two variables substituted numerically.
std::vector<cplx> substituted_coeffs(const HPoly& p, int var, const Vec3c& w) {
  std::vector<cplx> c(p.max_exp(var) + 1, cplx(0, 0));
  for (const auto& t : p.terms()) {
    cplx m = t.coeff.to_complex();
    for (int v = 0; v < 3; ++v) {
      if (v == var) continue;
      for (int k = 0; k < t.exps[v]; ++k) m *= w[v];
    }
    c[t.exps[var]] += m;
  }
  return c;
}

// Roots (a : b) of a nonzero binary form in the two variables other than
// `var`, returned as full C^3 vectors with the var coordinate zero.
std::vector<Vec3c> binary_form_roots(const HPoly& g, int var) {
  int u = -1, v = -1;
  for (int k = 0; k < 3; ++k) {
    if (k == var) continue;
    (u < 0 ? u : v) = k;
  }
  const int D = g.degree();
  // c[k] = coefficient of u^k v^(D-k); exact, so the degree drop at (1:0)
  // is detected without tolerances.
  std::vector<GaussRat> ex(D + 1);
  for (const auto& t : g.terms()) ex[t.exps.at(u)] += t.coeff;
  std::vector<cplx> c(D + 1);
  int topk = -1;
  for (int k = 0; k <= D; ++k) {
    c[k] = ex[k].to_complex();
    if (!ex[k].is_zero()) topk = k;
  }
  std::vector<Vec3c> out;
  if (topk < 0) return out;
  std::vector<cplx> cc(c.begin(), c.begin() + topk + 1);
  for (const cplx& r : poly_roots(cc)) {
    Vec3c w{cplx(0, 0), cplx(0, 0), cplx(0, 0)};
    double n = std::sqrt(1.0 + std::norm(r));
    w.at(u) = r / n;
    w.at(v) = 1.0 / n;
    out.push_back(w);
  }
  if (topk < D) {
    Vec3c w{cplx(0, 0), cplx(0, 0), cplx(0, 0)};
    w.at(u) = 1.0;
    out.push_back(w);
  }
  return out;
}

double residual_at(const std::array<HPolyEval, 3>& ev, const Vec3c& w) {
  double r = 0.0;
  for (const auto& e : ev) r = std::max(r, std::abs(e(w)));
  return r;
}

Vec3c unit(const Vec3c& w) {
  double n = vec_norm(w);
  return {w[0] / n, w[1] / n, w[2] / n};
}

bool snap_rat(double x, long max_den, mpq_class& out) {
  // Continued-fraction approximation with bounded denominator.
  double target = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = target;
  for (int it = 0; it < 32; ++it) {
    double fl = std::floor(v);
    if (fl > 1e15 || fl < -1e15) break;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = v - fl;
    if (rem < 1e-12) break;
    v = 1.0 / rem;
  }
  if (q1 == 0) return false;
  double approx = static_cast<double>(p1) / static_cast<double>(q1);
  if (std::abs(approx - x) > 1e-6 * std::max(1.0, std::abs(x))) return false;
  mpq_class q(p1, q1);
  q.canonicalize();
  out = q;
  return true;
}

// Gauss-Newton polish of a near-common-zero on the unit sphere.
Vec3c polish(const std::array<HPoly, 3>& lift, const std::array<HPolyEval, 3>& ev,
             Vec3c w) {
  std::array<std::array<HPolyEval, 3>, 3> dev;
  for (int i = 0; i < 3; ++i)
    for (int v = 0; v < 3; ++v) dev[i][v] = HPolyEval(hp_derivative(lift[i], v));
  for (int it = 0; it < 12; ++it) {
    Eigen::Matrix3cd J;
    Eigen::Vector3cd F;
    for (int i = 0; i < 3; ++i) {
      F(i) = ev[i](w);
      for (int v = 0; v < 3; ++v) J(i, v) = dev[i][v](w);
    }
    Eigen::Vector3cd delta =
        J.colPivHouseholderQr().solve(-F);
    if (!delta.allFinite()) break;
    Vec3c nw{w[0] + delta(0), w[1] + delta(1), w[2] + delta(2)};
    nw = unit(nw);
    if (residual_at(ev, nw) < residual_at(ev, w)) w = nw;
    else break;
  }
  return w;
}

}  // namespace

std::vector<IndPoint> solve_indeterminacy(const std::array<HPoly, 3>& lift,
                                          double eps) {
  std::array<HPolyEval, 3> ev{HPolyEval(lift[0]), HPolyEval(lift[1]),
                              HPolyEval(lift[2])};

  struct Cand {
    Vec3c w;
    bool exact = false;
  };
  std::vector<Cand> cands;

  // Coordinate points are checked exactly up front; they are also the
  // points the (x:y)-projection used below cannot see.
  for (int k = 0; k < 3; ++k) {
    std::array<GaussRat, 3> e{GaussRat(0), GaussRat(0), GaussRat(0)};
    e[k] = GaussRat(1);
    bool zero = true;
    for (const auto& p : lift)
      if (!hp_eval_exact(p, e).is_zero()) { zero = false; break; }
    if (zero) {
      Vec3c w{cplx(0, 0), cplx(0, 0), cplx(0, 0)};
      w[k] = 1.0;
      cands.push_back({w, true});
    }
  }

  // Eliminate one variable; fall back to another if every pairwise
  // resultant vanishes identically (pairwise common factors).
  for (int var : {2, 1, 0}) {
    HPoly r01 = hp_resultant(lift[0], lift[1], var);
    HPoly r02 = hp_resultant(lift[0], lift[2], var);
    HPoly r12 = hp_resultant(lift[1], lift[2], var);
    HPoly g;
    for (const HPoly* r : {&r01, &r02, &r12}) {
      if (r->is_zero()) continue;
      g = g.is_zero() ? *r : hp_gcd(g, *r);
    }
    if (g.is_zero()) continue;  // all pairs degenerate; try next variable
    if (!g.is_constant()) {
      for (const Vec3c& base : binary_form_roots(g, var)) {
        // Back-substitute: common roots in the eliminated variable.
        std::vector<cplx> zroots;
        bool have_base_poly = false;
        for (int i = 0; i < 3 && !have_base_poly; ++i) {
          auto c = substituted_coeffs(lift[i], var, base);
          double scale = 0.0;
          for (auto& x : c) scale = std::max(scale, std::abs(x));
          if (scale < 1e-12) continue;  // component vanishes on this line
          zroots = poly_roots(c);
          have_base_poly = true;
        }
        if (!have_base_poly) continue;
        for (const cplx& zr : zroots) {
          Vec3c w = base;
          w.at(var) = zr;
          if (vec_norm(w) < 1e-12) continue;
          w = unit(w);
          if (residual_at(ev, w) < 1e-5) cands.push_back({w, false});
        }
      }
    }
    break;
  }

  // Certification: snap to small exact Gaussian rationals when possible,
  // polish the rest, keep residuals below threshold.
  std::vector<IndPoint> out;
  for (auto& cand : cands) {
    Vec3c w = cand.w;
    bool exact = cand.exact;
    if (!exact) {
      // Scale so the largest coordinate is 1, then snap componentwise.
      int big = 0;
      for (int i = 1; i < 3; ++i)
        if (std::abs(w[i]) > std::abs(w[big])) big = i;
      cplx scale = w[big];
      std::array<GaussRat, 3> snapped;
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) {
        cplx v = w[i] / scale;
        mpq_class re, im;
        if (std::abs(v.real()) < 1e-9) re = 0;
        else ok = snap_rat(v.real(), 64, re);
        if (!ok) break;
        if (std::abs(v.imag()) < 1e-9) im = 0;
        else ok = snap_rat(v.imag(), 64, im);
        if (ok) snapped[i] = GaussRat(re, im);
      }
      if (ok) {
        bool zero = true;
        for (const auto& p : lift)
          if (!hp_eval_exact(p, snapped).is_zero()) { zero = false; break; }
        if (zero) {
          exact = true;
          for (int i = 0; i < 3; ++i) w[i] = snapped[i].to_complex();
          w = unit(w);
        }
      }
      if (!exact) w = polish(lift, ev, w);
    }
    double res = residual_at(ev, unit(w));
    bool widened = false;
    if (res >= eps) {
      if (res < 100 * eps && !exact) widened = true;
      else continue;
    }
    ProjPoint pt = ProjPoint::normalize(w);
    out.push_back({pt, res, exact, widened});
  }

  // Dedupe by FS distance, preferring exact then smaller residual.
  std::sort(out.begin(), out.end(), [](const IndPoint& a, const IndPoint& b) {
    if (a.exact != b.exact) return a.exact;
    return a.residual < b.residual;
  });
  std::vector<IndPoint> dedup;
  for (const auto& ip : out) {
    bool dup = false;
    for (const auto& kept : dedup)
      if (fs_distance(ip.point, kept.point) < 1e-8) { dup = true; break; }
    if (!dup) dedup.push_back(ip);
  }
  std::sort(dedup.begin(), dedup.end(), [](const IndPoint& a, const IndPoint& b) {
    const Vec3c& u = a.point.coords();
    const Vec3c& v = b.point.coords();
    for (int i = 0; i < 3; ++i) {
      double ur = std::round(u[i].real() * 1e9), vr = std::round(v[i].real() * 1e9);
      if (ur != vr) return ur > vr;
      double ui = std::round(u[i].imag() * 1e9), vi = std::round(v[i].imag() * 1e9);
      if (ui != vi) return ui > vi;
    }
    return false;
  });
  return dedup;
}

}  // namespace projdyn
