#pragma once

// Test-side oracles, independent of the library's solver paths.

#include <algorithm>
#include <cmath>
#include <vector>

#include "projdyn/hpoly.hpp"
#include "projdyn/projpoint.hpp"
#include "projdyn/rng.hpp"

namespace oracles {

using projdyn::cplx;
using projdyn::HPoly;
using projdyn::HPolyEval;
using projdyn::ProjPoint;
using projdyn::SplitMix64;
using projdyn::Vec3c;

inline double residual(const std::array<HPolyEval, 3>& ev, const Vec3c& w) {
  double r = 0.0;
  for (const auto& e : ev) r = std::max(r, std::abs(e(w)));
  return r;
}

inline Vec3c unit(Vec3c w) {
  double n = projdyn::vec_norm(w);
  for (auto& c : w) c /= n;
  return w;
}

// Shrinking coordinate pattern search on the unit sphere; converges
// linearly near simple common zeros. Purely numeric, no elimination.
// Bounded passes plus stall detection keep it from crawling around flat
// minima of maps with no common zeros.
inline Vec3c pattern_refine(const std::array<HPolyEval, 3>& ev, Vec3c w,
                            int max_shrink = 60) {
  w = unit(w);
  double best = residual(ev, w);
  double step = 0.1;
  for (int shrink = 0; shrink < max_shrink; ++shrink) {
    for (int pass = 0; pass < 40; ++pass) {
      bool improved = false;
      for (int k = 0; k < 3; ++k) {
        for (int part = 0; part < 2; ++part) {
          for (double sgn : {1.0, -1.0}) {
            Vec3c cand = w;
            cand[k] += (part == 0) ? cplx(sgn * step, 0) : cplx(0, sgn * step);
            cand = unit(cand);
            double r = residual(ev, cand);
            if (r < best) {
              best = r;
              w = cand;
              improved = true;
            }
          }
        }
      }
      if (!improved) break;
    }
    step *= 0.5;
    if (step < 1e-15) break;
  }
  return w;
}

// Finite-difference Newton on the square-norm system in a local affine
// chart (largest coordinate frozen). Test-side: numeric differencing and a
// hand-rolled 2x2 complex solve, nothing shared with the library solver.
inline Vec3c newton_polish_fd(const std::array<HPolyEval, 3>& ev, Vec3c w) {
  w = unit(w);
  auto norm2 = [&](const std::array<cplx, 3>& f) {
    return std::norm(f[0]) + std::norm(f[1]) + std::norm(f[2]);
  };
  auto F = [&](const Vec3c& p) {
    return std::array<cplx, 3>{ev[0](p), ev[1](p), ev[2](p)};
  };
  // Damped Gauss-Newton: quadratic on simple zeros, still linear on
  // rank-deficient ones (the Henon-type lift has one at [1:0:0]).
  for (int it = 0; it < 80; ++it) {
    int big = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(w[i]) > std::abs(w[big])) big = i;
    int u = (big + 1) % 3, v = (big + 2) % 3;
    auto f0 = F(w);
    double base = norm2(f0);
    if (base < 1e-32) break;
    const double h = 1e-8;
    Vec3c wu = w, wv = w;
    wu[u] += h;
    wv[v] += h;
    auto fu = F(wu), fv = F(wv);
    cplx J[3][2];
    for (int r = 0; r < 3; ++r) {
      J[r][0] = (fu[r] - f0[r]) / h;
      J[r][1] = (fv[r] - f0[r]) / h;
    }
    cplx A00 = 0, A01 = 0, A11 = 0, b0 = 0, b1 = 0;
    for (int r = 0; r < 3; ++r) {
      A00 += std::conj(J[r][0]) * J[r][0];
      A01 += std::conj(J[r][0]) * J[r][1];
      A11 += std::conj(J[r][1]) * J[r][1];
      b0 -= std::conj(J[r][0]) * f0[r];
      b1 -= std::conj(J[r][1]) * f0[r];
    }
    cplx det = A00 * A11 - A01 * std::conj(A01);
    if (std::abs(det) < 1e-60) break;
    cplx d0 = (b0 * A11 - A01 * b1) / det;
    cplx d1 = (A00 * b1 - std::conj(A01) * b0) / det;
    bool accepted = false;
    double lam = 1.0;
    for (int back = 0; back < 12 && !accepted; ++back, lam *= 0.5) {
      Vec3c next = w;
      next[u] += lam * d0;
      next[v] += lam * d1;
      next = unit(next);
      if (norm2(F(next)) < base) {
        w = next;
        accepted = true;
      }
    }
    if (!accepted) break;
  }
  return w;
}

struct GridMinimum {
  Vec3c point;
  double residual;
};

// Brute-force indeterminacy oracle: deterministic samples on the unit
// sphere of C^3, refined by pattern search from the best candidates.
inline std::vector<GridMinimum> sphere_grid_minima(
    const std::array<HPoly, 3>& lift, int samples, double keep_below,
    std::uint64_t seed = 424242) {
  std::array<HPolyEval, 3> ev{HPolyEval(lift[0]), HPolyEval(lift[1]),
                              HPolyEval(lift[2])};
  SplitMix64 rng(seed);
  struct Cand {
    Vec3c w;
    double r;
  };
  std::vector<Cand> best;
  const size_t kKeep = 80;
  for (int i = 0; i < samples; ++i) {
    Vec3c w{cplx(rng.normal(), rng.normal()), cplx(rng.normal(), rng.normal()),
            cplx(rng.normal(), rng.normal())};
    if (projdyn::vec_norm(w) < 1e-9) continue;
    w = unit(w);
    double r = residual(ev, w);
    if (best.size() < kKeep) {
      best.push_back({w, r});
      if (best.size() == kKeep)
        std::sort(best.begin(), best.end(),
                  [](const Cand& a, const Cand& b) { return a.r < b.r; });
    } else if (r < best.back().r) {
      best.back() = {w, r};
      std::sort(best.begin(), best.end(),
                [](const Cand& a, const Cand& b) { return a.r < b.r; });
    }
  }
  // Dedupe coarse clusters, then refine each representative.
  std::vector<Cand> reps;
  for (const auto& c : best) {
    bool close = false;
    for (const auto& r : reps) {
      ProjPoint a = ProjPoint::normalize(c.w), b = ProjPoint::normalize(r.w);
      if (projdyn::fs_distance(a, b) < 0.05) { close = true; break; }
    }
    if (!close) reps.push_back(c);
  }
  std::vector<GridMinimum> out;
  for (const auto& c : reps) {
    // Restarts give the pattern search fresh travel capacity at every
    // scale; degenerate zeros (rank-deficient Jacobians) need it.
    Vec3c w = c.w;
    for (int restart = 0; restart < 3; ++restart) w = pattern_refine(ev, w);
    w = newton_polish_fd(ev, w);
    double r = residual(ev, w);
    if (r < keep_below) {
      bool dup = false;
      for (const auto& o : out) {
        ProjPoint a = ProjPoint::normalize(w), b = ProjPoint::normalize(o.point);
        if (projdyn::fs_distance(a, b) < 1e-6) { dup = true; break; }
      }
      if (!dup) out.push_back({w, r});
    }
  }
  return out;
}

// Closed-form escape potential of the coordinate-squaring map:
// v = log max|w_i| on unit representatives.
inline double squaring_map_potential(const Vec3c& unit_rep) {
  double m = std::max({std::abs(unit_rep[0]), std::abs(unit_rep[1]),
                       std::abs(unit_rep[2])});
  return std::log(m);
}

}  // namespace oracles
