#include "projdyn/fatou.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "projdyn/error.hpp"
#include "projdyn/parallel.hpp"

namespace projdyn {

const char* verdict_name(FatouVerdict v) {
  switch (v) {
    case FatouVerdict::Fatou: return "Fatou";
    case FatouVerdict::Julia: return "Julia";
    case FatouVerdict::NearIndeterminacy: return "NearIndeterminacy";
    case FatouVerdict::Unresolved: return "Unresolved";
  }
  return "?";
}

namespace {

// Cluster classification over raw unit vectors. Distance thresholds are
// applied through |<a,b>| against cos(threshold), avoiding atan2 in the
// inner loop; fs > t iff |<a,b>| < cos t on [0, pi/2].
FatouVerdict classify_cluster(const RationalMap& f, std::vector<Vec3c> pts,
                              int depth, double cos_stab, double cos_blow,
                              double eps_ind) {
  if (depth < 1) return FatouVerdict::Unresolved;  // nothing was certified
  bool stab_violated = false;
  const size_t n = pts.size();
  for (int step = 1; step <= depth; ++step) {
    for (auto& w : pts) {
      Vec3c img = f.apply_raw(w);
      double nn = vec_norm(img);
      if (!(nn >= eps_ind) || !std::isfinite(nn))
        return FatouVerdict::NearIndeterminacy;
      for (int i = 0; i < 3; ++i) w[i] = img[i] / nn;
    }
    double min_cos = 1.0;
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a + 1; b < n; ++b) {
        double c = std::abs(vec_inner(pts[a], pts[b]));
        if (c < min_cos) min_cos = c;
      }
    if (min_cos < cos_blow) return FatouVerdict::Julia;
    if (min_cos < cos_stab) stab_violated = true;
  }
  return stab_violated ? FatouVerdict::Unresolved : FatouVerdict::Fatou;
}

std::vector<Vec3c> build_cluster(const ProjPoint& p,
                                 const std::array<Vec3c, 2>& frame, int ring,
                                 double r0) {
  std::vector<Vec3c> pts;
  pts.reserve(ring + 1);
  pts.push_back(p.coords());
  const double cr = std::cos(r0), sr = std::sin(r0);
  for (int k = 0; k < ring; ++k) {
    double th = 2.0 * 3.14159265358979323846 * k / ring;
    double ca = std::cos(th), sa = std::sin(th);
    Vec3c q;
    for (int i = 0; i < 3; ++i)
      q[i] = cr * p.coords()[i] + sr * (ca * frame[0][i] + sa * frame[1][i]);
    pts.push_back(q);
  }
  return pts;
}

}  // namespace

FatouVerdict equicontinuity_classify(const RationalMap& f, const ProjPoint& p,
                                     const ClassifierParams& params,
                                     const std::array<Vec3c, 2>& frame,
                                     double r0, double dstab) {
  if (params.ring < 4)
    throw Error(Errc::InvalidArgument, "ring needs at least 4 samples");
  if (r0 <= 0) r0 = params.r0 > 0 ? params.r0 : 1e-3;
  if (dstab <= 0) dstab = params.delta_stab;
  if (!(r0 < dstab && dstab < params.delta_blow))
    throw Error(Errc::InvalidArgument,
                "need r0 < delta_stab < delta_blow");
  std::vector<Vec3c> pts = build_cluster(p, frame, params.ring, r0);
  return classify_cluster(f, std::move(pts), params.depth, std::cos(dstab),
                          std::cos(std::min(params.delta_blow, 1.57079)),
                          params.eps_ind);
}

FatouVerdict equicontinuity_classify(const RationalMap& f, const ProjPoint& p,
                                     const ClassifierParams& params) {
  Slice dummy = Slice::chart_plane(2, -1, 1, -1, 1, 2, 2);
  return equicontinuity_classify(f, p, params, tangent_frame(dummy, p));
}

FatouRaster fatou_raster(const RationalMap& f, const Slice& s,
                         const ClassifierParams& params, int workers) {
  FatouRaster r;
  r.slice = s;
  r.params = params;
  r.verdicts.assign(s.pixel_count(), FatouVerdict::Unresolved);
  r.components.assign(s.pixel_count(), 0);

  const bool auto_r0 = params.r0 <= 0;
  parallel_rows(s.height, workers, [&](int j) {
    for (int i = 0; i < s.width; ++i) {
      FatouVerdict v;
      try {
        ProjPoint p = s.point(i, j);
        double r0 = params.r0;
        double dstab = params.delta_stab;
        if (auto_r0) {
          // Local pixel pitch in FS radians.
          double pe = 0.0, ps = 0.0;
          if (i + 1 < s.width) pe = fs_distance(p, s.point(i + 1, j));
          if (j + 1 < s.height) ps = fs_distance(p, s.point(i, j + 1));
          if (pe == 0.0 && ps == 0.0) pe = 1e-3;
          r0 = params.r0_scale * std::max(pe, ps);
          dstab = std::max(params.delta_stab, params.stab_scale * r0);
          if (!(dstab < params.delta_blow))
            dstab = 0.99 * params.delta_blow;
          if (!(r0 < dstab)) r0 = 0.5 * dstab;
        }
        v = equicontinuity_classify(f, p, params, tangent_frame(s, p), r0,
                                    dstab);
      } catch (const Error&) {
        v = FatouVerdict::NearIndeterminacy;
      }
      r.verdicts[r.idx(i, j)] = v;
    }
  });

  for (const auto& v : r.verdicts) ++r.counts[static_cast<int>(v)];

  // 8-connected flood fill over Fatou pixels, labels in scan order.
  int label = 0;
  std::deque<std::pair<int, int>> queue;
  for (int j = 0; j < s.height; ++j)
    for (int i = 0; i < s.width; ++i) {
      int k = r.idx(i, j);
      if (r.verdicts[k] != FatouVerdict::Fatou || r.components[k] != 0) continue;
      ++label;
      r.components[k] = label;
      queue.push_back({i, j});
      while (!queue.empty()) {
        auto [ci, cj] = queue.front();
        queue.pop_front();
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di) {
            if (di == 0 && dj == 0) continue;
            int ni = ci + di, nj = cj + dj;
            if (ni < 0 || nj < 0 || ni >= s.width || nj >= s.height) continue;
            int nk = r.idx(ni, nj);
            if (r.verdicts[nk] == FatouVerdict::Fatou && r.components[nk] == 0) {
              r.components[nk] = label;
              queue.push_back({ni, nj});
            }
          }
      }
    }
  r.component_count = label;
  return r;
}

FatouVerdict green_classify(const GreenField& g, const SuppMask& m, int i,
                            int j) {
  if (i < 1 || j < 1 || i + 1 >= g.slice.width || j + 1 >= g.slice.height)
    throw Error(Errc::InvalidArgument, "pixel must be interior to the grid");
  int k = g.idx(i, j);
  if (g.status[k] != PixelStatus::OK) return FatouVerdict::NearIndeterminacy;
  if (m.mask[k]) return FatouVerdict::Julia;
  for (int dj = -1; dj <= 1; ++dj)
    for (int di = -1; di <= 1; ++di)
      if (m.mask[g.idx(i + di, j + dj)]) return FatouVerdict::Unresolved;
  return FatouVerdict::Fatou;
}

GraphCloud graph_cloud(const RationalMap& f, const Slice& patch, int depth,
                       int density, double eps_ind) {
  if (density < 2) throw Error(Errc::InvalidArgument, "density must be >= 2");
  GraphCloud cloud;
  Slice grid = sub_window(patch, patch.s0, patch.s1, patch.t0, patch.t1,
                          density, density);
  for (int j = 0; j < density; ++j)
    for (int i = 0; i < density; ++i) {
      ProjPoint base = grid.point(i, j);
      OrbitTrace tr = orbit_pointwise(f, base, depth, eps_ind);
      if (tr.status == OrbitTrace::Status::Completed) {
        cloud.pairs.push_back({base, tr.points.back()});
        continue;
      }
      // Graph-closure approximation: iterate a small punctured circle
      // around the dead base and keep the surviving images.
      cloud.closure_sampled = true;
      auto frame = tangent_frame(grid, base);
      bool any = false;
      const double rho = 1e-4;
      for (int k = 0; k < 8; ++k) {
        double th = 2.0 * 3.14159265358979323846 * (k + 0.5) / 8;
        Vec3c q;
        for (int c = 0; c < 3; ++c)
          q[c] = std::cos(rho) * base.coords()[c] +
                 std::sin(rho) * (std::cos(th) * frame[0][c] +
                                  std::sin(th) * frame[1][c]);
        OrbitTrace ptr = orbit_pointwise(f, ProjPoint::normalize(q), depth,
                                         eps_ind);
        if (ptr.status == OrbitTrace::Status::Completed) {
          cloud.pairs.push_back({base, ptr.points.back()});
          any = true;
        }
      }
      if (!any) ++cloud.dead_bases;
    }
  return cloud;
}

double graph_hausdorff(const RationalMap& f, const Slice& patch, int n, int m,
                       int density, double eps_ind) {
  if (n < 1 || m < 1) throw Error(Errc::InvalidArgument, "depths must be >= 1");
  GraphCloud A = graph_cloud(f, patch, n, density, eps_ind);
  GraphCloud B = graph_cloud(f, patch, m, density, eps_ind);
  int total = density * density;
  if (2 * A.dead_bases > total || 2 * B.dead_bases > total)
    throw Error(Errc::PatchNearIndeterminacy,
                "more than half of the sampled bases reach indeterminacy");
  if (A.pairs.empty() || B.pairs.empty())
    throw Error(Errc::PatchNearIndeterminacy, "empty graph cloud");
  auto dprod = [](const std::pair<ProjPoint, ProjPoint>& a,
                  const std::pair<ProjPoint, ProjPoint>& b) {
    return std::max(fs_distance(a.first, b.first),
                    fs_distance(a.second, b.second));
  };
  double h = 0.0;
  for (const auto& a : A.pairs) {
    double best = 10.0;
    for (const auto& b : B.pairs) best = std::min(best, dprod(a, b));
    h = std::max(h, best);
  }
  for (const auto& b : B.pairs) {
    double best = 10.0;
    for (const auto& a : A.pairs) best = std::min(best, dprod(a, b));
    h = std::max(h, best);
  }
  return h;
}

CompareReport classifier_compare(const RationalMap& f, const Slice& s,
                                 const ClassifierParams& params, int N_green,
                                 double tau, int workers) {
  CompareReport rep;
  FatouRaster eq = fatou_raster(f, s, params, workers);

  bool green_ok = true;
  try {
    require_green_preconditions(f);
  } catch (const Error&) {
    green_ok = false;
  }
  rep.green_available = green_ok;

  if (green_ok) {
    GreenField g = v_field(f, s, N_green, workers);
    SuppMask m = laplacian_mask(g, tau);
    rep.tau = m.tau;
    for (int j = 1; j + 1 < s.height; ++j)
      for (int i = 1; i + 1 < s.width; ++i) {
        FatouVerdict a = eq.verdicts[eq.idx(i, j)];
        FatouVerdict b = green_classify(g, m, i, j);
        bool a_res = a == FatouVerdict::Fatou || a == FatouVerdict::Julia;
        bool b_res = b == FatouVerdict::Fatou || b == FatouVerdict::Julia;
        if (!a_res || !b_res) continue;
        ++rep.resolved;
        if (a == FatouVerdict::Fatou && b == FatouVerdict::Fatou)
          ++rep.both_fatou;
        else if (a == FatouVerdict::Julia && b == FatouVerdict::Julia)
          ++rep.both_julia;
        else {
          if (a == FatouVerdict::Fatou) ++rep.eq_fatou_only;
          else ++rep.eq_julia_only;
          if (rep.disagreements.size() < 64) rep.disagreements.push_back({i, j});
        }
      }
    if (rep.resolved > 0) {
      rep.agreement =
          static_cast<double>(rep.both_fatou + rep.both_julia) / rep.resolved;
      rep.agreement_defined = true;
    }
  } else {
    // Graph-probe spot check on small patches, same-parity tail pairs.
    double cs = (s.s1 - s.s0) * 0.1, ct = (s.t1 - s.t0) * 0.1;
    double centers[4][2] = {{0.3, 0.3}, {0.7, 0.3}, {0.3, 0.7}, {0.7, 0.7}};
    for (auto& c : centers) {
      double sc = s.s0 + c[0] * (s.s1 - s.s0);
      double tc = s.t0 + c[1] * (s.t1 - s.t0);
      Slice patch = sub_window(s, sc - cs / 2, sc + cs / 2, tc - ct / 2,
                               tc + ct / 2, 5, 5);
      try {
        double deven = graph_hausdorff(f, patch, 16, 18, 5);
        double dodd = graph_hausdorff(f, patch, 15, 17, 5);
        rep.probe_tail_distances.push_back(std::min(deven, dodd));
      } catch (const Error&) {
        rep.probe_tail_distances.push_back(std::nan(""));
      }
    }
  }
  return rep;
}

ConnectivityReport connectivity_check(const FatouRaster& r) {
  const Slice& s = r.slice;
  auto counted = [&](int k) {
    return r.verdicts[k] == FatouVerdict::Julia ||
           r.verdicts[k] == FatouVerdict::NearIndeterminacy;
  };
  ConnectivityReport rep;
  std::vector<char> seen(s.pixel_count(), 0);
  std::deque<std::pair<int, int>> queue;
  for (int j = 0; j < s.height; ++j)
    for (int i = 0; i < s.width; ++i) {
      int k = r.idx(i, j);
      if (!counted(k) || seen[k]) continue;
      rep.has_julia = true;
      ++rep.component_count;
      seen[k] = 1;
      queue.push_back({i, j});
      while (!queue.empty()) {
        auto [ci, cj] = queue.front();
        queue.pop_front();
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di) {
            if (di == 0 && dj == 0) continue;
            int ni = ci + di, nj = cj + dj;
            if (ni < 0 || nj < 0 || ni >= s.width || nj >= s.height) continue;
            int nk = r.idx(ni, nj);
            if (counted(nk) && !seen[nk]) {
              seen[nk] = 1;
              queue.push_back({ni, nj});
            }
          }
      }
    }
  return rep;
}

DichotomyReport dichotomy_check(const RationalMap& f, const FatouRaster& r,
                                const DichotomyParams& params) {
  DichotomyReport rep;
  if (f.indeterminacy().empty()) {
    rep.vacuous = true;
    return rep;
  }
  // Evenly spaced sample pixels per component, scan order.
  std::vector<std::vector<int>> pixels(r.component_count + 1);
  for (int j = 0; j < r.slice.height; ++j)
    for (int i = 0; i < r.slice.width; ++i) {
      int label = r.components[r.idx(i, j)];
      if (label > 0) pixels[label].push_back(r.idx(i, j));
    }
  for (int label = 1; label <= r.component_count; ++label) {
    const auto& px = pixels[label];
    if (px.empty()) continue;
    ComponentRegularity cr;
    cr.label = label;
    size_t take = std::min<size_t>(params.per_component, px.size());
    for (size_t t = 0; t < take; ++t) {
      int k = px[t * px.size() / take];
      int i = k % r.slice.width, j = k / r.slice.width;
      RegularityResult res;
      try {
        res = regularity_probe(f, r.slice.point(i, j), params.ball_radius,
                               params.delta, params.depth, params.m_samples);
      } catch (const Error&) {
        ++cr.inconclusive;
        ++cr.probed;
        continue;
      }
      ++cr.probed;
      switch (res.kind) {
        case RegularityResult::Kind::RegularUpToN: ++cr.regular; break;
        case RegularityResult::Kind::NotRegularWitness: ++cr.not_regular; break;
        case RegularityResult::Kind::Inconclusive: ++cr.inconclusive; break;
      }
    }
    int resolvable = cr.regular + cr.not_regular;
    if (resolvable < 3) {
      cr.skipped = true;
    } else {
      cr.fraction = static_cast<double>(cr.regular) / resolvable;
    }
    rep.components.push_back(cr);
  }
  return rep;
}

}  // namespace projdyn
