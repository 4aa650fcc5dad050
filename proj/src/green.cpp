#include "projdyn/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "projdyn/error.hpp"
#include "projdyn/parallel.hpp"

namespace projdyn {

void require_green_preconditions(const RationalMap& f) {
  if (f.degree() < 2)
    throw Error(Errc::DegreeTooSmall,
                "the escape construction needs degree at least 2");
  // Certificate depth limited by the composition budget.
  IterationBudget budget;
  int n0 = 2;
  long long d = f.degree(), pw = d * d;
  while (n0 < 5 && pw * d <= budget.max_degree) {
    pw *= d;
    ++n0;
  }
  DegreeReport rep = as_test(f, n0, budget);
  if (!rep.algebraically_stable)
    throw Error(Errc::NotAS, "map is not algebraically stable (witness n=" +
                                 std::to_string(rep.witness) + ")");
}

namespace {

GreenResult potential_unchecked(const RationalMap& f, const ProjPoint& p,
                                int N, double eps_ind) {
  OrbitTrace tr = orbit_pointwise(f, p, N, eps_ind);
  GreenResult out;
  out.n_used = static_cast<int>(tr.step_logs.size());
  double dinv = 1.0 / f.degree();
  double w = dinv;
  double acc = 0.0;
  for (double s : tr.step_logs) {
    acc += w * s;
    w *= dinv;
  }
  out.value = acc;
  out.status = tr.status == OrbitTrace::Status::Completed
                   ? PixelStatus::OK
                   : PixelStatus::NearIndeterminacy;
  if (!std::isfinite(out.value)) out.status = PixelStatus::Diverged;
  return out;
}

}  // namespace

GreenResult green_potential(const RationalMap& f, const ProjPoint& p, int N,
                            double eps_ind) {
  if (N < 1) throw Error(Errc::InvalidArgument, "depth must be positive");
  require_green_preconditions(f);
  return potential_unchecked(f, p, N, eps_ind);
}

GreenField v_field(const RationalMap& f, const Slice& s, int N, int workers,
                   double eps_ind) {
  if (N < 1) throw Error(Errc::InvalidArgument, "depth must be positive");
  require_green_preconditions(f);
  GreenField g;
  g.slice = s;
  g.depth = N;
  g.v.assign(s.pixel_count(), 0.0);
  g.n_used.assign(s.pixel_count(), 0);
  g.status.assign(s.pixel_count(), PixelStatus::OK);
  parallel_rows(s.height, workers, [&](int j) {
    for (int i = 0; i < s.width; ++i) {
      int k = g.idx(i, j);
      try {
        GreenResult r = potential_unchecked(f, s.point(i, j), N, eps_ind);
        g.v[k] = r.value;
        g.n_used[k] = r.n_used;
        g.status[k] = r.status;
      } catch (const Error&) {
        g.v[k] = std::nan("");
        g.status[k] = PixelStatus::NearIndeterminacy;
      }
    }
  });
  return g;
}

namespace {

// v plus the Fubini-Study chart potential log||rep||; pluriharmonic off
// supp(T), hence harmonic along complex-line slices.
std::vector<double> corrected_potential(const GreenField& g) {
  std::vector<double> u(g.v.size(), std::nan(""));
  for (int j = 0; j < g.slice.height; ++j)
    for (int i = 0; i < g.slice.width; ++i) {
      int k = g.idx(i, j);
      if (g.status[k] != PixelStatus::OK) continue;
      u[k] = g.v[k] + std::log(vec_norm(g.slice.representative(i, j)));
    }
  return u;
}

std::vector<double> laplacian_magnitude(const GreenField& g,
                                        const std::vector<double>& u) {
  const int w = g.slice.width, h = g.slice.height;
  std::vector<double> lap(u.size(), std::nan(""));
  for (int j = 1; j + 1 < h; ++j)
    for (int i = 1; i + 1 < w; ++i) {
      int k = g.idx(i, j);
      double val = u[k + 1] + u[k - 1] + u[k - w] + u[k + w] - 4.0 * u[k];
      if (std::isfinite(val)) lap[k] = std::abs(val);
    }
  return lap;
}

}  // namespace

double auto_tau(const GreenField& g) {
  std::vector<double> u = corrected_potential(g);
  std::vector<double> lap = laplacian_magnitude(g, u);
  std::vector<double> vals;
  vals.reserve(lap.size());
  for (double x : lap)
    if (std::isfinite(x)) vals.push_back(x);
  if (vals.empty()) return 1e-12;
  // The support band is a thin minority of pixels, so a high quantile of
  // the magnitude distribution sits at the top of the harmonic-region
  // noise; 10x that clears it while staying far under kink magnitudes.
  std::sort(vals.begin(), vals.end());
  double floor_est = vals[(vals.size() * 9) / 10];
  return 10.0 * std::max(floor_est, 1e-14);
}

SuppMask laplacian_mask(const GreenField& g, double tau) {
  if (g.slice.width < 3 || g.slice.height < 3)
    throw Error(Errc::InvalidArgument, "mask needs a 3x3 interior");
  if (tau <= 0) tau = auto_tau(g);
  SuppMask m;
  m.slice = g.slice;
  m.tau = tau;
  std::vector<double> u = corrected_potential(g);
  m.lap = laplacian_magnitude(g, u);
  m.mask.assign(u.size(), 0);
  for (int j = 0; j < g.slice.height; ++j)
    for (int i = 0; i < g.slice.width; ++i) {
      int k = g.idx(i, j);
      if (g.status[k] != PixelStatus::OK) {
        m.mask[k] = 1;  // conservative
        continue;
      }
      if (!std::isfinite(m.lap[k])) {
        // Border pixels or a stencil touching a dead pixel.
        bool dead_near = false;
        for (int dj = -1; dj <= 1 && !dead_near; ++dj)
          for (int di = -1; di <= 1 && !dead_near; ++di) {
            int ii = i + di, jj = j + dj;
            if (ii < 0 || jj < 0 || ii >= g.slice.width || jj >= g.slice.height)
              continue;
            if (g.status[g.idx(ii, jj)] != PixelStatus::OK) dead_near = true;
          }
        m.mask[k] = dead_near ? 1 : 0;
        continue;
      }
      m.mask[k] = m.lap[k] > tau ? 1 : 0;
    }
  return m;
}

ChargeReport curve_charge_estimate(const RationalMap& f, const HPoly& curve,
                                   const Slice& s,
                                   std::vector<double> tube_radii, int N,
                                   double tau, int workers) {
  if (curve.is_zero())
    throw Error(Errc::InvalidArgument, "curve polynomial must be nonzero");
  for (size_t k = 1; k < tube_radii.size(); ++k)
    if (tube_radii[k] >= tube_radii[k - 1])
      throw Error(Errc::InvalidArgument, "tube radii must strictly decrease");
  GreenField g = v_field(f, s, N, workers);
  SuppMask m = laplacian_mask(g, tau);

  // First-order distance proxy |c| / |grad c| in parameter units.
  HPolyEval ce(curve);
  const int w = s.width, h = s.height;
  std::vector<cplx> c(s.pixel_count());
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) c[g.idx(i, j)] = ce(s.representative(i, j));
  double cmax = 0.0;
  for (const auto& x : c) cmax = std::max(cmax, std::abs(x));
  std::vector<double> dist(s.pixel_count(),
                           std::numeric_limits<double>::infinity());
  const double ds = s.ds() > 0 ? s.ds() : 1.0, dt = s.dt() > 0 ? s.dt() : 1.0;
  for (int j = 1; j + 1 < h; ++j)
    for (int i = 1; i + 1 < w; ++i) {
      int k = g.idx(i, j);
      double gx = std::abs(c[k + 1] - c[k - 1]) / (2 * ds);
      double gy = std::abs(c[k + w] - c[k - w]) / (2 * dt);
      double grad = std::max(gx, gy);
      if (grad < 1e-12 * std::max(1.0, cmax)) continue;  // curve flat here
      dist[k] = std::abs(c[k]) / grad;
    }

  ChargeReport rep;
  rep.radii = tube_radii;
  rep.tau = m.tau;
  bool any_hit = false;
  for (double r : tube_radii) {
    double mass = 0.0;
    for (int j = 1; j + 1 < h; ++j)
      for (int i = 1; i + 1 < w; ++i) {
        int k = g.idx(i, j);
        if (dist[k] > r) continue;
        any_hit = true;
        if (std::isfinite(m.lap[k])) mass += m.lap[k] * ds * dt;
      }
    rep.masses.push_back(mass);
  }
  rep.curve_misses_window = !any_hit;
  return rep;
}

}  // namespace projdyn
