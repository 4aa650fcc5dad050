#include "projdyn/slice.hpp"

#include <cmath>
#include <cstdio>

#include "projdyn/error.hpp"

namespace projdyn {

namespace {

Vec3c unit_axis(int k) {
  Vec3c v{cplx(0, 0), cplx(0, 0), cplx(0, 0)};
  v.at(k) = cplx(1, 0);
  return v;
}

Vec3c axpy(const Vec3c& a, const cplx& c, const Vec3c& d) {
  return {a[0] + c * d[0], a[1] + c * d[1], a[2] + c * d[2]};
}

}  // namespace

Slice Slice::chart_plane(int chart, double s0, double s1, double t0, double t1,
                         int w, int h) {
  if (chart < 0 || chart > 2)
    throw Error(Errc::InvalidArgument, "chart index must be 0, 1 or 2");
  if (w < 1 || h < 1) throw Error(Errc::InvalidArgument, "resolution must be positive");
  Slice s;
  s.kind = Kind::Chart;
  s.chart = chart;
  s.base = unit_axis(chart);
  // Affine coordinates in lexicographic order of the free axes.
  int free[2], n = 0;
  for (int k = 0; k < 3; ++k)
    if (k != chart) free[n++] = k;
  s.dir1 = unit_axis(free[0]);
  s.dir2 = unit_axis(free[1]);
  s.s0 = s0; s.s1 = s1; s.t0 = t0; s.t1 = t1;
  s.width = w; s.height = h;
  return s;
}

Slice Slice::affine_plane(const Vec3c& base, const Vec3c& d1, const Vec3c& d2,
                          double s0, double s1, double t0, double t1, int w,
                          int h) {
  if (w < 1 || h < 1) throw Error(Errc::InvalidArgument, "resolution must be positive");
  if (vec_norm(d1) < 1e-12 || vec_norm(d2) < 1e-12)
    throw Error(Errc::InvalidArgument, "slice directions must be nonzero");
  cplx ip = vec_inner(d1, d2);
  if (std::abs(ip) > (1.0 - 1e-9) * vec_norm(d1) * vec_norm(d2))
    throw Error(Errc::InvalidArgument, "slice directions must be independent");
  Slice s;
  s.kind = Kind::Plane;
  s.base = base; s.dir1 = d1; s.dir2 = d2;
  s.s0 = s0; s.s1 = s1; s.t0 = t0; s.t1 = t1;
  s.width = w; s.height = h;
  return s;
}

Slice Slice::complex_line(const Vec3c& base, const Vec3c& dir, double s0,
                          double s1, double t0, double t1, int w, int h) {
  if (w < 1 || h < 1) throw Error(Errc::InvalidArgument, "resolution must be positive");
  if (vec_norm(dir) < 1e-12)
    throw Error(Errc::InvalidArgument, "line direction must be nonzero");
  Slice s;
  s.kind = Kind::Line;
  s.base = base; s.dir1 = dir; s.dir2 = Vec3c{};
  s.s0 = s0; s.s1 = s1; s.t0 = t0; s.t1 = t1;
  s.width = w; s.height = h;
  return s;
}

std::pair<double, double> Slice::param(int i, int j) const {
  double s = width > 1 ? s0 + i * (s1 - s0) / (width - 1) : 0.5 * (s0 + s1);
  double t = height > 1 ? t0 + j * (t1 - t0) / (height - 1) : 0.5 * (t0 + t1);
  return {s, t};
}

Vec3c Slice::representative(int i, int j) const {
  auto [s, t] = param(i, j);
  if (kind == Kind::Line) return axpy(base, cplx(s, t), dir1);
  return axpy(axpy(base, cplx(s, 0), dir1), cplx(t, 0), dir2);
}

ProjPoint Slice::point(int i, int j) const {
  return ProjPoint::normalize(representative(i, j));
}

std::string Slice::str() const {
  char buf[256];
  const char* names[3] = {"x", "y", "z"};
  if (kind == Kind::Chart) {
    std::snprintf(buf, sizeof buf,
                  "chart %s=1 window [%g,%g]x[%g,%g] res %dx%d", names[chart],
                  s0, s1, t0, t1, width, height);
  } else if (kind == Kind::Line) {
    std::snprintf(buf, sizeof buf,
                  "line base (%g%+gi,%g%+gi,%g%+gi) dir (%g%+gi,%g%+gi,%g%+gi) "
                  "window [%g,%g]x[%g,%g] res %dx%d",
                  base[0].real(), base[0].imag(), base[1].real(), base[1].imag(),
                  base[2].real(), base[2].imag(), dir1[0].real(), dir1[0].imag(),
                  dir1[1].real(), dir1[1].imag(), dir1[2].real(), dir1[2].imag(),
                  s0, s1, t0, t1, width, height);
  } else {
    std::snprintf(buf, sizeof buf,
                  "plane window [%g,%g]x[%g,%g] res %dx%d", s0, s1, t0, t1,
                  width, height);
  }
  return buf;
}

Slice sub_window(const Slice& s, double s0, double s1, double t0, double t1,
                 int w, int h) {
  Slice out = s;
  out.s0 = s0; out.s1 = s1; out.t0 = t0; out.t1 = t1;
  out.width = w; out.height = h;
  return out;
}

namespace {

Vec3c project_out(const Vec3c& v, const Vec3c& u) {
  cplx c = vec_inner(v, u);
  return {v[0] - c * u[0], v[1] - c * u[1], v[2] - c * u[2]};
}

Vec3c normalized_or_zero(const Vec3c& v) {
  double n = vec_norm(v);
  if (n < 1e-12) return Vec3c{};
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

std::array<Vec3c, 2> tangent_frame(const Slice& s, const ProjPoint& p) {
  const Vec3c& w = p.coords();
  if (s.kind == Slice::Kind::Line) {
    Vec3c u1 = normalized_or_zero(project_out(s.dir1, w));
    if (vec_norm(u1) < 0.5) {
      // Degenerate at the line's own projective point; fall back to any
      // tangent direction.
      for (int k = 0; k < 3; ++k) {
        u1 = normalized_or_zero(project_out(unit_axis(k), w));
        if (vec_norm(u1) > 0.5) break;
      }
    }
    Vec3c u2{cplx(0, 1) * u1[0], cplx(0, 1) * u1[1], cplx(0, 1) * u1[2]};
    return {u1, u2};
  }
  Vec3c u1 = normalized_or_zero(project_out(s.dir1, w));
  if (vec_norm(u1) < 0.5) {
    // Degenerate against p; fall back to a coordinate frame.
    std::array<Vec3c, 2> out;
    int n = 0;
    for (int k = 0; k < 3 && n < 2; ++k) {
      Vec3c c = project_out(unit_axis(k), w);
      if (n == 1) c = project_out(c, out[0]);
      c = normalized_or_zero(c);
      if (vec_norm(c) > 0.5) out[n++] = c;
    }
    return out;
  }
  // Real Gram-Schmidt within the tangent space: the slice's parameters are
  // real, so only the real component along u1 may be removed, or the frame
  // would leave the slice's own 2-plane.
  Vec3c v = project_out(s.dir2, w);
  double c = vec_inner(v, u1).real();
  for (int i = 0; i < 3; ++i) v[i] -= c * u1[i];
  Vec3c u2 = normalized_or_zero(v);
  if (vec_norm(u2) < 0.5) {
    // Projectively degenerate plane; circle the complex line instead.
    u2 = {cplx(0, 1) * u1[0], cplx(0, 1) * u1[1], cplx(0, 1) * u1[2]};
  }
  return {u1, u2};
}

}  // namespace projdyn
