#pragma once

#include <array>
#include <string>
#include <utility>

#include "projdyn/projpoint.hpp"

namespace projdyn {

// Rasterization domain: a two-real-parameter family of projective points.
//   Chart / Plane: (s,t) -> base + s*dir1 + t*dir2   (real parameters)
//   Line:          (s,t) -> base + (s + i t)*dir1    (one complex parameter)
// The window [s0,s1]x[t0,t1] is the span of pixel centers (endpoint
// convention), so corner pixels land exactly on the window corners.
struct Slice {
  enum class Kind { Chart, Plane, Line };

  Kind kind = Kind::Chart;
  int chart = 2;  // which coordinate is fixed to 1 (Chart only)
  Vec3c base{cplx(0, 0), cplx(0, 0), cplx(1, 0)};
  Vec3c dir1{cplx(1, 0), cplx(0, 0), cplx(0, 0)};
  Vec3c dir2{cplx(0, 0), cplx(1, 0), cplx(0, 0)};
  double s0 = -2, s1 = 2, t0 = -2, t1 = 2;
  int width = 128, height = 128;

  static Slice chart_plane(int chart, double s0, double s1, double t0,
                           double t1, int w, int h);
  static Slice affine_plane(const Vec3c& base, const Vec3c& d1, const Vec3c& d2,
                            double s0, double s1, double t0, double t1, int w,
                            int h);
  static Slice complex_line(const Vec3c& base, const Vec3c& dir, double s0,
                            double s1, double t0, double t1, int w, int h);

  std::pair<double, double> param(int i, int j) const;
  // Unnormalized embedding of the pixel-center parameter.
  Vec3c representative(int i, int j) const;
  ProjPoint point(int i, int j) const;

  double ds() const { return width > 1 ? (s1 - s0) / (width - 1) : 0.0; }
  double dt() const { return height > 1 ? (t1 - t0) / (height - 1) : 0.0; }
  int pixel_count() const { return width * height; }

  std::string str() const;
};

// Sub-window of a slice covering the given pixel-center parameter range,
// re-rastered at the given resolution.
Slice sub_window(const Slice& s, double s0, double s1, double t0, double t1,
                 int w, int h);

// Orthonormal in-slice tangent directions at p (for perturbation rings).
std::array<Vec3c, 2> tangent_frame(const Slice& s, const ProjPoint& p);

}  // namespace projdyn
