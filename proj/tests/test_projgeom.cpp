#include <cmath>
#include <vector>

#include "doctest.h"
#include "projdyn/error.hpp"
#include "projdyn/projpoint.hpp"
#include "projdyn/rng.hpp"
#include "projdyn/slice.hpp"

using namespace projdyn;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("normalize_point basics") {
  ProjPoint p = ProjPoint::normalize({cplx(2, 0), cplx(0, 0), cplx(0, 0)});
  CHECK(std::abs(p.coords()[0] - cplx(1, 0)) < 1e-15);
  ProjPoint q = ProjPoint::normalize({cplx(0, 0), cplx(0, 3), cplx(0, 0)});
  CHECK(std::abs(q.coords()[1] - cplx(1, 0)) < 1e-15);  // phase convention
  ProjPoint r = ProjPoint::normalize({cplx(1, 0), cplx(1, 0), cplx(1, 0)});
  CHECK(std::abs(r.coords()[0] - cplx(1 / std::sqrt(3.0), 0)) < 1e-15);
  CHECK_THROWS_AS(ProjPoint::normalize({cplx(0, 0), cplx(0, 0), cplx(0, 0)}), Error);
}

TEST_CASE("normalize is idempotent") {
  SplitMix64 rng(42);
  for (int i = 0; i < 200; ++i) {
    Vec3c w{cplx(rng.normal(), rng.normal()), cplx(rng.normal(), rng.normal()),
            cplx(rng.normal(), rng.normal())};
    if (vec_norm(w) < 1e-6) continue;
    ProjPoint p = ProjPoint::normalize(w);
    ProjPoint q = ProjPoint::normalize(p.coords());
    CHECK(fs_distance(p, q) < 1e-14);
    CHECK(std::abs(vec_norm(p.coords()) - 1.0) < 1e-13);
  }
}

TEST_CASE("fs_distance metric behaviour") {
  ProjPoint e0 = ProjPoint::of(1, 0, 0), e1 = ProjPoint::of(0, 1, 0);
  CHECK(fs_distance(e0, e0) == 0.0);
  CHECK(std::abs(fs_distance(e0, e1) - kPi / 2) < 1e-15);
  SplitMix64 rng(43);
  for (int i = 0; i < 300; ++i) {
    auto rnd = [&] {
      return ProjPoint::normalize({cplx(rng.normal(), rng.normal()),
                                   cplx(rng.normal(), rng.normal()),
                                   cplx(rng.normal(), rng.normal())});
    };
    ProjPoint a = rnd(), b = rnd(), c = rnd();
    double ab = fs_distance(a, b), bc = fs_distance(b, c), ac = fs_distance(a, c);
    CHECK(ab == fs_distance(b, a));
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(ab <= kPi / 2 + 1e-15);
    // Invariance under unit scalars on either argument.
    double phi = rng.uniform(0, 2 * kPi);
    cplx u(std::cos(phi), std::sin(phi));
    ProjPoint a2 = ProjPoint::normalize({u * a.coords()[0], u * a.coords()[1],
                                         u * a.coords()[2]});
    CHECK(std::abs(fs_distance(a2, b) - ab) < 1e-12);
  }
}

TEST_CASE("slice_to_point chart embedding") {
  Slice s = Slice::chart_plane(2, -1, 1, -1, 1, 3, 3);
  // center pixel -> [0:0:1]
  ProjPoint c = s.point(1, 1);
  CHECK(fs_distance(c, ProjPoint::of(0, 0, 1)) < 1e-14);
  // corner pixels land exactly on the window corners
  auto [s00, t00] = s.param(0, 0);
  CHECK(s00 == -1.0);
  CHECK(t00 == -1.0);
  auto [s22, t22] = s.param(2, 2);
  CHECK(s22 == 1.0);
  CHECK(t22 == 1.0);
  ProjPoint p = s.point(2, 1);  // parameter (1, 0) -> [1:0:1]/sqrt(2)
  CHECK(fs_distance(p, ProjPoint::of(1, 0, 1)) < 1e-14);
}

TEST_CASE("slice injectivity on a chart window") {
  Slice s = Slice::chart_plane(2, -2, 2, -2, 2, 17, 17);
  std::vector<ProjPoint> pts;
  for (int j = 0; j < s.height; ++j)
    for (int i = 0; i < s.width; ++i) pts.push_back(s.point(i, j));
  for (size_t a = 0; a < pts.size(); ++a)
    for (size_t b = a + 1; b < pts.size(); ++b)
      CHECK(fs_distance(pts[a], pts[b]) > 1e-6);
}

TEST_CASE("complex line slice embedding") {
  Vec3c base{cplx(0, 0), cplx(0.5, 0), cplx(1, 0)};
  Vec3c dir{cplx(1, 0), cplx(0, 0), cplx(0, 0)};
  Slice s = Slice::complex_line(base, dir, -2, 2, -2, 2, 5, 5);
  // pixel (4, 2): parameter (2, 0) -> x = 2
  ProjPoint p = s.point(4, 2);
  CHECK(fs_distance(p, ProjPoint::normalize({cplx(2, 0), cplx(0.5, 0), cplx(1, 0)})) < 1e-14);
  // pixel (2, 4): parameter (0, 2) -> x = 2i
  ProjPoint q = s.point(2, 4);
  CHECK(fs_distance(q, ProjPoint::normalize({cplx(0, 2), cplx(0.5, 0), cplx(1, 0)})) < 1e-14);
}

TEST_CASE("tangent frames are orthonormal and tangent") {
  SplitMix64 rng(7);
  Slice chart = Slice::chart_plane(2, -2, 2, -2, 2, 9, 9);
  Vec3c base{cplx(0, 0), cplx(0.5, 0), cplx(1, 0)};
  Slice line = Slice::complex_line(base, {cplx(1, 0), cplx(0, 0), cplx(0, 0)},
                                   -2, 2, -2, 2, 9, 9);
  for (const Slice& s : {chart, line}) {
    for (int it = 0; it < 40; ++it) {
      int i = static_cast<int>(rng.below(9)), j = static_cast<int>(rng.below(9));
      ProjPoint p = s.point(i, j);
      auto [u1, u2] = tangent_frame(s, p);
      CHECK(std::abs(vec_norm(u1) - 1.0) < 1e-12);
      CHECK(std::abs(vec_norm(u2) - 1.0) < 1e-12);
      CHECK(std::abs(vec_inner(u1, p.coords())) < 1e-12);
      CHECK(std::abs(vec_inner(u2, p.coords())) < 1e-12);
      CHECK(std::abs(vec_inner(u1, u2).real()) < 1e-12);
    }
  }
}

TEST_CASE("invalid slices are rejected") {
  CHECK_THROWS_AS(Slice::chart_plane(3, 0, 1, 0, 1, 4, 4), Error);
  CHECK_THROWS_AS(Slice::chart_plane(2, 0, 1, 0, 1, 0, 4), Error);
  Vec3c d{cplx(1, 0), cplx(0, 0), cplx(0, 0)};
  CHECK_THROWS_AS(Slice::affine_plane({cplx(0, 0), cplx(0, 0), cplx(1, 0)}, d, d,
                                      0, 1, 0, 1, 4, 4),
                  Error);
}
