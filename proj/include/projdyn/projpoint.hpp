#pragma once

#include <array>
#include <complex>
#include <string>

#include "projdyn/hpoly.hpp"

namespace projdyn {

double vec_norm(const Vec3c& w);
cplx vec_inner(const Vec3c& a, const Vec3c& b);  // sum a_i * conj(b_i)

// Point of the projective plane stored as a canonical unit representative:
// Euclidean norm 1, first nonzero coordinate rotated to non-negative real.
class ProjPoint {
 public:
  ProjPoint() : w_{cplx(1, 0), cplx(0, 0), cplx(0, 0)} {}
  // Throws NotAPoint for the zero vector.
  static ProjPoint normalize(const Vec3c& w);
  static ProjPoint of(double a, double b, double c) {
    return normalize({cplx(a, 0), cplx(b, 0), cplx(c, 0)});
  }

  const Vec3c& coords() const { return w_; }
  std::string str() const;  // "[re+imi : ... : ...]"

 private:
  Vec3c w_;
};

// Fubini-Study distance arccos|<p,q>| in [0, pi/2].
double fs_distance(const ProjPoint& p, const ProjPoint& q);

}  // namespace projdyn
