#include "projdyn/projpoint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "projdyn/error.hpp"

namespace projdyn {

double vec_norm(const Vec3c& w) {
  return std::sqrt(std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]));
}

cplx vec_inner(const Vec3c& a, const Vec3c& b) {
  return a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]) + a[2] * std::conj(b[2]);
}

ProjPoint ProjPoint::normalize(const Vec3c& w) {
  double n = vec_norm(w);
  if (!(n > 1e-150) || !std::isfinite(n))
    throw Error(Errc::NotAPoint, "cannot normalize the zero vector");
  Vec3c u{w[0] / n, w[1] / n, w[2] / n};
  // Phase convention: first coordinate above the noise floor made real >= 0.
  for (int i = 0; i < 3; ++i) {
    double m = std::abs(u[i]);
    if (m > 1e-13) {
      cplx phase = std::conj(u[i]) / m;
      for (auto& c : u) c *= phase;
      u[i] = cplx(std::abs(u[i]), 0.0);
      break;
    }
  }
  ProjPoint p;
  p.w_ = u;
  return p;
}

std::string ProjPoint::str() const {
  char buf[160];
  auto one = [&](const cplx& c) {
    char b[48];
    if (std::abs(c.imag()) < 5e-13) {
      std::snprintf(b, sizeof b, "%.6g", c.real() + 0.0);
    } else {
      std::snprintf(b, sizeof b, "%.6g%+.6gi", c.real() + 0.0, c.imag());
    }
    return std::string(b);
  };
  std::snprintf(buf, sizeof buf, "[%s : %s : %s]", one(w_[0]).c_str(),
                one(w_[1]).c_str(), one(w_[2]).c_str());
  return buf;
}

double fs_distance(const ProjPoint& p, const ProjPoint& q) {
  // atan2 of the orthogonal residual: numerically sound at both ends of
  // [0, pi/2], unlike acos|<p,q>| which cannot resolve below ~1e-8.
  // Averaging the two one-sided residuals keeps the result bit-symmetric.
  if (p.coords() == q.coords()) return 0.0;
  cplx c = vec_inner(p.coords(), q.coords());
  Vec3c r1, r2;
  cplx cb = std::conj(c);
  for (int i = 0; i < 3; ++i) {
    r1[i] = p.coords()[i] - c * q.coords()[i];
    r2[i] = q.coords()[i] - cb * p.coords()[i];
  }
  double s = 0.5 * (vec_norm(r1) + vec_norm(r2));
  return std::atan2(s, std::abs(c));
}

}  // namespace projdyn
