#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace projdyn {

// Exact Gaussian rational a + b*i. Components are GMP rationals kept
// canonical (lowest terms, positive denominator) by mpq arithmetic.
class GaussRat {
 public:
  GaussRat() : re_(0), im_(0) {}
  GaussRat(long n) : re_(n), im_(0) {}  // NOLINT: implicit by design
  GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit GaussRat(mpq_class re) : re_(std::move(re)), im_(0) {}

  static GaussRat ratio(long num, long den);
  static GaussRat imag_unit() { return GaussRat(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussRat conj() const { return GaussRat(re_, -im_); }
  // |q|^2 as an exact rational.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }
  GaussRat inverse() const;

  GaussRat operator-() const { return GaussRat(-re_, -im_); }
  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  std::complex<double> to_complex() const {
    return {re_.get_d(), im_.get_d()};
  }

  // Canonical text form: "3", "-1/2", "2*i", "(1/2-3/4*i)".
  std::string str() const;

 private:
  mpq_class re_, im_;
};

}  // namespace projdyn
