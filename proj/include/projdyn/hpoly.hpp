#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projdyn/gaussrat.hpp"

namespace projdyn {

using cplx = std::complex<double>;
using Vec3c = std::array<cplx, 3>;

// Exponent triple (a,b,c) for x^a y^b z^c.
using Exps = std::array<int, 3>;

inline int exps_degree(const Exps& e) { return e[0] + e[1] + e[2]; }

// Graded-lex with x > y > z: higher total degree first, ties broken
// lexicographically on (a,b,c). Returns true when a precedes b.
bool graded_lex_before(const Exps& a, const Exps& b);

struct Monomial {
  GaussRat coeff;  // nonzero in any normalized polynomial
  Exps exps{0, 0, 0};
};

// Homogeneous polynomial in x,y,z over the Gaussian rationals.
// Terms are stored in descending graded-lex order with no duplicates and
// no zero coefficients. The zero polynomial has an empty term list and
// degree() == -1.
class HPoly {
 public:
  HPoly() = default;

  // Combines duplicates, drops zeros, checks all terms share one degree.
  static HPoly from_terms(std::vector<Monomial> terms);
  static HPoly constant(GaussRat c);
  static HPoly monomial(GaussRat c, int a, int b, int d);
  static HPoly variable(int axis);  // 0 = x, 1 = y, 2 = z

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || degree_ == 0; }
  // -1 for the zero polynomial (degree undefined).
  int degree() const { return degree_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  const Monomial& leading() const { return terms_.front(); }

  // Smallest exponent of the given variable over all terms (0 for zero poly).
  int min_exp(int axis) const;
  int max_exp(int axis) const;

  bool operator==(const HPoly& o) const;
  bool operator!=(const HPoly& o) const { return !(*this == o); }

  std::string str() const;  // canonical text form, graded-lex term order

 private:
  std::vector<Monomial> terms_;
  int degree_ = -1;
  friend HPoly hp_normalize(std::vector<Monomial>&& terms);
};

// Arithmetic. Addition requires matching degrees (or a zero operand).
HPoly hp_add(const HPoly& p, const HPoly& q);
HPoly hp_sub(const HPoly& p, const HPoly& q);
HPoly hp_neg(const HPoly& p);
HPoly hp_mul(const HPoly& p, const HPoly& q);
HPoly hp_scale(const GaussRat& c, const HPoly& p);
HPoly hp_pow(const HPoly& p, int k);

// p(F0,F1,F2); all F_i must share one degree (throws InvalidLift).
HPoly hp_compose(const HPoly& p, const std::array<HPoly, 3>& F);

// Partial derivative with respect to one variable.
HPoly hp_derivative(const HPoly& p, int axis);

// Floating evaluation with exact coefficients converted once per call.
cplx hp_eval(const HPoly& p, const Vec3c& w);

// Exact quotient p/d, or nullopt when d does not divide p.
std::optional<HPoly> hp_divexact(const HPoly& p, const HPoly& d);

// Monic-normalized greatest common divisor (leading graded-lex coeff 1).
// gcd(p, 0) = monic(p); gcd(0, 0) = 0.
HPoly hp_gcd(const HPoly& p, const HPoly& q);

// Sylvester resultant with respect to one variable, eliminated by
// fraction-free (Bareiss) row reduction. Degrees in `var` are the actual
// ones; a poly of var-degree 0 follows the classical convention
// Res(p, c) = c^deg_var(p), and Res = 1 when both are var-free.
HPoly hp_resultant(const HPoly& p, const HPoly& q, int var);

// Determinant of the Jacobian matrix of a lift triple; identically zero
// exactly for non-dominant maps.
HPoly hp_jacobian_det(const std::array<HPoly, 3>& F);

// Compiled evaluator: coefficients narrowed to complex<double> once.
// Safe to share across threads after construction.
class HPolyEval {
 public:
  HPolyEval() = default;
  explicit HPolyEval(const HPoly& p);
  cplx operator()(const Vec3c& w) const;

 private:
  struct Term {
    cplx c;
    int a, b, d;
  };
  std::vector<Term> terms_;
  int degree_ = -1;
};

}  // namespace projdyn
