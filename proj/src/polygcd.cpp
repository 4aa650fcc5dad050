#include <algorithm>
#include <vector>

#include "projdyn/error.hpp"
#include "projdyn/hpoly.hpp"

// Multivariate GCD by recursive content/primitive-part Euclid. Inputs are
// homogeneous, so after stripping the common monomial factor the problem
// dehomogenizes faithfully (z -> 1) to a bivariate gcd over Q(i)[x,y],
// handled as polynomials in y with univariate contents in x.

namespace projdyn {

namespace {

// Dense univariate polynomial over GaussRat, ascending powers.
using UPoly = std::vector<GaussRat>;

void utrim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  utrim(r);
  return r;
}

UPoly usub(const UPoly& a, const UPoly& b) {
  UPoly r = a;
  if (b.size() > r.size()) r.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  utrim(r);
  return r;
}

// Remainder of a by b over the field Q(i); b nonzero.
UPoly urem(UPoly a, const UPoly& b) {
  utrim(a);
  while (udeg(a) >= udeg(b)) {
    GaussRat q = a.back() / b.back();
    int shift = udeg(a) - udeg(b);
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
    a.pop_back();
    utrim(a);
    if (a.empty()) break;
  }
  return a;
}

UPoly umonic(UPoly a) {
  utrim(a);
  if (a.empty()) return a;
  GaussRat inv = a.back().inverse();
  for (auto& c : a) c *= inv;
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  utrim(a);
  utrim(b);
  while (!b.empty()) {
    UPoly r = urem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return umonic(a);
}

// Exact quotient a/b; remainder must vanish.
UPoly udivexact(UPoly a, const UPoly& b) {
  utrim(a);
  if (a.empty()) return {};
  if (b.empty() || udeg(a) < udeg(b))
    throw Error(Errc::InvalidArgument, "inexact univariate division");
  UPoly q(a.size() - b.size() + 1);
  while (!a.empty() && udeg(a) >= udeg(b)) {
    GaussRat c = a.back() / b.back();
    int shift = udeg(a) - udeg(b);
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    utrim(a);
  }
  if (!a.empty())
    throw Error(Errc::InvalidArgument, "inexact univariate division");
  utrim(q);
  return q;
}

// Polynomial in y with coefficients in Q(i)[x], ascending in y.
using YPoly = std::vector<UPoly>;

void ytrim(YPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

int ydeg(const YPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly ycontent(const YPoly& p) {
  UPoly g;
  for (const auto& c : p)
    if (!c.empty()) g = g.empty() ? umonic(c) : ugcd(g, c);
  return g;
}

YPoly ydiv_content(const YPoly& p, const UPoly& cont) {
  YPoly r(p.size());
  for (size_t i = 0; i < p.size(); ++i)
    if (!p[i].empty()) r[i] = udivexact(p[i], cont);
  return r;
}

YPoly yprimitive(const YPoly& p) {
  UPoly c = ycontent(p);
  if (c.empty()) return {};
  return ydiv_content(p, c);
}

YPoly ymul_u(const YPoly& p, const UPoly& u) {
  YPoly r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = umul(p[i], u);
  ytrim(r);
  return r;
}

YPoly ysub(YPoly a, const YPoly& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] = usub(a[i], b[i]);
  ytrim(a);
  return a;
}

// Pseudo-remainder of A by B (deg A >= deg B >= 0, B nonzero).
YPoly yprem(YPoly A, const YPoly& B) {
  const UPoly& d = B.back();
  ytrim(A);
  while (!A.empty() && ydeg(A) >= ydeg(B)) {
    UPoly t = A.back();
    int shift = ydeg(A) - ydeg(B);
    YPoly scaled = ymul_u(A, d);
    YPoly sub(B.size() + shift);
    for (size_t i = 0; i < B.size(); ++i) sub[i + shift] = umul(B[i], t);
    A = ysub(std::move(scaled), sub);
    if (ydeg(A) >= ydeg(B) + shift)
      throw Error(Errc::InvalidArgument, "pseudo-division failed to reduce degree");
  }
  return A;
}

// gcd up to a unit; primitive PRS with content handling.
YPoly ygcd(YPoly A, YPoly B) {
  ytrim(A);
  ytrim(B);
  if (A.empty()) return B;
  if (B.empty()) return A;
  UPoly cA = ycontent(A), cB = ycontent(B);
  UPoly c = ugcd(cA, cB);
  A = ydiv_content(A, cA);
  B = ydiv_content(B, cB);
  if (ydeg(A) < ydeg(B)) std::swap(A, B);
  while (ydeg(B) > 0) {
    YPoly R = yprem(A, B);
    ytrim(R);
    if (R.empty()) return ymul_u(B, c);
    A = std::move(B);
    B = yprimitive(R);
    if (ydeg(A) < ydeg(B)) std::swap(A, B);
  }
  // B is a nonzero constant in y; primitive A shares no x-factor with it.
  return YPoly{c};
}

// Strip per-variable minimal exponents; the removed monomial is returned.
HPoly strip_monomial(const HPoly& p, Exps& removed) {
  removed = {p.min_exp(0), p.min_exp(1), p.min_exp(2)};
  if (removed == Exps{0, 0, 0}) return p;
  std::vector<Monomial> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms())
    out.push_back({t.coeff,
                   {t.exps[0] - removed[0], t.exps[1] - removed[1],
                    t.exps[2] - removed[2]}});
  return HPoly::from_terms(std::move(out));
}

// p must be free of z as a factor; z -> 1.
YPoly dehomogenize(const HPoly& p) {
  YPoly r;
  for (const auto& t : p.terms()) {
    int a = t.exps[0], b = t.exps[1];
    if (b >= static_cast<int>(r.size())) r.resize(b + 1);
    if (a >= static_cast<int>(r[b].size())) r[b].resize(a + 1);
    r[b][a] += t.coeff;
  }
  for (auto& c : r) utrim(c);
  ytrim(r);
  return r;
}

HPoly homogenize(const YPoly& p) {
  int total = -1;
  for (size_t b = 0; b < p.size(); ++b)
    for (size_t a = 0; a < p[b].size(); ++a)
      if (!p[b][a].is_zero())
        total = std::max(total, static_cast<int>(a + b));
  if (total < 0) return HPoly();
  std::vector<Monomial> out;
  for (size_t b = 0; b < p.size(); ++b)
    for (size_t a = 0; a < p[b].size(); ++a)
      if (!p[b][a].is_zero())
        out.push_back({p[b][a],
                       {static_cast<int>(a), static_cast<int>(b),
                        total - static_cast<int>(a + b)}});
  return HPoly::from_terms(std::move(out));
}

HPoly monic(const HPoly& p) {
  if (p.is_zero()) return p;
  return hp_scale(p.leading().coeff.inverse(), p);
}

}  // namespace

HPoly hp_gcd(const HPoly& p, const HPoly& q) {
  if (p.is_zero() && q.is_zero()) return HPoly();
  if (p.is_zero()) return monic(q);
  if (q.is_zero()) return monic(p);

  Exps mp, mq;
  HPoly ps = strip_monomial(p, mp);
  HPoly qs = strip_monomial(q, mq);
  Exps cm{std::min(mp[0], mq[0]), std::min(mp[1], mq[1]), std::min(mp[2], mq[2])};
  HPoly g_mono = HPoly::monomial(GaussRat(1), cm[0], cm[1], cm[2]);

  if (ps.is_constant() || qs.is_constant()) return g_mono;

  YPoly g_bi = ygcd(dehomogenize(ps), dehomogenize(qs));
  HPoly g = homogenize(g_bi);
  return monic(hp_mul(g_mono, g));
}

}  // namespace projdyn
