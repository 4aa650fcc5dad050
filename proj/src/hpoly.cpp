#include "projdyn/hpoly.hpp"

#include <algorithm>
#include <map>

#include "projdyn/error.hpp"

namespace projdyn {

HPoly hp_normalize(std::vector<Monomial>&& terms);

bool graded_lex_before(const Exps& a, const Exps& b) {
  int da = exps_degree(a), db = exps_degree(b);
  if (da != db) return da > db;
  if (a[0] != b[0]) return a[0] > b[0];
  if (a[1] != b[1]) return a[1] > b[1];
  return a[2] > b[2];
}

namespace {

struct ExpsBefore {
  bool operator()(const Exps& a, const Exps& b) const {
    return graded_lex_before(a, b);
  }
};

using TermMap = std::map<Exps, GaussRat, ExpsBefore>;

HPoly from_map(TermMap&& m) {
  std::vector<Monomial> out;
  out.reserve(m.size());
  for (auto& [e, c] : m)
    if (!c.is_zero()) out.push_back({std::move(c), e});
  return hp_normalize(std::move(out));
}

void add_into(TermMap& m, const Exps& e, const GaussRat& c) {
  auto [it, inserted] = m.emplace(e, c);
  if (!inserted) it->second += c;
}

}  // namespace

HPoly hp_normalize(std::vector<Monomial>&& terms) {
  // terms: sorted, unique exponents, nonzero coefficients.
  HPoly p;
  if (terms.empty()) return p;
  int d = exps_degree(terms.front().exps);
  for (const auto& t : terms) {
    if (exps_degree(t.exps) != d)
      throw Error(Errc::InvalidLift, "terms of mixed total degree");
  }
  p.terms_ = std::move(terms);
  p.degree_ = d;
  return p;
}

HPoly HPoly::from_terms(std::vector<Monomial> terms) {
  TermMap m;
  for (auto& t : terms) add_into(m, t.exps, t.coeff);
  return from_map(std::move(m));
}

HPoly HPoly::constant(GaussRat c) {
  if (c.is_zero()) return HPoly();
  return hp_normalize({{std::move(c), {0, 0, 0}}});
}

HPoly HPoly::monomial(GaussRat c, int a, int b, int d) {
  if (a < 0 || b < 0 || d < 0)
    throw Error(Errc::InvalidArgument, "negative exponent");
  if (c.is_zero()) return HPoly();
  return hp_normalize({{std::move(c), {a, b, d}}});
}

HPoly HPoly::variable(int axis) {
  Exps e{0, 0, 0};
  e.at(axis) = 1;
  return hp_normalize({{GaussRat(1), e}});
}

int HPoly::min_exp(int axis) const {
  int m = 0;
  bool first = true;
  for (const auto& t : terms_) {
    int e = t.exps.at(axis);
    if (first || e < m) m = e;
    first = false;
  }
  return m;
}

int HPoly::max_exp(int axis) const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.exps.at(axis));
  return m;
}

bool HPoly::operator==(const HPoly& o) const {
  if (degree_ != o.degree_ || terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exps != o.terms_[i].exps) return false;
    if (terms_[i].coeff != o.terms_[i].coeff) return false;
  }
  return true;
}

std::string HPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string cs = t.coeff.str();
    bool neg = !cs.empty() && cs[0] == '-' && cs.find('(') == std::string::npos;
    if (first) {
      first = false;
    } else if (neg) {
      out += " - ";
      cs = cs.substr(1);
    } else {
      out += " + ";
    }
    std::string mono;
    static const char* names[3] = {"x", "y", "z"};
    for (int v = 0; v < 3; ++v) {
      int e = t.exps[v];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += mono;
    } else if (cs == "-1") {
      out += "-" + mono;
    } else {
      out += cs + "*" + mono;
    }
  }
  return out;
}

HPoly hp_add(const HPoly& p, const HPoly& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  if (p.degree() != q.degree())
    throw Error(Errc::InvalidArgument, "adding polynomials of unequal degree");
  TermMap m;
  for (const auto& t : p.terms()) add_into(m, t.exps, t.coeff);
  for (const auto& t : q.terms()) add_into(m, t.exps, t.coeff);
  return from_map(std::move(m));
}

HPoly hp_neg(const HPoly& p) { return hp_scale(GaussRat(-1), p); }

HPoly hp_sub(const HPoly& p, const HPoly& q) { return hp_add(p, hp_neg(q)); }

HPoly hp_scale(const GaussRat& c, const HPoly& p) {
  if (c.is_zero() || p.is_zero()) return HPoly();
  std::vector<Monomial> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) out.push_back({t.coeff * c, t.exps});
  return hp_normalize(std::move(out));
}

HPoly hp_mul(const HPoly& p, const HPoly& q) {
  if (p.is_zero() || q.is_zero()) return HPoly();
  TermMap m;
  for (const auto& a : p.terms()) {
    for (const auto& b : q.terms()) {
      Exps e{a.exps[0] + b.exps[0], a.exps[1] + b.exps[1], a.exps[2] + b.exps[2]};
      add_into(m, e, a.coeff * b.coeff);
    }
  }
  return from_map(std::move(m));
}

HPoly hp_pow(const HPoly& p, int k) {
  if (k < 0) throw Error(Errc::InvalidArgument, "negative power");
  HPoly r = HPoly::constant(GaussRat(1));
  HPoly base = p;
  while (k > 0) {
    if (k & 1) r = hp_mul(r, base);
    k >>= 1;
    if (k) base = hp_mul(base, base);
  }
  return r;
}

HPoly hp_compose(const HPoly& p, const std::array<HPoly, 3>& F) {
  int e = -1;
  for (const auto& c : F) {
    if (c.is_zero()) continue;
    if (e < 0) e = c.degree();
    else if (c.degree() != e)
      throw Error(Errc::InvalidLift, "composition target components of unequal degree");
  }
  if (p.is_zero()) return HPoly();
  // Memoized powers of each component up to the needed exponent.
  std::array<std::vector<HPoly>, 3> pows;
  for (int v = 0; v < 3; ++v) {
    int need = p.max_exp(v);
    pows[v].reserve(need + 1);
    pows[v].push_back(HPoly::constant(GaussRat(1)));
    for (int k = 1; k <= need; ++k) pows[v].push_back(hp_mul(pows[v].back(), F[v]));
  }
  TermMap m;
  for (const auto& t : p.terms()) {
    HPoly prod = HPoly::constant(t.coeff);
    for (int v = 0; v < 3; ++v)
      if (t.exps[v] > 0) prod = hp_mul(prod, pows[v][t.exps[v]]);
    for (const auto& u : prod.terms()) add_into(m, u.exps, u.coeff);
  }
  return from_map(std::move(m));
}

HPoly hp_derivative(const HPoly& p, int axis) {
  std::vector<Monomial> out;
  for (const auto& t : p.terms()) {
    int e = t.exps.at(axis);
    if (e == 0) continue;
    Exps ne = t.exps;
    ne[axis] = e - 1;
    out.push_back({t.coeff * GaussRat(e), ne});
  }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return graded_lex_before(a.exps, b.exps);
  });
  return hp_normalize(std::move(out));
}

cplx hp_eval(const HPoly& p, const Vec3c& w) { return HPolyEval(p)(w); }

HPolyEval::HPolyEval(const HPoly& p) : degree_(p.degree()) {
  terms_.reserve(p.terms().size());
  for (const auto& t : p.terms())
    terms_.push_back({t.coeff.to_complex(), t.exps[0], t.exps[1], t.exps[2]});
}

cplx HPolyEval::operator()(const Vec3c& w) const {
  if (terms_.empty()) return {0.0, 0.0};
  // Power tables up to the polynomial degree.
  int d = degree_;
  thread_local std::vector<cplx> px, py, pz;
  px.assign(d + 1, {1, 0});
  py.assign(d + 1, {1, 0});
  pz.assign(d + 1, {1, 0});
  for (int k = 1; k <= d; ++k) {
    px[k] = px[k - 1] * w[0];
    py[k] = py[k - 1] * w[1];
    pz[k] = pz[k - 1] * w[2];
  }
  cplx s{0, 0};
  for (const auto& t : terms_) s += t.c * px[t.a] * py[t.b] * pz[t.d];
  return s;
}

std::optional<HPoly> hp_divexact(const HPoly& p, const HPoly& d) {
  if (d.is_zero()) return std::nullopt;
  if (p.is_zero()) return HPoly();
  if (p.degree() < d.degree()) return std::nullopt;
  TermMap rem;
  for (const auto& t : p.terms()) add_into(rem, t.exps, t.coeff);
  const Monomial& ld = d.leading();
  TermMap quot;
  while (!rem.empty()) {
    const auto& [le, lc] = *rem.begin();
    Exps qe{le[0] - ld.exps[0], le[1] - ld.exps[1], le[2] - ld.exps[2]};
    if (qe[0] < 0 || qe[1] < 0 || qe[2] < 0) return std::nullopt;
    GaussRat qc = lc / ld.coeff;
    add_into(quot, qe, qc);
    for (const auto& t : d.terms()) {
      Exps e{qe[0] + t.exps[0], qe[1] + t.exps[1], qe[2] + t.exps[2]};
      add_into(rem, e, -(qc * t.coeff));
    }
    for (auto it = rem.begin(); it != rem.end();) {
      if (it->second.is_zero()) it = rem.erase(it);
      else ++it;
    }
  }
  return from_map(std::move(quot));
}

HPoly hp_jacobian_det(const std::array<HPoly, 3>& F) {
  HPoly J[3][3];
  for (int i = 0; i < 3; ++i)
    for (int v = 0; v < 3; ++v) J[i][v] = hp_derivative(F[i], v);
  auto minor2 = [&](int r0, int r1, int c0, int c1) {
    return hp_sub(hp_mul(J[r0][c0], J[r1][c1]), hp_mul(J[r0][c1], J[r1][c0]));
  };
  HPoly det;
  det = hp_mul(J[0][0], minor2(1, 2, 1, 2));
  det = hp_sub(det, hp_mul(J[0][1], minor2(1, 2, 0, 2)));
  det = hp_add(det, hp_mul(J[0][2], minor2(1, 2, 0, 1)));
  return det;
}

}  // namespace projdyn
