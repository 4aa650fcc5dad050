#include "projdyn/ratmap.hpp"

#include <cmath>
#include <mutex>

#include "projdyn/error.hpp"
#include "projdyn/rng.hpp"

namespace projdyn {

struct RationalMap::Cache {
  std::once_flag jac_once;
  HPoly jacobian;
  bool dominant = false;

  std::once_flag ind_once;
  std::vector<IndPoint> indeterminacy;
  double ind_eps = kEpsInd;

  std::mutex custom_mu;  // guards recomputation at non-default eps
  std::vector<IndPoint> custom_ind;
  double custom_eps = -1.0;
};

std::vector<IndPoint> solve_indeterminacy(const std::array<HPoly, 3>& lift,
                                          double eps);  // indeterminacy.cpp

std::pair<std::array<HPoly, 3>, HPoly> reduce_lift(const std::array<HPoly, 3>& F) {
  bool all_zero = F[0].is_zero() && F[1].is_zero() && F[2].is_zero();
  if (all_zero)
    throw Error(Errc::InvalidLift, "all lift components are zero");
  HPoly g = hp_gcd(hp_gcd(F[0], F[1]), F[2]);
  if (g.is_constant()) {
    return {F, HPoly::constant(GaussRat(1))};
  }
  std::array<HPoly, 3> out;
  for (int i = 0; i < 3; ++i) {
    auto q = hp_divexact(F[i], g);
    if (!q) throw Error(Errc::InvalidLift, "gcd does not divide a component");
    out[i] = std::move(*q);
  }
  return {out, g};
}

RationalMap RationalMap::from_lift(std::array<HPoly, 3> lift) {
  int d = -1;
  for (const auto& c : lift) {
    if (c.is_zero()) continue;
    if (d < 0) d = c.degree();
    else if (c.degree() != d)
      throw Error(Errc::InvalidLift, "lift components of unequal degree");
  }
  if (d < 0) throw Error(Errc::InvalidLift, "all lift components are zero");
  auto [reduced, g] = reduce_lift(lift);
  RationalMap f;
  f.lift_ = std::move(reduced);
  f.cofactor_ = std::move(g);
  f.degree_ = 0;
  for (const auto& c : f.lift_)
    if (!c.is_zero()) { f.degree_ = c.degree(); break; }
  for (int i = 0; i < 3; ++i) f.eval_[i] = HPolyEval(f.lift_[i]);
  f.cache_ = std::make_shared<Cache>();
  return f;
}

bool RationalMap::dominant() const {
  jacobian();
  return cache_->dominant;
}

const HPoly& RationalMap::jacobian() const {
  std::call_once(cache_->jac_once, [this] {
    cache_->jacobian = hp_jacobian_det(lift_);
    cache_->dominant = !cache_->jacobian.is_zero();
  });
  return cache_->jacobian;
}

const std::vector<IndPoint>& RationalMap::indeterminacy(double eps) const {
  if (eps == kEpsInd) {
    std::call_once(cache_->ind_once, [this] {
      cache_->indeterminacy = solve_indeterminacy(lift_, kEpsInd);
    });
    return cache_->indeterminacy;
  }
  std::lock_guard<std::mutex> lock(cache_->custom_mu);
  if (cache_->custom_eps != eps) {
    cache_->custom_ind = solve_indeterminacy(lift_, eps);
    cache_->custom_eps = eps;
  }
  return cache_->custom_ind;
}

Vec3c RationalMap::apply_raw(const Vec3c& w) const {
  return {eval_[0](w), eval_[1](w), eval_[2](w)};
}

std::string RationalMap::str() const {
  return "[" + lift_[0].str() + " : " + lift_[1].str() + " : " + lift_[2].str() + "]";
}

IterateResult iterate_symbolic(const RationalMap& f, int n, IterationBudget budget) {
  if (n < 1) throw Error(Errc::InvalidArgument, "iterate count must be positive");
  IterateResult res{f, {}};
  std::array<HPoly, 3> cur = f.lift();
  int cur_deg = f.degree();
  for (int k = 2; k <= n; ++k) {
    long long raw = static_cast<long long>(cur_deg) * f.degree();
    if (raw > budget.max_degree)
      throw Error(Errc::BudgetExceeded,
                  "composition degree " + std::to_string(raw) +
                      " exceeds budget " + std::to_string(budget.max_degree) +
                      " at iterate " + std::to_string(k));
    std::array<HPoly, 3> next;
    for (int i = 0; i < 3; ++i) next[i] = hp_compose(f.lift()[i], cur);
    auto [reduced, g] = reduce_lift(next);
    res.cofactors.push_back(g);
    cur = std::move(reduced);
    cur_deg = 0;
    for (const auto& c : cur)
      if (!c.is_zero()) { cur_deg = c.degree(); break; }
  }
  res.map = RationalMap::from_lift(cur);
  return res;
}

DegreeReport as_test(const RationalMap& f, int N, IterationBudget budget) {
  if (N < 1) throw Error(Errc::InvalidArgument, "depth must be positive");
  DegreeReport rep;
  rep.requested = N;
  const long long d = f.degree();
  rep.degrees.push_back(d);
  long long expected = d;
  std::array<HPoly, 3> cur = f.lift();
  int cur_deg = f.degree();
  for (int n = 2; n <= N; ++n) {
    long long raw = static_cast<long long>(cur_deg) * d;
    if (raw > budget.max_degree) {
      rep.budget_exceeded = true;
      break;
    }
    std::array<HPoly, 3> next;
    for (int i = 0; i < 3; ++i) next[i] = hp_compose(f.lift()[i], cur);
    auto [reduced, g] = reduce_lift(next);
    cur = std::move(reduced);
    cur_deg = 0;
    for (const auto& c : cur)
      if (!c.is_zero()) { cur_deg = c.degree(); break; }
    rep.degrees.push_back(cur_deg);
    if (rep.algebraically_stable) {
      expected *= d;  // bounded by the budget while the verdict is open
      if (cur_deg < expected) {
        rep.algebraically_stable = false;
        rep.witness = n;
      }
    }
  }
  return rep;
}

OrbitTrace orbit_pointwise(const RationalMap& f, const ProjPoint& p, int N,
                           double eps_ind) {
  if (N < 0) throw Error(Errc::InvalidArgument, "orbit length must be >= 0");
  OrbitTrace tr;
  tr.points.reserve(N + 1);
  tr.points.push_back(p);
  Vec3c w = p.coords();
  for (int k = 0; k < N; ++k) {
    Vec3c img = f.apply_raw(w);
    double n = vec_norm(img);
    if (!(n >= eps_ind) || !std::isfinite(n)) {
      tr.status = OrbitTrace::Status::NearIndeterminacy;
      tr.death_step = k + 1;
      return tr;
    }
    tr.step_logs.push_back(std::log(n));
    ProjPoint q = ProjPoint::normalize(img);
    tr.points.push_back(q);
    w = q.coords();
  }
  return tr;
}

RegularityResult regularity_probe(const RationalMap& f, const ProjPoint& p,
                                  double r, double delta, int N, int m_samples,
                                  std::uint64_t seed) {
  if (r <= 0 || delta <= 0)
    throw Error(Errc::InvalidArgument, "radii must be positive");
  if (m_samples < 1) throw Error(Errc::InvalidArgument, "need at least one sample");
  RegularityResult res;
  const auto& ind = f.indeterminacy();
  if (ind.empty()) {
    res.kind = RegularityResult::Kind::RegularUpToN;
    res.indeterminacy_empty = true;
    return res;
  }
  auto dist_to_ind = [&](const ProjPoint& q) {
    double m = 4.0;
    for (const auto& ip : ind) m = std::min(m, fs_distance(q, ip.point));
    return m;
  };
  // Orthonormal tangent frame at p (full complex tangent plane).
  Vec3c axes[3] = {{cplx(1, 0), cplx(0, 0), cplx(0, 0)},
                   {cplx(0, 0), cplx(1, 0), cplx(0, 0)},
                   {cplx(0, 0), cplx(0, 0), cplx(1, 0)}};
  Vec3c frame[2];
  int nf = 0;
  for (int k = 0; k < 3 && nf < 2; ++k) {
    Vec3c v = axes[k];
    cplx c = vec_inner(v, p.coords());
    for (int i = 0; i < 3; ++i) v[i] -= c * p.coords()[i];
    if (nf == 1) {
      cplx c2 = vec_inner(v, frame[0]);
      for (int i = 0; i < 3; ++i) v[i] -= c2 * frame[0][i];
    }
    double n = vec_norm(v);
    if (n > 1e-8) {
      for (auto& x : v) x /= n;
      frame[nf++] = v;
    }
  }
  SplitMix64 rng(seed);
  bool any_inconclusive = false;
  for (int s = 0; s < m_samples; ++s) {
    // Tangent direction in the full 4-real-dimensional tangent space and a
    // radius in (0, r]; geodesic step gives exact FS distance.
    double a = rng.normal(), b = rng.normal(), c = rng.normal(), d = rng.normal();
    double nn = std::sqrt(a * a + b * b + c * c + d * d);
    if (nn < 1e-12) { a = 1.0; nn = 1.0; }
    cplx c1(a / nn, b / nn), c2(c / nn, d / nn);
    double rho = (s == 0) ? 0.0 : r * std::sqrt(rng.uniform());
    Vec3c q;
    for (int i = 0; i < 3; ++i)
      q[i] = std::cos(rho) * p.coords()[i] +
             std::sin(rho) * (c1 * frame[0][i] + c2 * frame[1][i]);
    ProjPoint w = ProjPoint::normalize(q);
    // Walk the orbit, checking the sample itself first (n = 0).
    for (int n = 0; n <= N; ++n) {
      if (dist_to_ind(w) < delta) {
        res.kind = RegularityResult::Kind::NotRegularWitness;
        res.witness = n;
        return res;
      }
      if (n == N) break;
      Vec3c img = f.apply_raw(w.coords());
      double nrm = vec_norm(img);
      if (!(nrm >= kEpsInd) || !std::isfinite(nrm)) {
        any_inconclusive = true;
        break;
      }
      w = ProjPoint::normalize(img);
    }
  }
  res.kind = any_inconclusive ? RegularityResult::Kind::Inconclusive
                              : RegularityResult::Kind::RegularUpToN;
  return res;
}

}  // namespace projdyn
