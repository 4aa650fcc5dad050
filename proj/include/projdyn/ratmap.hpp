#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "projdyn/hpoly.hpp"
#include "projdyn/projpoint.hpp"

namespace projdyn {

inline constexpr double kEpsInd = 1e-10;  // indeterminacy certification threshold

struct IndPoint {
  ProjPoint point;
  double residual = 0.0;  // max |P_i| at the unit representative
  bool exact = false;     // certified by exact back-substitution
  bool widened = false;   // accepted from an ill-conditioned cluster
};

struct DegreeReport {
  std::vector<long long> degrees;  // degrees[k] = deg(f^(k+1)), reduced
  bool algebraically_stable = true;  // up to the tested depth only
  int witness = 0;                   // first n with deg(f^n) < d^n when not AS
  int requested = 0;
  bool budget_exceeded = false;
};

struct OrbitTrace {
  enum class Status { Completed, NearIndeterminacy };
  std::vector<ProjPoint> points;   // w_0 .. w_k, unit representatives
  std::vector<double> step_logs;   // log ||F(w_k)||_2
  Status status = Status::Completed;
  int death_step = -1;  // step m whose image vanished, when NearIndeterminacy
};

struct IterationBudget {
  int max_degree = 64;  // cap on the pre-cancellation composition degree
};

// Reduced lift triple plus cached derived data. Immutable after
// construction; lazy members are computed under a once-only contract and
// the object is safe to share across threads.
class RationalMap {
 public:
  // Reduces the triple by its gcd and validates: components homogeneous of
  // one common degree, not all zero.
  static RationalMap from_lift(std::array<HPoly, 3> lift);

  int degree() const { return degree_; }
  const std::array<HPoly, 3>& lift() const { return lift_; }
  // gcd cancelled from the input triple at construction (constant 1 if none).
  const HPoly& reduction_cofactor() const { return cofactor_; }
  bool was_reduced() const { return cofactor_.degree() > 0; }

  bool dominant() const;        // Jacobian determinant not identically zero
  const HPoly& jacobian() const;
  const std::vector<IndPoint>& indeterminacy(double eps = kEpsInd) const;

  // Lift evaluated at w (no normalization).
  Vec3c apply_raw(const Vec3c& w) const;
  std::string str() const;  // "[P0 : P1 : P2]" canonical form

 private:
  RationalMap() = default;
  std::array<HPoly, 3> lift_;
  std::array<HPolyEval, 3> eval_;
  int degree_ = 0;
  HPoly cofactor_;

  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// (F/g, g) with g the monic gcd of the three components.
std::pair<std::array<HPoly, 3>, HPoly> reduce_lift(const std::array<HPoly, 3>& F);

struct IterateResult {
  RationalMap map;
  // Cofactor cancelled at each composition step (g_k for f^(k+1)).
  std::vector<HPoly> cofactors;
};

// Reduced lift of f^n, composing stepwise and cancelling after every step.
// Throws BudgetExceeded when an intermediate composition would exceed the
// degree budget.
IterateResult iterate_symbolic(const RationalMap& f, int n,
                               IterationBudget budget = {});

// Degrees of the reduced iterates for n = 1..N and the bounded stability
// verdict. A budget overrun returns the partial report with the flag set.
DegreeReport as_test(const RationalMap& f, int N, IterationBudget budget = {});

// Pointwise orbit w_{k+1} = F(w_k)/||F(w_k)||; never uses reduced iterates,
// so orbits through curves collapsing onto I(f) die as they should.
OrbitTrace orbit_pointwise(const RationalMap& f, const ProjPoint& p, int N,
                           double eps_ind = kEpsInd);

struct RegularityResult {
  enum class Kind { RegularUpToN, NotRegularWitness, Inconclusive };
  Kind kind = Kind::RegularUpToN;
  int witness = -1;               // iterate index entering the delta-tube
  bool indeterminacy_empty = false;
};

// Samples the FS ball B(p,r) and tests whether orbits keep FS distance at
// least delta from every indeterminacy point up to depth N.
RegularityResult regularity_probe(const RationalMap& f, const ProjPoint& p,
                                  double r, double delta, int N, int m_samples,
                                  std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

}  // namespace projdyn
