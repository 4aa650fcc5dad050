#pragma once

#include <vector>

#include "projdyn/ratmap.hpp"
#include "projdyn/slice.hpp"

namespace projdyn {

enum class PixelStatus : unsigned char { OK, NearIndeterminacy, Diverged };

// Sampled escape potential v on a slice. v(p) is accumulated from orbits
// started at unit representatives, so no separate -log||z|| term appears.
struct GreenField {
  Slice slice;
  int depth = 0;
  std::vector<double> v;        // row-major, j*width + i
  std::vector<int> n_used;      // steps accumulated per pixel
  std::vector<PixelStatus> status;

  int idx(int i, int j) const { return j * slice.width + i; }
};

struct SuppMask {
  Slice slice;
  double tau = 0.0;
  std::vector<unsigned char> mask;  // 1 where |Laplacian| exceeds tau
  // |5-point Laplacian| of the FS-corrected potential v + log||rep||,
  // which is harmonic off supp(T) along complex-line slices.
  std::vector<double> lap;

  int idx(int i, int j) const { return j * slice.width + i; }
};

struct GreenResult {
  double value = 0.0;
  PixelStatus status = PixelStatus::OK;
  int n_used = 0;
};

// Escape-rate potential at one point: sum d^-(k+1) log||F(w_k)|| along the
// unit-normalized orbit. Refuses maps of degree < 2 (DegreeTooSmall) and
// maps without a bounded stability certificate (NotAS).
GreenResult green_potential(const RationalMap& f, const ProjPoint& p, int N,
                            double eps_ind = kEpsInd);

GreenField v_field(const RationalMap& f, const Slice& s, int N,
                   int workers = 1, double eps_ind = kEpsInd);

// 5-point Laplacian mask; tau <= 0 requests auto-calibration at 10x the
// low-quantile magnitude observed on the field itself.
SuppMask laplacian_mask(const GreenField& g, double tau);

double auto_tau(const GreenField& g);

struct ChargeReport {
  std::vector<double> radii;
  std::vector<double> masses;
  bool curve_misses_window = false;
  double tau = 0.0;
};

// Laplacian mass inside shrinking first-order tubes |curve|/|curve'| <= r
// around the curve's zero set on the slice.
ChargeReport curve_charge_estimate(const RationalMap& f, const HPoly& curve,
                                   const Slice& s,
                                   std::vector<double> tube_radii, int N = 20,
                                   double tau = -1.0, int workers = 1);

// Bounded stability check used as the precondition of the green
// operations; throws NotAS / DegreeTooSmall.
void require_green_preconditions(const RationalMap& f);

}  // namespace projdyn
