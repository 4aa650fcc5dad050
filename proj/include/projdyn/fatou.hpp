#pragma once

#include <utility>
#include <vector>

#include "projdyn/green.hpp"
#include "projdyn/ratmap.hpp"
#include "projdyn/slice.hpp"

namespace projdyn {

enum class FatouVerdict : unsigned char {
  Fatou = 0,
  Julia = 1,
  NearIndeterminacy = 2,
  Unresolved = 3,
};

const char* verdict_name(FatouVerdict v);

// Finite equicontinuity proxy: a perturbation ring is iterated alongside
// the point; blow-up past delta_blow reads as Julia, staying inside
// delta_stab as Fatou. All radii are FS-radians. r0 <= 0 selects the
// resolution-adaptive mode used for rasters: the ring radius follows the
// local pixel pitch (scaled by r0_scale) and the stability threshold is
// floored at stab_scale times the ring radius.
struct ClassifierParams {
  int depth = 30;
  int ring = 8;
  double r0 = 1e-3;
  double r0_scale = 1.0;
  double delta_stab = 0.05;
  double stab_scale = 4.0;
  double delta_blow = 0.5;
  double eps_ind = kEpsInd;
};

struct FatouRaster {
  Slice slice;
  ClassifierParams params;
  std::vector<FatouVerdict> verdicts;
  std::vector<int> components;  // 8-connected labels on Fatou pixels, else 0
  int component_count = 0;
  long long counts[4] = {0, 0, 0, 0};

  int idx(int i, int j) const { return j * slice.width + i; }
};

// Classify one point with an explicit in-slice tangent frame.
FatouVerdict equicontinuity_classify(const RationalMap& f, const ProjPoint& p,
                                     const ClassifierParams& params,
                                     const std::array<Vec3c, 2>& frame,
                                     double r0 = -1.0, double dstab = -1.0);

// Default frame from a coordinate Gram-Schmidt at p.
FatouVerdict equicontinuity_classify(const RationalMap& f, const ProjPoint& p,
                                     const ClassifierParams& params);

FatouRaster fatou_raster(const RationalMap& f, const Slice& s,
                         const ClassifierParams& params, int workers = 1);

// Mask complement as the Fatou proxy: Julia where the mask is set, Fatou
// when the full 3x3 neighborhood is clear.
FatouVerdict green_classify(const GreenField& g, const SuppMask& m, int i, int j);

struct GraphCloud {
  std::vector<std::pair<ProjPoint, ProjPoint>> pairs;  // (base, image)
  int dead_bases = 0;
  bool closure_sampled = false;  // punctured-circle approximation was used
};

GraphCloud graph_cloud(const RationalMap& f, const Slice& patch, int depth,
                       int density, double eps_ind = kEpsInd);

// Hausdorff distance between the graphs of f^n and f^m over the patch, in
// the product metric max(fs_base, fs_image). Throws PatchNearIndeterminacy
// when more than half of the sampled bases die.
double graph_hausdorff(const RationalMap& f, const Slice& patch, int n, int m,
                       int density, double eps_ind = kEpsInd);

struct CompareReport {
  long long both_fatou = 0, both_julia = 0;
  long long eq_fatou_only = 0, eq_julia_only = 0;  // green says the opposite
  long long resolved = 0;
  double agreement = 0.0;
  bool agreement_defined = false;
  bool green_available = false;  // false for maps without the AS certificate
  double tau = 0.0;
  std::vector<std::pair<int, int>> disagreements;  // up to 64 pixel coords
  // Graph-probe fallback (non-AS maps): tail Hausdorff distances on small
  // Fatou patches, same-parity iterate pairs.
  std::vector<double> probe_tail_distances;
};

CompareReport classifier_compare(const RationalMap& f, const Slice& s,
                                 const ClassifierParams& params, int N_green,
                                 double tau, int workers = 1);

struct ConnectivityReport {
  bool has_julia = false;
  int component_count = 0;  // Julia plus NearIndeterminacy pixels, 8-connected
};

ConnectivityReport connectivity_check(const FatouRaster& r);

struct ComponentRegularity {
  int label = 0;
  int probed = 0, regular = 0, not_regular = 0, inconclusive = 0;
  double fraction = 0.0;  // regular / (regular + not_regular)
  bool skipped = false;   // fewer than 3 resolvable samples
};

struct DichotomyReport {
  bool vacuous = false;  // indeterminacy set empty
  std::vector<ComponentRegularity> components;
};

struct DichotomyParams {
  double ball_radius = 0.02;
  double delta = 0.3;
  int depth = 25;
  int m_samples = 6;
  int per_component = 10;
};

DichotomyReport dichotomy_check(const RationalMap& f, const FatouRaster& r,
                                const DichotomyParams& params);

}  // namespace projdyn
