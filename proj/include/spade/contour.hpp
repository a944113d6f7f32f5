#pragma once

#include <string>
#include <vector>

#include "spade/geometry.hpp"
#include "spade/scheme.hpp"

namespace spade {

struct GridSpec {
  int nx = 800;
  int ny = 800;
  int refine_passes = 1;
  int min_component_nodes = 256;
};

struct LevelComponent {
  int index = 0;          // l; 0 is the component through +-1
  std::vector<cd> nodes;  // closed polyline, last node not repeated
};

// Level set |B_N| = 1 in the zeta plane.
struct LevelCurveSet {
  std::vector<LevelComponent> components;  // sorted by index: 0, 1..l*, -1..-l*
  int l_star = 0;
  double M_estimate = 0;
  double cell = 0;
  double merge_tol = 0;
  double box_half_width = 0;
  InterpolationMultiSet base;
  ArcPath L = ArcPath::segment();

  const LevelComponent& component(int l) const;
  Blaschke<double> blaschke() const;
};

LevelCurveSet trace_level(const InterpolationMultiSet& base, const ArcPath& L, const GridSpec& grid = {});

struct Assumption1Report {
  int l_star = 0;
  double M_estimate = 0;
  double symmetry_defect = 0;      // max |1 - B(t) B(1/t)| on nodes
  double reciprocal_distance = 0;  // max over nodes of dist(1/t, Gamma_{-l}) / spacing
  double min_separation = 0;
  double level_residual = 0;       // max | |B(t)| - 1 |
  double endpoint_distance = 0;    // distance of +-1 from Gamma_0
};

// Fills g.M_estimate; throws AssumptionViolated naming the failed clause.
Assumption1Report validate_assumption1(LevelCurveSet& g, const SchemeSpec& s);

struct RegionInfo {
  int component = 0;       // outer boundary, 0 or a positive loop index
  std::vector<int> holes;  // loops directly inside
  RegionLabel label = RegionLabel::D0;
  cd sample_zeta;
  cd sample_z;
  double log_modulus = 0;  // log|B_N| at the sample
};

struct RegionMap {
  std::vector<RegionInfo> regions;
  int sigma = 1;
  std::vector<int> parent;  // per inner component index l: enclosing component l or -1 for Gamma_0

  // Region of a point inside Gamma_0 (even-odd tests on the polylines).
  const RegionInfo& region_of_zeta(const LevelCurveSet& g, cd zeta) const;
};

RegionMap classify_regions(const LevelCurveSet& g);

// Oriented symmetric contour: Gamma_0 ccw starting at -1 (so its first part
// maps to delta0 from -1 to 1), loops oriented with D0 on the left.
struct SymmetricContour {
  LevelCurveSet gamma;
  RegionMap regions;
  int sigma = 1;
  std::size_t plus_one_index = 0;          // position of +1 in Gamma_0 nodes
  std::vector<cd> delta0;                  // J(Gamma_0+), -1 -> 1
  std::vector<std::vector<cd>> loops;      // J(Gamma_l), l = 1..l*
  std::vector<int> loop_orientation;       // +1 ccw, -1 cw (zeta and z agree)

  int components() const { return 1 + static_cast<int>(loops.size()); }
  double distance(cd z) const;  // to delta0 and loops
};

SymmetricContour project_delta(const LevelCurveSet& g, const RegionMap& regions);

// trace + validate + classify + project.
SymmetricContour build_symmetric_contour(const SchemeSpec& s, const ArcPath& L, const GridSpec& grid = {});

bool point_in_polygon(const std::vector<cd>& poly, cd z);
double signed_area(const std::vector<cd>& poly);

}  // namespace spade
