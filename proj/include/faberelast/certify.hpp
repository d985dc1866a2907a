#pragma once

#include <string>
#include <vector>

#include "faberelast/conformal_map.hpp"
#include "faberelast/density_solver.hpp"
#include "faberelast/loading.hpp"

namespace faberelast {

struct CheckRow {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Up to `count` points inside the inclusion at distance >= min_dist from the boundary,
/// picked deterministically from a grid over the bounding box.
std::vector<cplx> interior_probe_points(const ExteriorMap& map, int count, double min_dist = 0.1);
/// `count` preimages w on rings |w| = 1.3 and 2.5 whose images are >= min_dist from the boundary.
std::vector<cplx> exterior_probe_points(const ExteriorMap& map, int count, double min_dist = 0.1);

/// Certification suite behind `validate`: univalence, torque-free constraint,
/// transmission, equilibrium, boundary continuity, Kelvin quadrature against both
/// series, and the Grunsky symmetry and strong inequality.
std::vector<CheckRow> certify(const ExteriorMap& map, const FarFieldLoading& loading, const Material& mat,
                              const DensitySolution& sol, int Q);

}  // namespace faberelast
