#include "faberelast/certify.hpp"

#include <algorithm>
#include <cmath>

#include "faberelast/field_eval.hpp"
#include "faberelast/oracle.hpp"

namespace faberelast {

std::vector<cplx> interior_probe_points(const ExteriorMap& map, int count, double min_dist) {
  const PointClassifier classifier(map);
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (int j = 0; j < 512; ++j) {
    const cplx z = map.boundary_point(kTwoPi * j / 512);
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  constexpr int kGrid = 41;
  std::vector<cplx> candidates;
  for (int j = 1; j < kGrid; ++j) {
    for (int i = 1; i < kGrid; ++i) {
      const cplx z(xmin + (xmax - xmin) * i / kGrid, ymin + (ymax - ymin) * j / kGrid);
      if (classifier.winding(z) != 0 && classifier.boundary_distance(z) >= min_dist) candidates.push_back(z);
    }
  }
  if (static_cast<int>(candidates.size()) <= count) return candidates;
  std::vector<cplx> picked;
  for (int k = 0; k < count; ++k)
    picked.push_back(candidates[static_cast<std::size_t>(k) * candidates.size() / count]);
  return picked;
}

std::vector<cplx> exterior_probe_points(const ExteriorMap& map, int count, double min_dist) {
  const PointClassifier classifier(map);
  std::vector<cplx> out;
  for (int k = 0; static_cast<int>(out.size()) < count && k < 8 * count; ++k) {
    const double r = (k % 2 == 0) ? 1.3 : 2.5;
    const cplx w = std::polar(r, kTwoPi * (k + 0.5) / count);
    if (classifier.boundary_distance(map.eval(w)) >= min_dist) out.push_back(w);
  }
  return out;
}

std::vector<CheckRow> certify(const ExteriorMap& map, const FarFieldLoading& loading, const Material& mat,
                              const DensitySolution& sol, int Q) {
  std::vector<CheckRow> rows;
  auto below = [&](std::string name, double value, double threshold) {
    rows.push_back({std::move(name), value, threshold, value < threshold});
  };

  const UnivalenceReport uni = validate_univalence(map);
  rows.push_back({"univalence", uni.passed ? 0.0 : 1.0, 0.5, uni.passed});

  const FaberTable table = build_faber(map, table_order_for(map, sol.order_N));
  below("torque-free constraint", rotation_constraint_residual(sol, map, loading, mat), 1e-8);
  below("transmission residual", transmission_residual(sol, table, loading, mat, 256), 1e-6);

  const auto eq = equilibrium_residual(sol, map, Q);
  below("equilibrium R1", eq[0], 1e-8);
  below("equilibrium R2", eq[1], 1e-8);
  below("equilibrium R3", eq[2], 1e-8);

  below("boundary continuity", boundary_continuity(sol, table, mat, 256, 1e-8), 1e-6);

  const BoundaryNodes nodes(map, QuadratureRule(Q));
  const std::vector<cplx> phi = density_samples(sol, nodes);
  double worst_in = 0.0, worst_out = 0.0;
  for (const cplx& z : interior_probe_points(map, 10))
    worst_in = std::max(worst_in, std::abs(kelvin_single_layer(phi, nodes, mat, z) -
                                           single_layer_interior(sol, table, mat, z)));
  for (const cplx& w : exterior_probe_points(map, 10))
    worst_out = std::max(worst_out, std::abs(kelvin_single_layer(phi, nodes, mat, map.eval(w)) -
                                             single_layer_exterior(sol, table, mat, w)));
  below("kelvin quadrature (interior)", worst_in, 1e-6);
  below("kelvin quadrature (exterior)", worst_out, 1e-6);

  const FaberTable gtable = build_faber(map, std::min(sol.order_N, 24));
  below("grunsky symmetry", grunsky_symmetry_defect(gtable), 1e-10);
  const double margin = grunsky_strong_margin(gtable);
  rows.push_back({"grunsky strong inequality margin", margin, -1e-8, margin >= -1e-8});
  return rows;
}

}  // namespace faberelast
