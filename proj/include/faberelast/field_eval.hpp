#pragma once

#include <string>
#include <vector>

#include "faberelast/density_solver.hpp"
#include "faberelast/faber.hpp"
#include "faberelast/loading.hpp"
#include "faberelast/types.hpp"

namespace faberelast {

enum class Region { interior, boundary, exterior, ambiguous };
const char* region_name(Region r);

struct FieldSample {
  cplx z = 0.0;
  /// Preimage under Psi; meaningful for exterior and boundary samples.
  cplx w = 0.0;
  cplx u0 = 0.0;
  cplx S = 0.0;
  cplx u = 0.0;
  Region region = Region::ambiguous;
  /// |u0 + S - rigid motion| for boundary samples, 0 otherwise.
  double rigid_mismatch = 0.0;
};

/// Single-layer potential S at z in the closed inclusion, from the interior Faber
/// expansion. The table must have order >= N + M + 1 (see table_order_for).
cplx single_layer_interior(const DensitySolution& sol, const FaberTable& table, const Material& mat, cplx z);

/// S at z = Psi(w), |w| > 1, from the exterior expansion in w. DomainError if |w| <= 1.
cplx single_layer_exterior(const DensitySolution& sol, const FaberTable& table, const Material& mat, cplx w);

/// Total displacement u0 + S at Psi(w), |w| >= 1. On |w| = 1 (within 1e-10) the sample is
/// marked boundary, u is the rigid motion and rigid_mismatch records |u0 + S - u|.
FieldSample displacement(const DensitySolution& sol, const FaberTable& table, const Material& mat,
                         const FarFieldLoading& loading, cplx w);

/// Interior/exterior membership for points of the plane.
class PointClassifier {
 public:
  explicit PointClassifier(const ExteriorMap& map, int boundary_samples = 2048);

  struct Result {
    Region region = Region::ambiguous;
    cplx w = 0.0;
  };
  /// Damped Newton on Psi(w) = z from several starts. A root with |w| > 1 + 1e-10 means
  /// exterior, |w| within 1e-10 of 1 means boundary. Otherwise the winding number of the
  /// boundary polyline decides interior; a point that is neither is ambiguous.
  Result classify(cplx z) const;

  /// Newton root of Psi(w) = z from w0, if it converges.
  bool newton(cplx z, cplx w0, cplx& w) const;
  /// Winding number of the boundary polyline about z.
  int winding(cplx z) const;
  /// Euclidean distance from z to the boundary polyline.
  double boundary_distance(cplx z) const;

 private:
  ExteriorMap map_;
  std::vector<cplx> boundary_;
};

struct GridSpec {
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  int nx = 2, ny = 2;
};

/// Field at z: interior points get the rigid motion (and the interior S), exterior
/// points u0 + S, ambiguous points only u0.
FieldSample sample_at(const DensitySolution& sol, const FaberTable& table, const Material& mat,
                      const FarFieldLoading& loading, const PointClassifier& classifier, cplx z);

/// Row-major grid (x fastest). ArgumentError if nx < 2 or ny < 2. threads <= 0 uses
/// the hardware concurrency. The result does not depend on the thread count.
std::vector<FieldSample> field_grid(const DensitySolution& sol, const FaberTable& table, const Material& mat,
                                    const FarFieldLoading& loading, const GridSpec& grid, int threads = 0);

}  // namespace faberelast
