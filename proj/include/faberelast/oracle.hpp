#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "faberelast/density_solver.hpp"
#include "faberelast/faber.hpp"
#include "faberelast/loading.hpp"
#include "faberelast/types.hpp"

namespace faberelast {

/// Periodic trapezoid rule in the conformal angle: theta_q = 2 pi q / Q, weight 2 pi / Q.
/// Q must be a power of two and at least 64.
class QuadratureRule {
 public:
  explicit QuadratureRule(int Q = 2048);

  int size() const { return Q_; }
  double node(int q) const { return kTwoPi * q / Q_; }
  double weight() const { return kTwoPi / Q_; }

 private:
  int Q_;
};

/// Boundary nodes zeta_q = Psi(e^{i theta_q}) with scale factors h_q = |Psi'(e^{i theta_q})|.
struct BoundaryNodes {
  QuadratureRule rule;
  std::vector<cplx> zeta;
  std::vector<double> h;

  BoundaryNodes(const ExteriorMap& map, const QuadratureRule& rule);
  /// Distance from z to the polyline through the nodes.
  double distance(cplx z) const;
};

/// phi_p(zeta_q) = e^{i p theta_q} / h_q.
std::vector<cplx> basis_density(const BoundaryNodes& nodes, int p);
/// Samples of density_on_boundary at the nodes.
std::vector<cplx> density_samples(const DensitySolution& sol, const BoundaryNodes& nodes);

/// S(x) = \int Gamma(x - y) phi(y) d sigma(y) with the Kelvin matrix
///   Gamma_ij = (alpha1/2pi) delta_ij ln|x| - (alpha2/2pi) x_i x_j / |x|^2,
/// the real 2-vector returned as a complex number. ProximityError if dist(x, boundary) < 0.05.
cplx kelvin_single_layer(std::span<const cplx> phi, const BoundaryNodes& nodes, const Material& mat, cplx x);

/// (1/2pi) \int psi(zeta) / (z - zeta) d sigma.
cplx cauchy_operator(std::span<const cplx> psi, const BoundaryNodes& nodes, cplx z);

/// (1/2pi) \int ln|z - zeta| phi(zeta) d sigma.
cplx log_operator(std::span<const cplx> phi, const BoundaryNodes& nodes, cplx z);

/// max_q |S(zeta_q) + u0(zeta_q) - (c1 + i c2 - i c3 zeta_q)| with S from the interior series.
double transmission_residual(const DensitySolution& sol, const FaberTable& table, const FarFieldLoading& loading,
                             const Material& mat, int Q = 256);

/// |\int phi . R_j d sigma| for R_1 = (1,0), R_2 = (0,1), R_3 = (x2, -x1).
std::array<double, 3> equilibrium_residual(const DensitySolution& sol, const ExteriorMap& map, int Q = 2048);

/// max over theta of |S_int(Psi(e^{i theta})) - S_ext(e^{i theta}(1 + eps))| on Q angles.
double boundary_continuity(const DensitySolution& sol, const FaberTable& table, const Material& mat,
                           int Q = 256, double eps = 1e-8);

/// max_{m,k} |k c_{m,k} - m c_{k,m}| over the table's N x N Grunsky block.
double grunsky_symmetry_defect(const FaberTable& table);
/// 1 - sigma_max^2 of the operator lambda -> (sqrt(k) sum_n c_{n,k} lambda_n / sqrt(n))_k, n <= N,
/// all k. Nonnegative iff the strong Grunsky inequality holds for every lambda.
double grunsky_strong_margin(const FaberTable& table);
/// sum_n n|lambda_n|^2 - sum_k k |sum_n c_{n,k} lambda_n|^2 for a given lambda (n = 1..size).
double grunsky_strong_slack(const FaberTable& table, std::span<const cplx> lambda);

}  // namespace faberelast
