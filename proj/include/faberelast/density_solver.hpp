#pragma once

#include <Eigen/Dense>

#include "faberelast/conformal_map.hpp"
#include "faberelast/faber.hpp"
#include "faberelast/loading.hpp"
#include "faberelast/types.hpp"

namespace faberelast {

/// Density phi = sum_m [s_m phi_{-m} + t_m phi_m] on the boundary, phi_{+-m} = e^{+-i m theta}/h,
/// and the rigid motion c1 + i c2 - i c3 z the inclusion undergoes.
/// s and t are indexed from m = 1 (element m-1).
struct DensitySolution {
  CVector s;
  CVector t;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  int order_N = 0;

  cplx s_at(int m) const { return m >= 1 && m <= order_N ? s[static_cast<std::size_t>(m - 1)] : cplx(0.0); }
  cplx t_at(int m) const { return m >= 1 && m <= order_N ? t[static_cast<std::size_t>(m - 1)] : cplx(0.0); }
  cplx rigid(cplx z) const { return cplx(c1, c2) - kI * c3 * z; }
};

/// t_1 = A_1/alpha2 + 2i c3/((kappa+1) alpha2), t_m = m A_m/alpha2.
CVector solve_t(const FarFieldLoading& loading, const Material& mat, double c3, int N);

struct ADMatrices {
  Eigen::MatrixXcd A;  // A(m-1, k-1) = a_{m+k}
  Eigen::MatrixXcd D;  // diag(1, 1/2, ..., 1/N)
};
ADMatrices build_AD(const ExteriorMap& map, int N);

/// Right-hand sides of the density system: J1 (the c3 channel) and J2 (the loading)
/// expanded in conj(F_j), j = 1..N, with their constant parts.
struct RightHandSide {
  Eigen::VectorXcd y1;
  Eigen::VectorXcd y2;
  cplx j0_1 = 0.0;
  cplx j0_2 = 0.0;
  /// Largest |y| entry that fell beyond index N (0 when the truncation is exact).
  double dropped = 0.0;
  bool truncated() const { return dropped > 0.0; }
};
/// Requires table.order() >= N + M + 1; IndexError otherwise.
RightHandSide build_y(const ExteriorMap& map, const FaberTable& table, const FarFieldLoading& loading,
                      const Material& mat, int N);

/// K = conj(Gamma)^T D A, the coupling between s and conj(s).
Eigen::MatrixXcd coupling_matrix(const FaberTable& table, const ADMatrices& ad, int N);

struct BlockSolution {
  Eigen::VectorXcd u1;
  Eigen::VectorXcd u2;
  /// Size of the coupled block (max(M-2, 0)).
  int coupled = 0;
  double condition = 1.0;
};
/// Solves kappa D s + K conj(s) = y for y1 and y2. Only indices 1..M-2 couple;
/// the rest are s_m = m y_m / kappa. SingularSystemError if the coupled block
/// has condition number >= 1e10 or fails the invertibility criterion.
BlockSolution solve_block(const ExteriorMap& map, const FaberTable& table, const Eigen::VectorXcd& y1,
                          const Eigen::VectorXcd& y2, const Material& mat, int N);

/// Rotation from the torque-free condition
///   Im(s . conj(a)) + Im(A_1)/alpha2 + 2 c3/((kappa+1) alpha2) = 0,  s = c3 u1 + u2.
/// DegenerateRotationError if |2 + (kappa+1) alpha2 Im(u1 . conj(a))| <= 1e-10.
double solve_c3(const Eigen::VectorXcd& u1, const Eigen::VectorXcd& u2, const ExteriorMap& map,
                const FarFieldLoading& loading, const Material& mat);

/// c1 + i c2 from the constant term of the transmission condition.
cplx solve_c12(const Eigen::VectorXcd& s, double c3, const RightHandSide& rhs, const ExteriorMap& map,
               const FaberTable& table, const FarFieldLoading& loading, const Material& mat, int N);

/// Full pipeline. TruncationError if the loading needs modes beyond N.
DensitySolution solve_full(const ExteriorMap& map, const FarFieldLoading& loading, const Material& mat,
                           int N);

/// Table order solve_full and the evaluators need for truncation order N.
inline int table_order_for(const ExteriorMap& map, int N) { return N + map.order() + 1; }

/// phi(Psi(e^{i theta})) = sum_m [s_m e^{-i m theta} + t_m e^{i m theta}] / h(0, theta).
cplx density_on_boundary(const DensitySolution& sol, const ExteriorMap& map, double theta);

/// The torque-free residual above; zero up to rounding for solve_full output.
double rotation_constraint_residual(const DensitySolution& sol, const ExteriorMap& map,
                                    const FarFieldLoading& loading, const Material& mat);

}  // namespace faberelast
