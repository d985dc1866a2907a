#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "faberelast/conformal_map.hpp"
#include "faberelast/types.hpp"

namespace faberelast {

/// Faber polynomials F_0..F_N of an exterior map, with their Grunsky
/// coefficients and the Faber-basis decomposition of their derivatives,
///   F_m'(z) = sum_{j=1}^{m-1} gamma_{m,j} F_j(z) + gamma_{m,0}.
///
/// Matrices use 0-based storage for 1-based math indices: grunsky()(m-1, k-1)
/// is c_{m,k}, deriv_matrix()(m-1, j-1) is gamma_{m,j}, deriv_const()(m-1) is
/// gamma_{m,0}. monomial_coeffs()(m, j) is the z^j coefficient of F_m.
class FaberTable {
 public:
  int order() const { return order_; }
  const ExteriorMap& map() const { return map_; }

  const Eigen::MatrixXcd& monomial_coeffs() const { return monomial_; }
  const Eigen::MatrixXcd& grunsky() const { return grunsky_; }
  const Eigen::MatrixXcd& deriv_matrix() const { return gamma_; }
  const Eigen::VectorXcd& deriv_const() const { return gamma0_; }

  /// c_{m,k} for 1 <= m <= N and any k >= 1 (zero beyond k = m*M).
  cplx grunsky_coefficient(int m, int k) const;
  /// Full negative-power part of F_m(Psi(w)): element k-1 is c_{m,k}, k = 1..m*M.
  std::span<const cplx> laurent_tail(int m) const;
  /// gamma_{m,j}, 1 <= m <= N, 0 <= j <= m-1.
  cplx gamma(int m, int j) const;

 private:
  friend FaberTable build_faber(const ExteriorMap& map, int N);

  ExteriorMap map_;
  int order_ = 0;
  Eigen::MatrixXcd monomial_;
  Eigen::MatrixXcd grunsky_;
  Eigen::MatrixXcd gamma_;
  Eigen::VectorXcd gamma0_;
  std::vector<CVector> tails_;  // tails_[m], m = 0..N
};

/// Builds the table up to order N >= 1 from the recursion
///   F_{m+1}(z) = z F_m(z) - sum_{s=0}^{m} a_s F_{m-s}(z) - m a_m.
FaberTable build_faber(const ExteriorMap& map, int N);

/// N x N Grunsky matrix c_{m,k}, obtained by composing F_m with the finite
/// Laurent series of Psi (the recursion is carried out in Laurent-polynomial
/// arithmetic, so the result is exact up to rounding; no quadrature).
Eigen::MatrixXcd grunsky_matrix(const ExteriorMap& map, const FaberTable& table);

struct DerivativeBasis {
  Eigen::MatrixXcd gamma;   // N x N strictly lower triangular, (m-1, j-1)
  Eigen::VectorXcd gamma0;  // length N, (m-1)
};

/// Differentiates each stored F_m in the monomial basis and converts back to
/// the Faber basis by back-substitution against the unit lower-triangular
/// monomial table. Loses accuracy once the monomial coefficients grow (N > ~30).
DerivativeBasis derivative_basis(const FaberTable& table);

/// Same decomposition from the generating function 1/(Psi(w)-z) =
/// (w Psi'(w))^{-1} sum_j F_j(z) w^{-j}: gamma_{m,j} = m q_{m-1-j}, where q_n
/// are the Taylor coefficients of 1/Psi'(1/zeta). Stable for any N; this is
/// what build_faber stores.
DerivativeBasis derivative_basis_series(const ExteriorMap& map, int N);

/// F_m(z) by Horner on the monomial coefficients. IndexError if m > N or m < 0.
cplx eval_faber(const FaberTable& table, int m, cplx z);
/// F~_k(z) = F_k'(z)/k for k >= 1, 0 for k <= 0. IndexError if k > N.
cplx eval_ftilde(const FaberTable& table, int k, cplx z);
/// G_k(w) = w^{k-1}/Psi'(w), |w| > 1. NumericError if |Psi'(w)| < 1e-12.
cplx eval_G(const ExteriorMap& map, int k, cplx w);

/// F_0..F_upto and F_0'..F_upto' at z by running the recursion pointwise.
/// Preferred over Horner for large m (no monomial cancellation).
struct FaberValues {
  CVector value;
  CVector derivative;

  /// F~_k(z) with the k <= 0 convention.
  cplx ftilde(int k) const {
    return k <= 0 ? cplx(0.0) : derivative[static_cast<std::size_t>(k)] / static_cast<double>(k);
  }
};
FaberValues faber_values(const ExteriorMap& map, cplx z, int upto);

/// F_m(Psi(w)) - w^m = sum_k c_{m,k} w^{-k}, evaluated from the Laurent tail (|w| >= 1).
cplx faber_minus_power(const FaberTable& table, int m, cplx w);
/// F~_p(Psi(w)) - G_p(w), for any integer p <= N, evaluated without cancellation.
cplx ftilde_minus_G(const FaberTable& table, int p, cplx w);

}  // namespace faberelast
