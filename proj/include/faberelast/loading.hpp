#pragma once

#include <functional>
#include <optional>
#include <span>

#include "faberelast/faber.hpp"
#include "faberelast/types.hpp"

namespace faberelast {

/// Lamé material in the weights used by the Kelvin matrix:
///   alpha1 = (1/mu + 1/(2mu+lambda))/2,  alpha2 = (1/mu - 1/(2mu+lambda))/2,
///   kappa = (lambda + 3mu)/(lambda + mu),  alpha1 = kappa alpha2.
struct Material {
  std::optional<double> lambda;
  std::optional<double> mu;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double kappa = 0.0;
  /// Built from (alpha1, kappa) directly; lambda and mu are unset.
  bool synthetic = false;
};

/// ConvexityError unless mu > 0 and lambda + mu > 0.
Material material_from_lame(double lambda, double mu);
/// alpha2 = alpha1/kappa. No physical range check: kappa may lie outside (1, 3).
/// ArgumentError if alpha1 <= 0 or kappa == 0.
Material material_from_figure_params(double alpha1, double kappa);

/// Far-field potentials h(z) = sum A_m F_m(z), l(z) = sum B_m F_m(z).
struct FarFieldLoading {
  CVector A;
  CVector B;

  FarFieldLoading() = default;
  /// Pads the shorter vector with zeros.
  FarFieldLoading(CVector a, CVector b);

  int size() const { return static_cast<int>(A.size()); }
  cplx a(int m) const { return m >= 0 && m < size() ? A[static_cast<std::size_t>(m)] : cplx(0.0); }
  cplx b(int m) const { return m >= 0 && m < size() ? B[static_cast<std::size_t>(m)] : cplx(0.0); }
  /// Highest index with a nonzero A_m or B_m (-1 if none).
  int degree() const;
};

/// 2u0 = kappa sum A_m F_m - z sum conj(A_m) conj(F_m') - sum conj(B_m) conj(F_m), halved.
/// Valid in the whole plane; uses the pointwise Faber recursion.
cplx eval_u0(const FarFieldLoading& loading, const FaberTable& table, const Material& mat, cplx z);

/// d_m = (1/2 pi i) \oint_{|w|=r} v(Psi(w)) w^{-m-1} dw by the Q-point trapezoid rule,
/// given samples v_q = v(Psi(r e^{i theta_q})), theta_q = 2 pi q / Q.
cplx faber_coefficient_from_samples(std::span<const cplx> samples, int m, double r);

/// Samples v on |w| = r and returns d_0..d_mmax.
CVector faber_coefficients(const std::function<cplx(cplx)>& v, const ExteriorMap& map, int mmax,
                           double r = 1.5, int Q = 512);

}  // namespace faberelast
