#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "faberelast/types.hpp"

namespace faberelast {

/// Exterior conformal map Psi(w) = w + a_0 + a_1/w + ... + a_M/w^M of the
/// disk exterior |w| > 1 onto the complement of the inclusion.
///
/// The leading coefficient of w is fixed to 1 and the conformal radius to 1;
/// a map with radius R is brought to this form by rescaling z -> z/R.
/// Trailing zero coefficients are dropped so that order() is tight.
class ExteriorMap {
 public:
  /// Identity map Psi(w) = w (the unit disk).
  ExteriorMap();
  explicit ExteriorMap(std::vector<cplx> coefficients, double conformal_radius = 1.0);

  static ExteriorMap disk() { return ExteriorMap(); }
  static ExteriorMap ellipse(cplx a) { return ExteriorMap({0.0, a}); }

  /// Tight order M: index of the last nonzero coefficient (0 for a shifted disk).
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double conformal_radius() const { return 1.0; }

  /// a_0 .. a_M.
  std::span<const cplx> coefficients() const { return coeffs_; }

  /// a_k with the conventions a_{-1} = 1 and a_k = 0 outside [-1, M].
  cplx coefficient(int k) const {
    if (k == -1) return 1.0;
    if (k < 0 || k > order()) return 0.0;
    return coeffs_[static_cast<std::size_t>(k)];
  }

  /// Psi(w), Horner in 1/w. Throws DomainError if |w| < 1 - 1e-12.
  cplx eval(cplx w) const;
  /// Psi'(w) = 1 - sum k a_k w^{-k-1}. Same domain as eval.
  cplx eval_derivative(cplx w) const;
  /// Psi(e^{i theta}).
  cplx boundary_point(double theta) const;
  /// h(rho, theta) = |w Psi'(w)| at w = e^{rho + i theta}.
  double scale_factor(double rho, double theta) const;

  // Unchecked evaluation, valid for any w != 0 (used for inner-root searches).
  cplx eval_unchecked(cplx w) const;
  cplx eval_derivative_unchecked(cplx w) const;

 private:
  void check_domain(cplx w) const;

  std::vector<cplx> coeffs_;
};

struct UnivalenceReport {
  bool passed = true;
  /// Grid points on 1 <= |w| <= 4 where |Psi'(w)| < 1e-8.
  std::vector<cplx> critical_points;
  /// Boundary polyline segments (by index) that intersect each other.
  std::vector<std::pair<int, int>> intersecting_segments;
  /// Winding number of Psi'(e^{i theta}) about 0; nonzero means Psi' vanishes in |w| > 1.
  int derivative_winding = 0;
  /// Signed area enclosed by the boundary polyline; must be positive.
  double signed_area = 0.0;

  std::string summary() const;
};

/// Sampled univalence check: Psi' on a 64 x 512 polar grid of 1 <= |w| <= 4,
/// argument principle for Psi' on |w| = 1, and simplicity plus positive
/// orientation of the 2048-segment boundary polyline. Never throws.
UnivalenceReport validate_univalence(const ExteriorMap& map);

}  // namespace faberelast
