#include "faberelast/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "faberelast/errors.hpp"
#include "faberelast/field_eval.hpp"

namespace faberelast {

namespace {

constexpr double kStandoff = 0.05;

void require_standoff(const BoundaryNodes& nodes, cplx z, const char* what) {
  const double d = nodes.distance(z);
  if (d < kStandoff) {
    std::ostringstream msg;
    msg << what << ": point is " << d << " from the boundary (need >= " << kStandoff << ")";
    throw ProximityError(msg.str());
  }
}

void require_size(std::span<const cplx> samples, const BoundaryNodes& nodes) {
  if (static_cast<int>(samples.size()) != nodes.rule.size())
    throw ArgumentError("sample count does not match the quadrature rule");
}

}  // namespace

QuadratureRule::QuadratureRule(int Q) : Q_(Q) {
  if (Q < 64 || (Q & (Q - 1)) != 0) throw ArgumentError("quadrature size must be a power of two >= 64");
}

BoundaryNodes::BoundaryNodes(const ExteriorMap& map, const QuadratureRule& r) : rule(r) {
  const int Q = rule.size();
  zeta.resize(static_cast<std::size_t>(Q));
  h.resize(static_cast<std::size_t>(Q));
  for (int q = 0; q < Q; ++q) {
    const cplx eta = std::polar(1.0, rule.node(q));
    zeta[q] = map.eval_unchecked(eta);
    h[q] = std::abs(map.eval_derivative_unchecked(eta));
  }
}

double BoundaryNodes::distance(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = zeta.size();
  for (std::size_t j = 0; j < n; ++j) {
    const cplx a = zeta[j], ab = zeta[(j + 1) % n] - a;
    const double len2 = std::norm(ab);
    const double t = len2 > 0.0 ? std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, std::abs(z - (a + t * ab)));
  }
  return best;
}

std::vector<cplx> basis_density(const BoundaryNodes& nodes, int p) {
  const int Q = nodes.rule.size();
  std::vector<cplx> out(static_cast<std::size_t>(Q));
  for (int q = 0; q < Q; ++q) {
    const long long k = ((static_cast<long long>(p) * q) % Q + Q) % Q;
    out[q] = std::polar(1.0, kTwoPi * static_cast<double>(k) / Q) / nodes.h[q];
  }
  return out;
}

std::vector<cplx> density_samples(const DensitySolution& sol, const BoundaryNodes& nodes) {
  const int Q = nodes.rule.size();
  std::vector<cplx> out(static_cast<std::size_t>(Q));
  for (int q = 0; q < Q; ++q) {
    const cplx eta = std::polar(1.0, nodes.rule.node(q));
    cplx pos = 0.0, neg = 0.0;
    for (int m = sol.order_N; m >= 1; --m) {
      pos = (pos + sol.t_at(m)) * eta;
      neg = (neg + sol.s_at(m)) * std::conj(eta);
    }
    out[q] = (pos + neg) / nodes.h[q];
  }
  return out;
}

cplx kelvin_single_layer(std::span<const cplx> phi, const BoundaryNodes& nodes, const Material& mat, cplx x) {
  require_size(phi, nodes);
  require_standoff(nodes, x, "kelvin_single_layer");
  cplx acc = 0.0;
  for (std::size_t q = 0; q < phi.size(); ++q) {
    const cplx r = x - nodes.zeta[q];
    const double r2 = std::norm(r);
    const double dot = (std::conj(r) * phi[q]).real();
    acc += (mat.alpha1 * 0.5 * std::log(r2) * phi[q] - mat.alpha2 * r * dot / r2) * nodes.h[q];
  }
  return acc * nodes.rule.weight() / kTwoPi;
}

cplx cauchy_operator(std::span<const cplx> psi, const BoundaryNodes& nodes, cplx z) {
  require_size(psi, nodes);
  require_standoff(nodes, z, "cauchy_operator");
  cplx acc = 0.0;
  for (std::size_t q = 0; q < psi.size(); ++q) acc += psi[q] / (z - nodes.zeta[q]) * nodes.h[q];
  return acc * nodes.rule.weight() / kTwoPi;
}

cplx log_operator(std::span<const cplx> phi, const BoundaryNodes& nodes, cplx z) {
  require_size(phi, nodes);
  require_standoff(nodes, z, "log_operator");
  cplx acc = 0.0;
  for (std::size_t q = 0; q < phi.size(); ++q)
    acc += 0.5 * std::log(std::norm(z - nodes.zeta[q])) * phi[q] * nodes.h[q];
  return acc * nodes.rule.weight() / kTwoPi;
}

double transmission_residual(const DensitySolution& sol, const FaberTable& table, const FarFieldLoading& loading,
                             const Material& mat, int Q) {
  double worst = 0.0;
  for (int q = 0; q < Q; ++q) {
    const cplx z = table.map().boundary_point(kTwoPi * q / Q);
    const cplx u = single_layer_interior(sol, table, mat, z) + eval_u0(loading, table, mat, z);
    worst = std::max(worst, std::abs(u - sol.rigid(z)));
  }
  return worst;
}

std::array<double, 3> equilibrium_residual(const DensitySolution& sol, const ExteriorMap& map, int Q) {
  const BoundaryNodes nodes(map, QuadratureRule(Q));
  const std::vector<cplx> phi = density_samples(sol, nodes);
  cplx first = 0.0, moment = 0.0;
  for (int q = 0; q < Q; ++q) {
    const cplx f = phi[q] * nodes.h[q];
    first += f;
    moment += f * std::conj(nodes.zeta[q]);
  }
  const double w = nodes.rule.weight();
  // phi . (x2, -x1) = -Im(phi conj(z))
  return {std::abs(first.real() * w), std::abs(first.imag() * w), std::abs(moment.imag() * w)};
}

double boundary_continuity(const DensitySolution& sol, const FaberTable& table, const Material& mat, int Q,
                           double eps) {
  double worst = 0.0;
  for (int q = 0; q < Q; ++q) {
    const double theta = kTwoPi * q / Q;
    const cplx in = single_layer_interior(sol, table, mat, table.map().boundary_point(theta));
    const cplx out = single_layer_exterior(sol, table, mat, std::polar(1.0 + eps, theta));
    worst = std::max(worst, std::abs(in - out));
  }
  return worst;
}

double grunsky_symmetry_defect(const FaberTable& table) {
  const Eigen::MatrixXcd& c = table.grunsky();
  double worst = 0.0;
  for (int m = 1; m <= c.rows(); ++m)
    for (int k = 1; k <= c.cols(); ++k)
      worst = std::max(worst, std::abs(static_cast<double>(k) * c(m - 1, k - 1) -
                                       static_cast<double>(m) * c(k - 1, m - 1)));
  return worst;
}

double grunsky_strong_margin(const FaberTable& table) {
  const int N = table.order();
  int K = 0;
  for (int n = 1; n <= N; ++n) K = std::max(K, static_cast<int>(table.laurent_tail(n).size()));
  if (K == 0) return 1.0;
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(K, N);
  for (int n = 1; n <= N; ++n) {
    const auto tail = table.laurent_tail(n);
    for (int k = 1; k <= static_cast<int>(tail.size()); ++k)
      B(k - 1, n - 1) = std::sqrt(static_cast<double>(k) / n) * tail[static_cast<std::size_t>(k - 1)];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
  const double smax = svd.singularValues()(0);
  return 1.0 - smax * smax;
}

double grunsky_strong_slack(const FaberTable& table, std::span<const cplx> lambda) {
  const int n_max = std::min<int>(table.order(), static_cast<int>(lambda.size()));
  double rhs = 0.0;
  int K = 0;
  for (int n = 1; n <= n_max; ++n) {
    rhs += n * std::norm(lambda[static_cast<std::size_t>(n - 1)]);
    K = std::max(K, static_cast<int>(table.laurent_tail(n).size()));
  }
  double lhs = 0.0;
  for (int k = 1; k <= K; ++k) {
    cplx acc = 0.0;
    for (int n = 1; n <= n_max; ++n) acc += table.grunsky_coefficient(n, k) * lambda[static_cast<std::size_t>(n - 1)];
    lhs += k * std::norm(acc);
  }
  return rhs - lhs;
}

}  // namespace faberelast
