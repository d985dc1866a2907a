#include "faberelast/density_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "faberelast/errors.hpp"

namespace faberelast {

namespace {

constexpr double kMaxCondition = 1e10;
constexpr double kRotationDenominator = 1e-10;

// Adds coeff * conj(F~_n) to e, written in the conj(F_j) basis (e[0] is the constant):
//   conj(F~_n) = (1/n) (sum_{j=1}^{n-1} conj(gamma_{n,j}) conj(F_j) + conj(gamma_{n,0})).
void add_conj_ftilde(Eigen::VectorXcd& e, const FaberTable& table, int n, cplx coeff) {
  if (n <= 0) return;
  if (n > table.order()) throw IndexError("build_y: Faber table too short for the loading");
  const cplx c = coeff / static_cast<double>(n);
  e(0) += c * std::conj(table.deriv_const()(n - 1));
  for (int j = 1; j < n; ++j) e(j) += c * std::conj(table.deriv_matrix()(n - 1, j - 1));
}

Eigen::VectorXcd map_vector(const ExteriorMap& map, int N) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(N);
  for (int m = 1; m <= std::min(N, map.order()); ++m) a(m - 1) = map.coefficient(m);
  return a;
}

// Im(u . conj(a))
double im_pairing(const Eigen::VectorXcd& u, const Eigen::VectorXcd& a) {
  cplx acc = 0.0;
  for (Eigen::Index i = 0; i < std::min(u.size(), a.size()); ++i) acc += u(i) * std::conj(a(i));
  return acc.imag();
}

}  // namespace

CVector solve_t(const FarFieldLoading& loading, const Material& mat, double c3, int N) {
  CVector t(static_cast<std::size_t>(N), 0.0);
  for (int m = 1; m <= N; ++m) t[m - 1] = static_cast<double>(m) * loading.a(m) / mat.alpha2;
  if (N >= 1) t[0] += 2.0 * kI * c3 / ((mat.kappa + 1.0) * mat.alpha2);
  return t;
}

ADMatrices build_AD(const ExteriorMap& map, int N) {
  ADMatrices ad{Eigen::MatrixXcd::Zero(N, N), Eigen::MatrixXcd::Zero(N, N)};
  for (int m = 1; m <= N; ++m) {
    ad.D(m - 1, m - 1) = 1.0 / m;
    for (int k = 1; k <= N && m + k <= map.order(); ++k) ad.A(m - 1, k - 1) = map.coefficient(m + k);
  }
  return ad;
}

RightHandSide build_y(const ExteriorMap& map, const FaberTable& table, const FarFieldLoading& loading,
                      const Material& mat, int N) {
  const int M = map.order();
  if (table.order() < N + M + 1) throw IndexError("build_y: table order must be at least N + M + 1");
  const int T = table.order();

  // J1 = -(2i/(kappa+1)) sum_{k>=0} a_k conj(F~_{k+1})
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(T + 1);
  for (int k = 0; k <= M; ++k)
    add_conj_ftilde(e1, table, k + 1, -2.0 * kI / (mat.kappa + 1.0) * map.coefficient(k));

  // J2 = sum_{m>=1} conj(B_m) conj(F_m) + sum_{m>=1} m conj(A_m) sum_{k>=-1} a_k conj(F~_{k+m})
  // (A_0 and B_0 enter only through the constant C, handled in solve_c12.)
  Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(T + 1);
  const int p = loading.degree();
  if (p > T) throw IndexError("build_y: loading degree exceeds the table order");
  for (int m = 1; m <= p; ++m) {
    e2(m) += std::conj(loading.b(m));
    const cplx am = std::conj(loading.a(m));
    if (am == cplx(0.0)) continue;
    for (int k = -1; k <= M; ++k)
      add_conj_ftilde(e2, table, k + m, static_cast<double>(m) * am * map.coefficient(k));
  }

  // J = -alpha2 (y^T conj(F) + j0)
  RightHandSide rhs;
  rhs.y1 = -e1.segment(1, N) / mat.alpha2;
  rhs.y2 = -e2.segment(1, N) / mat.alpha2;
  rhs.j0_1 = -e1(0) / mat.alpha2;
  rhs.j0_2 = -e2(0) / mat.alpha2;
  for (int j = N + 1; j <= T; ++j)
    rhs.dropped = std::max({rhs.dropped, std::abs(e1(j) / mat.alpha2), std::abs(e2(j) / mat.alpha2)});
  return rhs;
}

Eigen::MatrixXcd coupling_matrix(const FaberTable& table, const ADMatrices& ad, int N) {
  const Eigen::MatrixXcd gamma = table.deriv_matrix().topLeftCorner(N, N);
  return gamma.conjugate().transpose() * ad.D * ad.A;
}

BlockSolution solve_block(const ExteriorMap& map, const FaberTable& table, const Eigen::VectorXcd& y1,
                          const Eigen::VectorXcd& y2, const Material& mat, int N) {
  const double kappa = mat.kappa;
  BlockSolution out;
  out.u1 = Eigen::VectorXcd::Zero(N);
  out.u2 = Eigen::VectorXcd::Zero(N);
  const int r = std::clamp(map.order() - 2, 0, N);
  out.coupled = r;

  for (int m = r + 1; m <= N; ++m) {
    out.u1(m - 1) = static_cast<double>(m) * y1(m - 1) / kappa;
    out.u2(m - 1) = static_cast<double>(m) * y2(m - 1) / kappa;
  }
  if (r == 0) return out;

  const ADMatrices ad = build_AD(map, N);
  const Eigen::MatrixXcd K = coupling_matrix(table, ad, N).topLeftCorner(r, r);
  const Eigen::MatrixXcd Dr = ad.D.topLeftCorner(r, r);

  Eigen::MatrixXcd big(2 * r, 2 * r);
  big << kappa * Dr, K, K.conjugate(), kappa * Dr;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(big);
  const auto& sv = svd.singularValues();
  out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(out.condition < kMaxCondition)) {
    std::ostringstream msg;
    msg << "coupled density block is ill-conditioned (cond = " << out.condition << ")";
    throw SingularSystemError(msg.str());
  }

  // kappa^2 I - (conj(K) D^{-1})(K D^{-1}) must be invertible.
  const Eigen::MatrixXcd Dinv = Dr.inverse();
  const Eigen::MatrixXcd crit =
      kappa * kappa * Eigen::MatrixXcd::Identity(r, r) - K.conjugate() * Dinv * K * Dinv;
  Eigen::JacobiSVD<Eigen::MatrixXcd> csvd(crit);
  const auto& cs = csvd.singularValues();
  if (!(cs(cs.size() - 1) > 1e-12 * std::max(1.0, cs(0))))
    throw SingularSystemError("density system fails the invertibility criterion");

  auto lu = big.fullPivLu();
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXcd& y = pass == 0 ? y1 : y2;
    Eigen::VectorXcd rhs(2 * r);
    rhs << y.head(r), y.head(r).conjugate();
    const Eigen::VectorXcd x = lu.solve(rhs);
    (pass == 0 ? out.u1 : out.u2).head(r) = x.head(r);
  }
  return out;
}

double solve_c3(const Eigen::VectorXcd& u1, const Eigen::VectorXcd& u2, const ExteriorMap& map,
                const FarFieldLoading& loading, const Material& mat) {
  const Eigen::VectorXcd a = map_vector(map, static_cast<int>(u1.size()));
  const double k1 = mat.kappa + 1.0;
  const double denom = 2.0 + k1 * mat.alpha2 * im_pairing(u1, a);
  if (!(std::abs(denom) > kRotationDenominator)) {
    std::ostringstream msg;
    msg << "rotation equation is degenerate (denominator " << denom << ")";
    throw DegenerateRotationError(msg.str());
  }
  return k1 * (-loading.a(1).imag() - mat.alpha2 * im_pairing(u2, a)) / denom;
}

cplx solve_c12(const Eigen::VectorXcd& s, double c3, const RightHandSide& rhs, const ExteriorMap& map,
               const FaberTable& table, const FarFieldLoading& loading, const Material& mat, int N) {
  // Constant ledger. The constant part of the transmission condition reads
  //   conj(s)^T A D conj(gamma0) = c3 j0_1 + j0_2 - C/alpha2,
  // with C = 2(c1 + i c2) - kappa A_0 + conj(B_0) - 2i kappa c3 a_0/(kappa+1);
  // j0_1, j0_2 are the constants of J1, J2 collected by build_y.
  const ADMatrices ad = build_AD(map, N);
  const Eigen::VectorXcd g0 = table.deriv_const().head(N).conjugate();
  const cplx lhs = (s.conjugate().transpose() * ad.A * ad.D * g0)(0);
  const cplx C = mat.alpha2 * (c3 * rhs.j0_1 + rhs.j0_2 - lhs);
  const double kappa = mat.kappa;
  return 0.5 * (C + kappa * loading.a(0) - std::conj(loading.b(0)) +
                2.0 * kI * kappa * c3 * map.coefficient(0) / (kappa + 1.0));
}

DensitySolution solve_full(const ExteriorMap& map, const FarFieldLoading& loading, const Material& mat,
                           int N) {
  if (N < 1) throw ArgumentError("solve_full: truncation order must be >= 1");
  if (loading.degree() > N) {
    std::ostringstream msg;
    msg << "loading has degree " << loading.degree() << " but the truncation order is " << N;
    throw TruncationError(msg.str());
  }
  const FaberTable table = build_faber(map, table_order_for(map, N));
  const RightHandSide rhs = build_y(map, table, loading, mat, N);
  if (rhs.truncated()) {
    std::ostringstream msg;
    msg << "right-hand side needs Faber modes beyond N = " << N << " (dropped magnitude " << rhs.dropped
        << ")";
    throw TruncationError(msg.str());
  }
  const BlockSolution block = solve_block(map, table, rhs.y1, rhs.y2, mat, N);
  const double c3 = solve_c3(block.u1, block.u2, map, loading, mat);
  const Eigen::VectorXcd s = c3 * block.u1 + block.u2;
  const cplx c12 = solve_c12(s, c3, rhs, map, table, loading, mat, N);

  DensitySolution sol;
  sol.order_N = N;
  sol.s.assign(s.data(), s.data() + N);
  sol.t = solve_t(loading, mat, c3, N);
  sol.c1 = c12.real();
  sol.c2 = c12.imag();
  sol.c3 = c3;
  return sol;
}

cplx density_on_boundary(const DensitySolution& sol, const ExteriorMap& map, double theta) {
  const cplx eta = std::polar(1.0, theta);
  const cplx inv = std::conj(eta);
  // Horner in eta and 1/eta
  cplx pos = 0.0, neg = 0.0;
  for (int m = sol.order_N; m >= 1; --m) {
    pos = (pos + sol.t_at(m)) * eta;
    neg = (neg + sol.s_at(m)) * inv;
  }
  return (pos + neg) / std::abs(map.eval_derivative_unchecked(eta));
}

double rotation_constraint_residual(const DensitySolution& sol, const ExteriorMap& map,
                                    const FarFieldLoading& loading, const Material& mat) {
  cplx pair = 0.0;
  for (int m = 1; m <= std::min(sol.order_N, map.order()); ++m)
    pair += sol.s_at(m) * std::conj(map.coefficient(m));
  return std::abs(pair.imag() + loading.a(1).imag() / mat.alpha2 +
                  2.0 * sol.c3 / ((mat.kappa + 1.0) * mat.alpha2));
}

}  // namespace faberelast
