#include "faberelast/faber.hpp"

#include <cmath>
#include <string>

#include "faberelast/errors.hpp"

namespace faberelast {

namespace {

// Laurent polynomial with powers lo..hi, stored densely from lo.
struct Laurent {
  int lo = 0;
  CVector c;

  int hi() const { return lo + static_cast<int>(c.size()) - 1; }
  cplx at(int p) const {
    const int i = p - lo;
    return (i < 0 || i >= static_cast<int>(c.size())) ? cplx(0.0) : c[static_cast<std::size_t>(i)];
  }
};

void check_index(const FaberTable& table, int m, const char* what) {
  if (m > table.order()) {
    throw IndexError(std::string(what) + ": index " + std::to_string(m) + " exceeds table order " +
                     std::to_string(table.order()));
  }
}

}  // namespace

FaberTable build_faber(const ExteriorMap& map, int N) {
  if (N < 1) throw ArgumentError("build_faber: truncation order must be >= 1");

  FaberTable t;
  t.map_ = map;
  t.order_ = N;
  const int M = map.order();

  // Monomial coefficients.
  t.monomial_ = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  t.monomial_(0, 0) = 1.0;
  for (int m = 0; m < N; ++m) {
    for (int j = 0; j <= m; ++j) t.monomial_(m + 1, j + 1) = t.monomial_(m, j);
    for (int s = 0; s <= std::min(m, M); ++s) {
      const cplx a = map.coefficient(s);
      for (int j = 0; j <= m - s; ++j) t.monomial_(m + 1, j) -= a * t.monomial_(m - s, j);
    }
    t.monomial_(m + 1, 0) -= static_cast<double>(m) * map.coefficient(m);
  }

  // The same recursion in Laurent arithmetic gives F_m(Psi(w)) exactly.
  std::vector<Laurent> comp(N + 1);
  comp[0] = {0, {1.0}};
  for (int m = 0; m < N; ++m) {
    Laurent next;
    next.lo = -(m + 1) * M;
    next.c.assign(static_cast<std::size_t>(m + 1 + (m + 1) * M + 1), 0.0);
    auto add = [&](int p, cplx v) { next.c[static_cast<std::size_t>(p - next.lo)] += v; };
    const Laurent& fm = comp[m];
    for (int p = fm.lo; p <= fm.hi(); ++p) {
      const cplx v = fm.at(p);
      if (v == cplx(0.0)) continue;
      add(p + 1, v);  // w * F_m
      for (int k = 0; k <= M; ++k) add(p - k, map.coefficient(k) * v);
    }
    for (int s = 0; s <= std::min(m, M); ++s) {
      const cplx a = map.coefficient(s);
      const Laurent& fs = comp[m - s];
      for (int p = fs.lo; p <= fs.hi(); ++p) add(p, -a * fs.at(p));
    }
    add(0, -static_cast<double>(m) * map.coefficient(m));
    // The non-negative part is exactly w^{m+1}; drop the rounding residue.
    for (int p = 0; p <= m; ++p) next.c[static_cast<std::size_t>(p - next.lo)] = 0.0;
    next.c[static_cast<std::size_t>(m + 1 - next.lo)] = 1.0;
    comp[m + 1] = std::move(next);
  }
  t.tails_.resize(N + 1);
  for (int m = 0; m <= N; ++m) {
    const int len = m * M;
    t.tails_[m].resize(static_cast<std::size_t>(len));
    for (int k = 1; k <= len; ++k) t.tails_[m][static_cast<std::size_t>(k - 1)] = comp[m].at(-k);
  }

  t.grunsky_ = grunsky_matrix(map, t);

  DerivativeBasis basis = derivative_basis_series(map, N);
  t.gamma_ = std::move(basis.gamma);
  t.gamma0_ = std::move(basis.gamma0);
  return t;
}

cplx FaberTable::grunsky_coefficient(int m, int k) const {
  if (m < 1 || m > order_ || k < 1) throw IndexError("grunsky_coefficient: index out of range");
  const auto& tail = tails_[static_cast<std::size_t>(m)];
  return k <= static_cast<int>(tail.size()) ? tail[static_cast<std::size_t>(k - 1)] : cplx(0.0);
}

std::span<const cplx> FaberTable::laurent_tail(int m) const {
  if (m < 0 || m > order_) throw IndexError("laurent_tail: index out of range");
  return tails_[static_cast<std::size_t>(m)];
}

cplx FaberTable::gamma(int m, int j) const {
  if (m < 1 || m > order_ || j < 0 || j >= m) throw IndexError("gamma: index out of range");
  return j == 0 ? gamma0_(m - 1) : gamma_(m - 1, j - 1);
}

Eigen::MatrixXcd grunsky_matrix(const ExteriorMap& /*map*/, const FaberTable& table) {
  const int N = table.order();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(N, N);
  for (int m = 1; m <= N; ++m) {
    const auto tail = table.laurent_tail(m);
    for (int k = 1; k <= std::min<int>(N, static_cast<int>(tail.size())); ++k)
      c(m - 1, k - 1) = tail[static_cast<std::size_t>(k - 1)];
  }
  return c;
}

DerivativeBasis derivative_basis(const FaberTable& table) {
  const int N = table.order();
  const auto& mono = table.monomial_coeffs();
  DerivativeBasis out{Eigen::MatrixXcd::Zero(N, N), Eigen::VectorXcd::Zero(N)};
  CVector rem(static_cast<std::size_t>(N + 1));
  for (int m = 1; m <= N; ++m) {
    for (int j = 0; j < m; ++j) rem[j] = static_cast<double>(j + 1) * mono(m, j + 1);
    for (int j = m - 1; j >= 0; --j) {
      const cplx g = rem[j];
      if (j == 0) {
        out.gamma0(m - 1) = g;
      } else {
        out.gamma(m - 1, j - 1) = g;
      }
      for (int i = 0; i <= j; ++i) rem[i] -= g * mono(j, i);
    }
  }
  return out;
}

DerivativeBasis derivative_basis_series(const ExteriorMap& map, int N) {
  const int M = map.order();
  // P(zeta) = Psi'(1/zeta) = 1 - sum_k k a_k zeta^{k+1}; q = 1/P as a power series.
  CVector p(static_cast<std::size_t>(N + 1), 0.0), q(static_cast<std::size_t>(N + 1), 0.0);
  p[0] = 1.0;
  for (int k = 1; k <= M && k + 1 <= N; ++k) p[k + 1] = -static_cast<double>(k) * map.coefficient(k);
  q[0] = 1.0;
  for (int n = 1; n <= N; ++n) {
    cplx acc = 0.0;
    for (int j = 1; j <= std::min(n, M + 1); ++j) acc += p[j] * q[n - j];
    q[n] = -acc;
  }
  DerivativeBasis out{Eigen::MatrixXcd::Zero(N, N), Eigen::VectorXcd::Zero(N)};
  for (int m = 1; m <= N; ++m) {
    out.gamma0(m - 1) = static_cast<double>(m) * q[m - 1];
    for (int j = 1; j < m; ++j) out.gamma(m - 1, j - 1) = static_cast<double>(m) * q[m - 1 - j];
  }
  return out;
}

cplx eval_faber(const FaberTable& table, int m, cplx z) {
  if (m < 0) throw IndexError("eval_faber: negative index");
  check_index(table, m, "eval_faber");
  const auto& mono = table.monomial_coeffs();
  cplx acc = 0.0;
  for (int j = m; j >= 0; --j) acc = acc * z + mono(m, j);
  return acc;
}

cplx eval_ftilde(const FaberTable& table, int k, cplx z) {
  if (k <= 0) return 0.0;
  check_index(table, k, "eval_ftilde");
  const auto& mono = table.monomial_coeffs();
  cplx acc = 0.0;
  for (int j = k; j >= 1; --j) acc = acc * z + static_cast<double>(j) * mono(k, j);
  return acc / static_cast<double>(k);
}

cplx eval_G(const ExteriorMap& map, int k, cplx w) {
  const cplx d = map.eval_derivative(w);
  if (std::abs(d) < 1e-12) throw NumericError("eval_G: Psi'(w) vanishes");
  return std::pow(w, k - 1) / d;
}

FaberValues faber_values(const ExteriorMap& map, cplx z, int upto) {
  const int M = map.order();
  FaberValues v;
  v.value.assign(static_cast<std::size_t>(upto + 1), 0.0);
  v.derivative.assign(static_cast<std::size_t>(upto + 1), 0.0);
  v.value[0] = 1.0;
  const cplx shift = z - map.coefficient(0);
  for (int m = 0; m < upto; ++m) {
    cplx f = shift * v.value[m];
    cplx df = v.value[m] + shift * v.derivative[m];
    for (int s = 1; s <= std::min(m, M); ++s) {
      f -= map.coefficient(s) * v.value[m - s];
      df -= map.coefficient(s) * v.derivative[m - s];
    }
    f -= static_cast<double>(m) * map.coefficient(m);
    v.value[m + 1] = f;
    v.derivative[m + 1] = df;
  }
  return v;
}

cplx faber_minus_power(const FaberTable& table, int m, cplx w) {
  const auto tail = table.laurent_tail(m);
  const cplx inv = 1.0 / w;
  cplx acc = 0.0;
  for (auto it = tail.rbegin(); it != tail.rend(); ++it) acc = (acc + *it) * inv;
  return acc;
}

cplx ftilde_minus_G(const FaberTable& table, int p, cplx w) {
  const cplx d = table.map().eval_derivative(w);
  if (std::abs(d) < 1e-12) throw NumericError("ftilde_minus_G: Psi'(w) vanishes");
  if (p <= 0) return -std::pow(w, p - 1) / d;
  check_index(table, p, "ftilde_minus_G");
  // d/dw F_p(Psi(w)) = p w^{p-1} - sum_j j c_{p,j} w^{-j-1}
  const auto tail = table.laurent_tail(p);
  const cplx inv = 1.0 / w;
  cplx acc = 0.0;
  for (int j = static_cast<int>(tail.size()); j >= 1; --j)
    acc = acc * inv + static_cast<double>(j) * tail[static_cast<std::size_t>(j - 1)];
  return -(acc * inv * inv) / (static_cast<double>(p) * d);
}

}  // namespace faberelast
