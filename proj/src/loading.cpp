#include "faberelast/loading.hpp"

#include <cmath>

#include "faberelast/errors.hpp"

namespace faberelast {

Material material_from_lame(double lambda, double mu) {
  if (!(mu > 0.0) || !(lambda + mu > 0.0))
    throw ConvexityError("material is not strongly convex (need mu > 0 and lambda + mu > 0)");
  Material m;
  m.lambda = lambda;
  m.mu = mu;
  m.alpha1 = 0.5 * (1.0 / mu + 1.0 / (2.0 * mu + lambda));
  m.alpha2 = 0.5 * (1.0 / mu - 1.0 / (2.0 * mu + lambda));
  m.kappa = (lambda + 3.0 * mu) / (lambda + mu);
  return m;
}

Material material_from_figure_params(double alpha1, double kappa) {
  if (!(alpha1 > 0.0) || kappa == 0.0 || !std::isfinite(kappa))
    throw ArgumentError("figure parameters need alpha1 > 0 and a finite nonzero kappa");
  Material m;
  m.alpha1 = alpha1;
  m.kappa = kappa;
  m.alpha2 = alpha1 / kappa;
  m.synthetic = true;
  return m;
}

FarFieldLoading::FarFieldLoading(CVector a, CVector b) : A(std::move(a)), B(std::move(b)) {
  const std::size_t n = std::max(A.size(), B.size());
  A.resize(n, 0.0);
  B.resize(n, 0.0);
}

int FarFieldLoading::degree() const {
  for (int m = size() - 1; m >= 0; --m)
    if (A[m] != cplx(0.0) || B[m] != cplx(0.0)) return m;
  return -1;
}

cplx eval_u0(const FarFieldLoading& loading, const FaberTable& table, const Material& mat, cplx z) {
  const int p = loading.degree();
  if (p < 0) return 0.0;
  const FaberValues f = faber_values(table.map(), z, p);
  cplx acc = 0.0;
  for (int m = 0; m <= p; ++m) {
    const cplx a = loading.a(m), b = loading.b(m);
    acc += mat.kappa * a * f.value[m] - z * std::conj(a * f.derivative[m]) - std::conj(b * f.value[m]);
  }
  return 0.5 * acc;
}

cplx faber_coefficient_from_samples(std::span<const cplx> samples, int m, double r) {
  const int Q = static_cast<int>(samples.size());
  if (Q == 0) return 0.0;
  cplx acc = 0.0;
  for (int q = 0; q < Q; ++q) {
    // exact phase reduction keeps e^{-i m theta} accurate for large m
    const long long k = (static_cast<long long>(m) * q) % Q;
    acc += samples[static_cast<std::size_t>(q)] * std::polar(1.0, -kTwoPi * static_cast<double>(k) / Q);
  }
  return acc * std::pow(r, -m) / static_cast<double>(Q);
}

CVector faber_coefficients(const std::function<cplx(cplx)>& v, const ExteriorMap& map, int mmax,
                           double r, int Q) {
  if (!(r > 1.0)) throw ArgumentError("faber_coefficients: sampling radius must exceed 1");
  if (Q < 1) throw ArgumentError("faber_coefficients: need at least one sample");
  CVector samples(static_cast<std::size_t>(Q));
  for (int q = 0; q < Q; ++q) samples[q] = v(map.eval(std::polar(r, kTwoPi * q / Q)));
  CVector d(static_cast<std::size_t>(mmax + 1));
  for (int m = 0; m <= mmax; ++m) d[m] = faber_coefficient_from_samples(samples, m, r);
  return d;
}

}  // namespace faberelast
