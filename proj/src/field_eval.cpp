#include "faberelast/field_eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "faberelast/errors.hpp"

namespace faberelast {

namespace {

constexpr double kBoundaryBand = 1e-10;
constexpr int kNewtonIterations = 100;

void check_table(const DensitySolution& sol, const FaberTable& table) {
  if (table.order() < table_order_for(table.map(), sol.order_N))
    throw IndexError("field evaluation needs a Faber table of order N + M + 1");
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::interior: return "interior";
    case Region::boundary: return "boundary";
    case Region::exterior: return "exterior";
    case Region::ambiguous: return "ambiguous";
  }
  return "ambiguous";
}

cplx single_layer_interior(const DensitySolution& sol, const FaberTable& table, const Material& mat, cplx z) {
  check_table(sol, table);
  const ExteriorMap& map = table.map();
  const int N = sol.order_N, M = map.order();
  const FaberValues f = faber_values(map, z, N + M);
  const double a1 = mat.alpha1, a2 = mat.alpha2;

  cplx two_s = 0.0;
  for (int m = 1; m <= N; ++m) {
    const cplx s = sol.s_at(m), t = sol.t_at(m);
    if (s == cplx(0.0) && t == cplx(0.0)) continue;
    const double inv_m = 1.0 / m;
    two_s += -a1 * t * inv_m * f.value[m] - a1 * s * inv_m * std::conj(f.value[m]) +
             a2 * z * std::conj(t * f.ftilde(m));
    cplx sum_s = 0.0, sum_t = 0.0;
    for (int k = m + 1; k <= M; ++k) sum_s += map.coefficient(k) * std::conj(f.ftilde(k - m));
    for (int k = -1; k <= M; ++k) sum_t += map.coefficient(k) * std::conj(f.ftilde(k + m));
    two_s -= a2 * (std::conj(s) * sum_s + std::conj(t) * sum_t);
  }
  return 0.5 * two_s;
}

cplx single_layer_exterior(const DensitySolution& sol, const FaberTable& table, const Material& mat, cplx w) {
  if (!(std::abs(w) > 1.0)) throw DomainError("single_layer_exterior needs |w| > 1");
  check_table(sol, table);
  const ExteriorMap& map = table.map();
  const int N = sol.order_N, M = map.order();

  // E_p = F~_p(Psi(w)) - G_p(w) for p = -N-1 .. N+M, stored at p + N + 1.
  const int lo = -N - 1, hi = N + M;
  CVector E(static_cast<std::size_t>(hi - lo + 1));
  for (int p = lo; p <= hi; ++p) E[p - lo] = ftilde_minus_G(table, p, w);
  auto e = [&](int p) { return E[static_cast<std::size_t>(p - lo)]; };

  const cplx inv_w = 1.0 / w;
  cplx v1 = 0.0, v2 = 0.0, v3 = 0.0;
  cplx wpow = 1.0;
  for (int m = 1; m <= N; ++m) {
    wpow *= inv_w;
    const cplx s = sol.s_at(m), t = sol.t_at(m);
    if (s == cplx(0.0) && t == cplx(0.0)) continue;
    const cplx d = faber_minus_power(table, m, w);
    v1 += (s * (std::conj(d) + wpow) + t * (d + std::conj(wpow))) / static_cast<double>(m);
    v2 += s * e(-m) + t * e(m);
    cplx sum_s = 0.0, sum_t = 0.0;
    for (int k = -1; k <= M; ++k) {
      const cplx ca = std::conj(map.coefficient(k));
      sum_s += ca * e(k - m);
      sum_t += ca * e(k + m);
    }
    v3 += s * sum_s + t * sum_t;
  }
  const cplx two_s = -mat.alpha1 * v1 + mat.alpha2 * map.eval(w) * std::conj(v2) - mat.alpha2 * std::conj(v3);
  return 0.5 * two_s;
}

FieldSample displacement(const DensitySolution& sol, const FaberTable& table, const Material& mat,
                         const FarFieldLoading& loading, cplx w) {
  const ExteriorMap& map = table.map();
  FieldSample out;
  out.w = w;
  out.z = map.eval(w);
  out.u0 = eval_u0(loading, table, mat, out.z);
  if (std::abs(std::abs(w) - 1.0) <= kBoundaryBand) {
    out.region = Region::boundary;
    out.S = single_layer_interior(sol, table, mat, out.z);
    out.u = sol.rigid(out.z);
    out.rigid_mismatch = std::abs(out.u0 + out.S - out.u);
    return out;
  }
  out.region = Region::exterior;
  out.S = single_layer_exterior(sol, table, mat, w);
  out.u = out.u0 + out.S;
  return out;
}

PointClassifier::PointClassifier(const ExteriorMap& map, int boundary_samples) : map_(map) {
  if (boundary_samples < 8) throw ArgumentError("PointClassifier: too few boundary samples");
  boundary_.resize(static_cast<std::size_t>(boundary_samples));
  for (int j = 0; j < boundary_samples; ++j) boundary_[j] = map_.boundary_point(kTwoPi * j / boundary_samples);
}

bool PointClassifier::newton(cplx z, cplx w0, cplx& w) const {
  w = w0;
  cplx f = map_.eval_unchecked(w) - z;
  const double tol = 1e-14 * (1.0 + std::abs(z));
  for (int it = 0; it < kNewtonIterations; ++it) {
    if (std::abs(f) <= tol) return true;
    const cplx d = map_.eval_derivative_unchecked(w);
    if (std::abs(d) < 1e-14) return false;
    const cplx step = f / d;
    double lambda = 1.0;
    cplx trial = w - step;
    cplx ft = map_.eval_unchecked(trial) - z;
    while (!(std::abs(ft) < std::abs(f)) && lambda > 1e-8) {
      lambda *= 0.5;
      trial = w - lambda * step;
      ft = map_.eval_unchecked(trial) - z;
    }
    if (!(std::abs(ft) < std::abs(f))) {
      // stalled at rounding level
      return std::abs(f) <= 1e3 * tol;
    }
    w = trial;
    f = ft;
    if (std::abs(lambda * step) <= 1e-16 * std::abs(w)) return std::abs(f) <= 1e3 * tol;
  }
  return std::abs(f) <= 1e3 * tol;
}

int PointClassifier::winding(cplx z) const {
  double total = 0.0;
  const std::size_t n = boundary_.size();
  for (std::size_t j = 0; j < n; ++j) {
    const cplx a = boundary_[j] - z, b = boundary_[(j + 1) % n] - z;
    if (a == cplx(0.0) || b == cplx(0.0)) return 0;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

double PointClassifier::boundary_distance(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = boundary_.size();
  for (std::size_t j = 0; j < n; ++j) {
    const cplx a = boundary_[j], b = boundary_[(j + 1) % n];
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((z - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::abs(z - (a + t * ab)));
  }
  return best;
}

PointClassifier::Result PointClassifier::classify(cplx z) const {
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < boundary_.size(); ++j) {
    const double d = std::abs(boundary_[j] - z);
    if (d < best) {
      best = d;
      nearest = j;
    }
  }
  const cplx dir = std::polar(1.0, kTwoPi * static_cast<double>(nearest) / boundary_.size());
  const cplx shifted = z - map_.coefficient(0);
  std::vector<cplx> starts;
  if (std::abs(shifted) > 1.0) starts.push_back(shifted);
  for (double r : {1.0 + 1e-6, 1.1, 1.5, 3.0}) starts.push_back(r * dir);

  Result res;
  bool on_boundary = false;
  for (const cplx& w0 : starts) {
    cplx w;
    if (!newton(z, w0, w)) continue;
    const double r = std::abs(w);
    if (r > 1.0 + kBoundaryBand) {
      res.region = Region::exterior;
      res.w = w;
      return res;
    }
    if (r >= 1.0 - kBoundaryBand && !on_boundary) {
      on_boundary = true;
      res.w = w;
    }
  }
  if (on_boundary) {
    res.region = Region::boundary;
    return res;
  }
  res.region = winding(z) != 0 ? Region::interior : Region::ambiguous;
  return res;
}

FieldSample sample_at(const DensitySolution& sol, const FaberTable& table, const Material& mat,
                      const FarFieldLoading& loading, const PointClassifier& classifier, cplx z) {
  const PointClassifier::Result c = classifier.classify(z);
  if (c.region == Region::exterior) {
    FieldSample out = displacement(sol, table, mat, loading, c.w);
    out.z = z;
    return out;
  }
  FieldSample out;
  out.z = z;
  out.w = c.w;
  out.region = c.region;
  out.u0 = eval_u0(loading, table, mat, z);
  if (c.region == Region::boundary) {
    out.S = single_layer_interior(sol, table, mat, z);
    out.u = sol.rigid(z);
    out.rigid_mismatch = std::abs(out.u0 + out.S - out.u);
  } else if (c.region == Region::interior) {
    out.S = single_layer_interior(sol, table, mat, z);
    out.u = sol.rigid(z);
  } else {
    out.u = out.u0;
  }
  return out;
}

std::vector<FieldSample> field_grid(const DensitySolution& sol, const FaberTable& table, const Material& mat,
                                    const FarFieldLoading& loading, const GridSpec& grid, int threads) {
  if (grid.nx < 2 || grid.ny < 2) throw ArgumentError("field_grid: resolution must be at least 2 x 2");
  check_table(sol, table);
  const PointClassifier classifier(table.map());
  std::vector<FieldSample> out(static_cast<std::size_t>(grid.nx) * grid.ny);

  std::atomic<int> next_row{0};
  auto worker = [&]() {
    for (int j = next_row++; j < grid.ny; j = next_row++) {
      const double y = grid.ymin + (grid.ymax - grid.ymin) * j / (grid.ny - 1);
      for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.xmin + (grid.xmax - grid.xmin) * i / (grid.nx - 1);
        out[static_cast<std::size_t>(j) * grid.nx + i] =
            sample_at(sol, table, mat, loading, classifier, cplx(x, y));
      }
    }
  };

  int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n = std::clamp(n, 1, grid.ny);
  if (n == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace faberelast
