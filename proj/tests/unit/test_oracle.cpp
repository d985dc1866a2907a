#include <doctest.h>

#include <random>

#include "faberelast/certify.hpp"
#include "faberelast/errors.hpp"
#include "faberelast/field_eval.hpp"
#include "faberelast/oracle.hpp"
#include "support/oracles.hpp"

using namespace faberelast;
namespace ft = faberelast::testing;

namespace {

const cplx kA(0.1, 0.1);

std::vector<cplx> times_conj_zeta(std::vector<cplx> v, const BoundaryNodes& nodes) {
  for (std::size_t q = 0; q < v.size(); ++q) v[q] *= std::conj(nodes.zeta[q]);
  return v;
}

}  // namespace

TEST_CASE("quadrature rule") {
  CHECK_THROWS_AS(QuadratureRule(32), ArgumentError);
  CHECK_THROWS_AS(QuadratureRule(100), ArgumentError);
  const QuadratureRule r(64);
  CHECK(r.weight() * r.size() == doctest::Approx(kTwoPi));
  CHECK(r.node(16) == doctest::Approx(kPi / 2));
}

TEST_CASE("proximity guard") {
  const ExteriorMap map({0.0, kA});
  const BoundaryNodes nodes(map, QuadratureRule(256));
  const std::vector<cplx> phi = basis_density(nodes, 1);
  const cplx near = map.boundary_point(0.3) * 1.01;
  CHECK_THROWS_AS(kelvin_single_layer(phi, nodes, material_from_lame(1, 1), near), ProximityError);
  CHECK_THROWS_AS(cauchy_operator(phi, nodes, near), ProximityError);
  CHECK_THROWS_AS(log_operator(phi, nodes, near), ProximityError);
  CHECK_THROWS_AS(cauchy_operator(std::vector<cplx>(10), nodes, 0.0), ArgumentError);
}

TEST_CASE("zero density") {
  const ExteriorMap map({0.0, kA});
  const BoundaryNodes nodes(map, QuadratureRule(256));
  const std::vector<cplx> zero(256, 0.0);
  CHECK(kelvin_single_layer(zero, nodes, material_from_lame(1, 1), 0.0) == cplx(0.0));
}

TEST_CASE("disk, single mode t_1 at the origin") {
  const ExteriorMap disk;
  const BoundaryNodes nodes(disk, QuadratureRule(2048));
  const std::vector<cplx> phi = basis_density(nodes, 1);
  const Material mat = material_from_lame(2.0, 1.0);
  CHECK(std::abs(kelvin_single_layer(phi, nodes, mat, 0.0)) < 1e-8);
  // m = 0 mode: mean of ln|e^{i theta}| is zero
  CHECK(std::abs(log_operator(basis_density(nodes, 0), nodes, 0.0)) < 1e-15);
}

TEST_CASE("Cauchy and log operator closed forms") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 3; ++trial) {
    const ExteriorMap map = ft::random_map(rng, 2 + trial);
    const FaberTable t = build_faber(map, 20);
    const BoundaryNodes nodes(map, QuadratureRule(2048));
    const std::vector<cplx> inner = interior_probe_points(map, 3, 0.1);
    REQUIRE(!inner.empty());
    const std::vector<cplx> outer = exterior_probe_points(map, 3, 0.1);
    for (int m = 1; m <= 8; ++m) {
      const std::vector<cplx> pos = basis_density(nodes, m), neg = basis_density(nodes, -m);
      for (const cplx z : inner) {
        const FaberValues f = faber_values(map, z, m + map.order());
        CHECK(std::abs(cauchy_operator(pos, nodes, z) + f.ftilde(m)) < 1e-8);
        CHECK(std::abs(cauchy_operator(neg, nodes, z)) < 1e-8);
        cplx sum = 0.0;
        for (int k = -1; k <= map.order(); ++k) sum += std::conj(map.coefficient(k)) * f.ftilde(k + m);
        CHECK(std::abs(cauchy_operator(times_conj_zeta(pos, nodes), nodes, z) + sum) < 1e-8);
        CHECK(std::abs(log_operator(neg, nodes, z) + std::conj(f.value[m]) / (2.0 * m)) < 1e-8);
        CHECK(std::abs(log_operator(pos, nodes, z) + f.value[m] / (2.0 * m)) < 1e-8);
      }
      for (const cplx w : outer) {
        const cplx z = map.eval(w);
        CHECK(std::abs(cauchy_operator(neg, nodes, z) - eval_G(map, -m, w)) < 1e-8);
        CHECK(std::abs(cauchy_operator(pos, nodes, z) + ftilde_minus_G(t, m, w)) < 1e-8);
        const cplx d = faber_minus_power(t, m, w);
        CHECK(std::abs(log_operator(pos, nodes, z) + (d + std::conj(std::pow(w, -m))) / (2.0 * m)) < 1e-8);
      }
    }
  }
}

TEST_CASE("Kelvin quadrature equals the complex form built from L and C") {
  const ExteriorMap map({0.0, kA, kA});
  const Material mat = material_from_figure_params(0.5, 0.3);
  const DensitySolution sol = solve_full(map, FarFieldLoading({0.0, 1.0}, {0.0, 1.0}), mat, 24);
  const BoundaryNodes nodes(map, QuadratureRule(2048));
  const std::vector<cplx> phi = density_samples(sol, nodes);
  const std::vector<cplx> zphi = times_conj_zeta(phi, nodes);
  for (const cplx z : {cplx(0.0, 0.0), cplx(0.3, -0.2), cplx(2.0, 1.0), cplx(-1.5, -1.5)}) {
    const cplx two_s = 2.0 * mat.alpha1 * log_operator(phi, nodes, z) -
                       mat.alpha2 * z * std::conj(cauchy_operator(phi, nodes, z)) +
                       mat.alpha2 * std::conj(cauchy_operator(zphi, nodes, z));
    CHECK(std::abs(2.0 * kelvin_single_layer(phi, nodes, mat, z) - two_s) < 1e-8);
  }
}

TEST_CASE("trapezoid rule converges geometrically") {
  const ExteriorMap map({0.0, kA, kA, kA});
  const Material mat = material_from_figure_params(0.5, 0.3);
  const DensitySolution sol = solve_full(map, FarFieldLoading({0.0, 1.0}, {0.0, 1.0}), mat, 48);
  const FaberTable t = build_faber(map, table_order_for(map, 48));
  const cplx w = std::polar(1.35, 0.9);
  const cplx ref = single_layer_exterior(sol, t, mat, w);
  double prev = INFINITY;
  for (int Q : {64, 128, 256}) {
    const BoundaryNodes nodes(map, QuadratureRule(Q));
    const double err = std::abs(kelvin_single_layer(density_samples(sol, nodes), nodes, mat, map.eval(w)) - ref);
    CHECK((err < prev / 4.0 || err < 1e-13));
    prev = err;
  }
}

TEST_CASE("transmission residual") {
  const Material mat = material_from_figure_params(0.5, 0.3);
  const ExteriorMap map({0.0, kA});
  const FaberTable t = build_faber(map, table_order_for(map, 48));
  const FarFieldLoading zero;
  CHECK(transmission_residual(solve_full(map, zero, mat, 48), t, zero, mat) == 0.0);

  const FarFieldLoading fig({0.0, 1.0}, {0.0, 1.0});
  DensitySolution sol = solve_full(map, fig, mat, 48);
  const double base = transmission_residual(sol, t, fig, mat);
  CHECK(base < 1e-6);
  sol.c3 += 1e-3;
  CHECK(transmission_residual(sol, t, fig, mat) >= base + 1e-4);
}

TEST_CASE("equilibrium residual") {
  const Material mat = material_from_figure_params(0.5, 0.3);
  const ExteriorMap map({0.0, kA, kA, kA});
  DensitySolution sol = solve_full(map, FarFieldLoading({0.0, 1.0}, {0.0, 1.0}), mat, 48);
  for (double r : equilibrium_residual(sol, map)) CHECK(r < 1e-8);

  DensitySolution zero = sol;
  for (auto& v : zero.s) v = 0.0;
  for (auto& v : zero.t) v = 0.0;
  for (double r : equilibrium_residual(zero, map)) CHECK(r == 0.0);

  sol.t[0] += cplx(0.0, 1e-2);
  CHECK(equilibrium_residual(sol, map)[2] >= 1e-3);
}

TEST_CASE("Grunsky diagnostics") {
  const FaberTable e = build_faber(ExteriorMap::ellipse(cplx(0.3, 0.4)), 10);
  CHECK(grunsky_symmetry_defect(e) == 0.0);
  CHECK(grunsky_strong_margin(e) == doctest::Approx(1.0 - 0.25).epsilon(1e-12));
  const cplx lambda[] = {1.0, 0.0, cplx(0.0, 1.0)};
  CHECK(grunsky_strong_slack(e, lambda) > 0.0);
  CHECK(grunsky_strong_margin(build_faber(ExteriorMap::disk(), 5)) == 1.0);
}
