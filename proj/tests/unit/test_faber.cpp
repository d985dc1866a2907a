#include <doctest.h>

#include <random>

#include "faberelast/errors.hpp"
#include "faberelast/faber.hpp"
#include "support/oracles.hpp"

using namespace faberelast;
namespace ft = faberelast::testing;

TEST_CASE("first Faber polynomials in closed form") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ExteriorMap map = ft::random_map(rng, 1 + trial % 5);
    const FaberTable t = build_faber(map, 4);
    const cplx a0 = map.coefficient(0), a1 = map.coefficient(1), a2 = map.coefficient(2);
    const auto& c = t.monomial_coeffs();
    CHECK(c(0, 0) == cplx(1.0));
    CHECK(std::abs(c(1, 0) + a0) < 1e-15);
    CHECK(c(1, 1) == cplx(1.0));
    CHECK(std::abs(c(2, 0) - (a0 * a0 - 2.0 * a1)) < 1e-15);
    CHECK(std::abs(c(2, 1) + 2.0 * a0) < 1e-15);
    // F_3 = (z - a0)^3 - 3 a1 (z - a0) - 3 a2
    const cplx z(0.3, -0.2);
    const cplx expect = std::pow(z - a0, 3) - 3.0 * a1 * (z - a0) - 3.0 * a2;
    CHECK(std::abs(eval_faber(t, 3, z) - expect) < 1e-14);
  }
}

TEST_CASE("ellipse Faber polynomials against the closed form w^m + (a/w)^m") {
  const cplx a0(0.05, -0.02), a(0.1, 0.1);
  const ExteriorMap map({a0, a});
  const FaberTable t = build_faber(map, 12);
  for (int m = 0; m <= 12; ++m) {
    for (const cplx z : {cplx(0.2, 0.1), cplx(-0.7, 0.4), cplx(1.3, -0.9)}) {
      const cplx ref = ft::ellipse_faber(a0, a, m, z);
      CHECK(std::abs(eval_faber(t, m, z) - ref) < 1e-12 * (1.0 + std::abs(ref)));
    }
  }
}

TEST_CASE("Grunsky coefficients") {
  SUBCASE("ellipse: diagonal with c_{m,m} = a^m") {
    for (const cplx a : {cplx(0.1), cplx(0.1, 0.1), cplx(-0.3)}) {
      const FaberTable t = build_faber(ExteriorMap::ellipse(a), 8);
      for (int m = 1; m <= 8; ++m)
        for (int k = 1; k <= 8; ++k) {
          const cplx expect = m == k ? std::pow(a, m) : cplx(0.0);
          CHECK(std::abs(t.grunsky()(m - 1, k - 1) - expect) < 1e-15);
        }
    }
  }
  SUBCASE("Laurent composition agrees with contour quadrature") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
      const FaberTable t = build_faber(ft::random_map(rng, 2 + trial % 3), 6);
      for (int m = 1; m <= 6; ++m)
        for (int k = 1; k <= 8; ++k)
          CHECK(std::abs(t.grunsky_coefficient(m, k) - ft::grunsky_by_quadrature(t, m, k)) < 1e-11);
    }
  }
  SUBCASE("tails vanish beyond m M") {
    const FaberTable t = build_faber(ExteriorMap({0.0, 0.1, 0.2}), 5);
    CHECK(t.laurent_tail(3).size() == 6);
    CHECK(t.grunsky_coefficient(3, 7) == cplx(0.0));
    CHECK_THROWS_AS(t.grunsky_coefficient(6, 1), IndexError);
  }
  SUBCASE("symmetry k c_{m,k} = m c_{k,m}") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
      const FaberTable t = build_faber(ft::random_map(rng, 1 + trial % 5), 16);
      for (int m = 1; m <= 16; ++m)
        for (int k = 1; k <= 16; ++k)
          CHECK(std::abs(static_cast<double>(k) * t.grunsky_coefficient(m, k) - static_cast<double>(m) * t.grunsky_coefficient(k, m)) <
                1e-12);
    }
  }
}

TEST_CASE("derivative decomposition") {
  SUBCASE("ellipse pattern: gamma_{m,j} = m a^{(m-1-j)/2} when m-1-j is even") {
    for (const cplx a : {cplx(0.1), cplx(0.1, 0.1), cplx(-0.3)}) {
      const FaberTable t = build_faber(ExteriorMap::ellipse(a), 10);
      for (int m = 1; m <= 10; ++m)
        for (int j = 0; j < m; ++j) {
          const int gap = m - 1 - j;
          const cplx expect = gap % 2 == 0 ? static_cast<double>(m) * std::pow(a, gap / 2) : cplx(0.0);
          CHECK(std::abs(t.gamma(m, j) - expect) < 1e-12);
        }
    }
  }
  SUBCASE("a shift of the centre leaves the pattern unchanged") {
    const cplx a(0.45, -0.25);
    const FaberTable t = build_faber(ExteriorMap({cplx(0.6, 0.3), a}), 20);
    for (int m = 1; m <= 20; ++m)
      for (int j = 0; j < m; ++j) {
        const int gap = m - 1 - j;
        const cplx expect = gap % 2 == 0 ? static_cast<double>(m) * std::pow(a, gap / 2) : cplx(0.0);
        CHECK(std::abs(t.gamma(m, j) - expect) < 1e-12);
      }
  }
  SUBCASE("series route agrees with back-substitution for moderate N") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
      const FaberTable t = build_faber(ft::random_map(rng, 1 + trial % 5), 20);
      const DerivativeBasis bs = derivative_basis(t);
      // back-substitution goes through the monomial basis and loses digits when a0 != 0
      const double scale = t.deriv_matrix().cwiseAbs().maxCoeff();
      CHECK((bs.gamma - t.deriv_matrix()).cwiseAbs().maxCoeff() < 1e-10 * scale);
      CHECK((bs.gamma0 - t.deriv_const()).cwiseAbs().maxCoeff() < 1e-10 * scale);
    }
  }
  SUBCASE("F_m' reassembled from the decomposition matches finite differences") {
    std::mt19937_64 rng(17);
    const ExteriorMap map = ft::random_map(rng, 4);
    const FaberTable t = build_faber(map, 12);
    const cplx z(0.2, -0.3);
    for (int m = 1; m <= 12; ++m) {
      cplx d = t.gamma(m, 0);
      for (int j = 1; j < m; ++j) d += t.gamma(m, j) * eval_faber(t, j, z);
      const cplx fd = ft::derivative_fd([&](cplx x) { return eval_faber(t, m, x); }, z);
      CHECK(std::abs(d - fd) < 1e-7 * (1.0 + std::abs(fd)));
      CHECK(std::abs(eval_ftilde(t, m, z) * static_cast<double>(m) - d) < 1e-11 * (1.0 + std::abs(d)));
    }
  }
}

TEST_CASE("pointwise recursion matches Horner evaluation") {
  std::mt19937_64 rng(19);
  const ExteriorMap map = ft::random_map(rng, 3);
  const FaberTable t = build_faber(map, 15);
  const cplx z(0.4, 0.25);
  const FaberValues v = faber_values(map, z, 15);
  for (int m = 0; m <= 15; ++m) {
    CHECK(std::abs(v.value[m] - eval_faber(t, m, z)) < 1e-12);
    CHECK(std::abs(v.ftilde(m) - eval_ftilde(t, m, z)) < 1e-12);
  }
  CHECK(v.ftilde(0) == cplx(0.0));
  CHECK(v.ftilde(-2) == cplx(0.0));
}

TEST_CASE("exterior helpers avoid the cancellation in F_m(Psi(w)) - w^m") {
  std::mt19937_64 rng(23);
  const ExteriorMap map = ft::random_map(rng, 3);
  const FaberTable t = build_faber(map, 10);
  const cplx w = std::polar(1.4, 0.8);
  const cplx z = map.eval(w);
  for (int m = 1; m <= 10; ++m) {
    const cplx direct = eval_faber(t, m, z) - std::pow(w, m);
    CHECK(std::abs(faber_minus_power(t, m, w) - direct) < 1e-11);
    const cplx e_direct = eval_ftilde(t, m, z) - eval_G(map, m, w);
    CHECK(std::abs(ftilde_minus_G(t, m, w) - e_direct) < 1e-11);
  }
  for (int p = -5; p <= 0; ++p) CHECK(std::abs(ftilde_minus_G(t, p, w) + eval_G(map, p, w)) < 1e-15);
}

TEST_CASE("argument errors") {
  const FaberTable t = build_faber(ExteriorMap::ellipse(0.2), 4);
  CHECK_THROWS_AS(build_faber(ExteriorMap::disk(), 0), ArgumentError);
  CHECK_THROWS_AS(eval_faber(t, 5, 0.0), IndexError);
  CHECK_THROWS_AS(eval_faber(t, -1, 0.0), IndexError);
  CHECK_THROWS_AS(eval_ftilde(t, 5, 0.0), IndexError);
  CHECK(eval_ftilde(t, 0, 1.0) == cplx(0.0));
  CHECK_THROWS_AS(eval_G(ExteriorMap({0.0, 1.0}), 1, cplx(1.0)), NumericError);
}

TEST_CASE("disk: F_m = z^m and every Grunsky coefficient vanishes") {
  const FaberTable t = build_faber(ExteriorMap::disk(), 6);
  for (int m = 0; m <= 6; ++m)
    for (int j = 0; j <= 6; ++j) CHECK(t.monomial_coeffs()(m, j) == cplx(m == j ? 1.0 : 0.0));
  CHECK(t.grunsky().cwiseAbs().maxCoeff() == 0.0);
}
