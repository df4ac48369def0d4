#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "koebe/families.hpp"
#include "koebe/maps.hpp"
#include "koebe/series.hpp"
#include "koebe/shear.hpp"
#include "oracles.hpp"

using koebe::AnalyticMap;
using koebe::complex;
using koebe::HarmonicMap;
using koebe::MartyState;
using koebe::Series;

TEST_CASE("marty generator") {
  const MartyState koebe_case = koebe::marty_generate(2.0, 0.0, 20);
  for (int n = 0; n <= 20; ++n) {
    CHECK(std::abs(koebe_case.A[static_cast<std::size_t>(n)] - double(n)) < 1e-12);
    CHECK(koebe_case.B[static_cast<std::size_t>(n)] == 0.0);
  }

  const MartyState st = koebe::marty_generate(2.5, 0.5, 8);
  CHECK(std::abs(st.A[3] - 14.0 / 3.0) < 1e-14);
  CHECK(std::abs(st.B[3] - 5.0 / 3.0) < 1e-14);
  CHECK(st.A[0] == 0.0);
  CHECK(st.A[1] == 1.0);
  CHECK(st.B[1] == 0.0);

  // with B_2 = 0 the A-sequence is exactly the k_a coefficient recurrence
  const MartyState ka = koebe::marty_generate(1.3, 0.0, 16);
  const Series s = koebe::generalized_koebe(1.3).series(16);
  for (int n = 0; n <= 16; ++n)
    CHECK(std::abs(ka.A[static_cast<std::size_t>(n)] - s[n].real()) < 1e-13);

  CHECK_THROWS_AS(koebe::marty_generate(1.0, 0.0, 1), koebe::BadParameter);
}

TEST_CASE("sum and difference sequences satisfy the scalar recurrence") {
  const MartyState st = koebe::marty_generate(1.7, 0.45, 24);
  for (double lam : {1.0, -1.0}) {
    const double seed = st.A2 + lam * st.B2;
    for (int n = 2; n < 24; ++n) {
      const double sn = st.A[static_cast<std::size_t>(n)] + lam * st.B[static_cast<std::size_t>(n)];
      const double snm = st.A[static_cast<std::size_t>(n) - 1] + lam * st.B[static_cast<std::size_t>(n) - 1];
      const double snp = st.A[static_cast<std::size_t>(n) + 1] + lam * st.B[static_cast<std::size_t>(n) + 1];
      CHECK(std::abs((n + 1) * snp - 2.0 * seed * sn - (n - 1) * snm) < 1e-12 * (n + 1));
    }
  }
}

TEST_CASE("marty residuals of K_{a,R}") {
  for (double a : {0.0, 1.0, 2.0}) {
    for (double R : {0.0, 0.5, 1.0}) {
      const auto res = koebe::marty_residuals(koebe::kar_closed_form(a, R), 40);
      for (std::size_t i = 0; i < res.size(); ++i) {
        const double n2 = double(i + 2) * double(i + 2);
        CHECK(res[i].first <= 1e-10 * n2);
        CHECK(res[i].second <= 1e-10 * n2);
      }
    }
  }
  // also through the shear-built harmonic Koebe
  const auto res = koebe::marty_residuals(koebe::harmonic_koebe(), 40);
  for (std::size_t i = 0; i < res.size(); ++i) {
    const double n2 = double(i + 2) * double(i + 2);
    CHECK(res[i].first <= 1e-10 * n2);
    CHECK(res[i].second <= 1e-10 * n2);
  }
}

TEST_CASE("marty relations are not rotation invariant") {
  const HarmonicMap rot = koebe::rotate(koebe::kar_closed_form(2.0, 1.0), complex{0.0, 1.0});
  const auto res = koebe::marty_residuals(rot, 6);
  // at n = 2 the a-relation residual is |(-14) - (-12.5 + 0.5 + 1)| = 3
  CHECK(std::abs(res[0].first - 3.0) < 1e-12);
}

TEST_CASE("marty residuals preconditions") {
  const Series h = Series::identity(8);
  const Series g_bad = oracles::monomials({0.0, 0.5}, 8);
  CHECK_THROWS_AS(koebe::marty_residuals(h, g_bad, 8), koebe::BadParameter);
  CHECK_THROWS_AS(koebe::marty_residuals(h, Series::zero(8), 1), koebe::BadParameter);
  CHECK(koebe::marty_residuals(h, Series::zero(8), 2).empty());  // no checkable orders yet
}

TEST_CASE("ode residual") {
  CHECK(koebe::ode_residual(koebe::generalized_koebe(1.5).series(32), 3.0) <= 1e-12);
  CHECK(koebe::ode_residual(koebe::generalized_koebe(2.0).series(32), 4.0) <= 1e-12);
  CHECK(koebe::ode_residual(koebe::k0_map().series(32), 0.0) <= 1e-12);

  // S = z with alpha = 2 misses by exactly 2 at first order
  CHECK(std::abs(koebe::ode_residual(Series::identity(8), 2.0) - 2.0) < 1e-15);

  CHECK_THROWS_AS(koebe::ode_residual(Series::one(8), 1.0), koebe::BadParameter);
  CHECK_THROWS_AS(koebe::ode_residual(scale(Series::identity(8), 2.0), 1.0),
                  koebe::BadParameter);
}

TEST_CASE("koebe transform at zero is the identity") {
  const HarmonicMap f = koebe::kar_closed_form(2.0, 1.0);
  const HarmonicMap t = koebe::koebe_transform(f, complex{});
  CHECK(max_coeff_diff(t.analytic_part().series(16), f.analytic_part().series(16)) < 1e-12);
  CHECK(max_coeff_diff(t.coanalytic_part().series(16), f.coanalytic_part().series(16)) < 1e-12);
  const complex z{0.3, 0.2};
  CHECK(std::abs(t.analytic_part().value(z) - f.analytic_part().value(z)) < 1e-13);
}

TEST_CASE("koebe transform preserves the normalization") {
  for (const complex zeta : {complex{0.3, 0.0}, complex{0.1, 0.2}, complex{-0.25, 0.1}}) {
    const HarmonicMap t =
        koebe::koebe_transform(koebe::harmonic_from_analytic(koebe::koebe_map()), zeta);
    const Series h = t.analytic_part().series(2);
    CHECK(std::abs(h[0]) <= 1e-11);
    CHECK(std::abs(h[1] - 1.0) <= 1e-11);
    CHECK(std::abs(t.analytic_part().value(complex{})) <= 1e-12);
  }
}

TEST_CASE("first-order drift of a_2 under the koebe transform") {
  auto a2_of = [](complex zeta) {
    const HarmonicMap t =
        koebe::koebe_transform(koebe::harmonic_from_analytic(koebe::koebe_map()), zeta);
    return t.analytic_part().series(2)[2];
  };
  // For k = k_2 the linear terms (3a_3 - 2a_2^2) zeta - conj(zeta) cancel on
  // the real axis; in fact a real-axis Koebe transform fixes k entirely.
  for (double zeta : {0.1, 0.3}) CHECK(std::abs(a2_of(zeta) - 2.0) <= 1e-10);

  // Off the axis the first-order prediction 2 + zeta - conj(zeta) holds with
  // a quadratically small remainder.
  auto residual = [&](complex zeta) {
    return std::abs(a2_of(zeta) - (2.0 + zeta - std::conj(zeta)));
  };
  const complex dir{0.6, 0.8};
  const double r1 = residual(0.04 * dir);
  const double r2 = residual(0.02 * dir);
  CHECK(r1 < 0.05);
  CHECK(r1 / r2 > 3.4);
  CHECK(r1 / r2 < 4.6);
}

TEST_CASE("transform series agree with sampled coefficients") {
  const HarmonicMap f = koebe::kar_closed_form(1.5, 0.5);
  const complex zeta{0.2, 0.1};
  const HarmonicMap t = koebe::koebe_transform(f, zeta);
  const Series hs = t.analytic_part().series(16);
  const Series sampled = koebe::coefficients_from_samples(
      [&](complex z) { return t.analytic_part().value(z); }, 0.5, 16);
  for (int n = 0; n <= 16; ++n)
    CHECK(std::abs(hs[n] - sampled[n]) <= 1e-8 * (1.0 + std::abs(hs[n])));
}

TEST_CASE("koebe transform error paths") {
  const HarmonicMap f = koebe::kar_closed_form(1.0, 0.5);
  CHECK_THROWS_AS(koebe::koebe_transform(f, complex{1.2, 0.0}), koebe::PointOutsideDisk);

  const HarmonicMap stationary = koebe::HarmonicMap(
      koebe::custom_map(
          "crit", [](complex z) { return (z - 0.5) * (z - 0.5); },
          [](complex z) { return 2.0 * (z - 0.5); }, [](int n) { return Series::zero(n); }),
      koebe::zero_map(), koebe::Provenance{"test", {}});
  CHECK_THROWS_AS(koebe::koebe_transform(stationary, complex{0.5, 0.0}),
                  koebe::DegenerateDerivative);
}

TEST_CASE("affine change") {
  const HarmonicMap f = koebe::kar_closed_form(2.0, 1.0);
  const HarmonicMap same = koebe::affine_change(f, complex{});
  CHECK(max_coeff_diff(same.analytic_part().series(12), f.analytic_part().series(12)) < 1e-14);

  // with g'(0) = 0 the new co-analytic part starts at -eps
  const complex eps{0.3, -0.2};
  const HarmonicMap ch = koebe::affine_change(f, eps);
  CHECK(std::abs(ch.coanalytic_part().series(1)[1] + eps) < 1e-14);
  CHECK(std::abs(ch.analytic_part().series(1)[1] - 1.0) < 1e-14);

  // choosing eps = omega_zeta(0) after a Koebe transform kills g'(0)
  const complex zeta{0.2, 0.0};
  const HarmonicMap kt = koebe::koebe_transform(f, zeta);
  const complex om0 = f.coanalytic_part().derivative(zeta) /
                      std::conj(f.analytic_part().derivative(zeta));
  const HarmonicMap fz = koebe::affine_change(kt, om0);
  CHECK(std::abs(fz.coanalytic_part().series(1)[1]) <= 1e-11);
  CHECK(std::abs(fz.analytic_part().series(1)[1] - 1.0) <= 1e-11);

  CHECK_THROWS_AS(koebe::affine_change(f, complex{1.0, 0.0}), koebe::BadParameter);

  const HarmonicMap weird = koebe::HarmonicMap(
      koebe::identity_map(),
      koebe::custom_map(
          "steep", [](complex z) { return 2.0 * z; }, [](complex) { return complex{2.0}; },
          [](int n) { return scale(Series::identity(n), 2.0); }),
      koebe::Provenance{"test", {}});
  CHECK_THROWS_AS(koebe::affine_change(weird, complex{0.5, 0.0}),
                  koebe::DegenerateNormalizer);
}

TEST_CASE("transforms preserve sense-preservation") {
  const HarmonicMap f = koebe::kar_closed_form(2.0, 1.0);
  const complex zeta{0.2, 0.1};
  const HarmonicMap kt = koebe::koebe_transform(f, zeta);
  const complex eps = f.coanalytic_part().derivative(zeta) /
                      std::conj(f.analytic_part().derivative(zeta));
  const HarmonicMap fz = koebe::affine_change(kt, eps);
  for (int i = 1; i <= 8; ++i) {
    const double r = 0.9 * i / 8.0;
    for (int j = 0; j < 12; ++j) {
      const complex z = std::polar(r, 2.0 * std::numbers::pi * j / 12.0);
      CHECK(koebe::jacobian(kt, z) > 0.0);
      CHECK(koebe::jacobian(fz, z) > 0.0);
    }
  }
}

TEST_CASE("variational expansion residual vanishes at zeta = 0") {
  const auto r = koebe::variational_expansion_residual(koebe::kar_closed_form(2.0, 1.0),
                                                       complex{}, 2);
  CHECK(r.first < 1e-12);
  CHECK(r.second < 1e-12);
}

TEST_CASE("expansion remainder shrinks quadratically") {
  const HarmonicMap f = koebe::kar_closed_form(2.0, 1.0);
  const complex dir = std::polar(1.0, std::numbers::pi / 4.0);
  for (int n : {2, 3}) {
    const auto big = koebe::variational_expansion_residual(f, 0.02 * dir, n);
    const auto small = koebe::variational_expansion_residual(f, 0.01 * dir, n);
    CHECK(big.first / small.first > 3.5);
    CHECK(big.first / small.first < 4.5);
    CHECK(big.second / small.second > 3.5);
    CHECK(big.second / small.second < 4.5);
  }
}

TEST_CASE("expansion holds for the analytic Koebe map") {
  const HarmonicMap k2 = koebe::harmonic_from_analytic(koebe::koebe_map());
  const complex dir{0.6, 0.8};  // real zeta would fix k_2 exactly
  const auto r = koebe::variational_expansion_residual(k2, 0.01 * dir, 3);
  CHECK(r.first <= 1e-2);    // O(|zeta|^2) with a modest constant
  CHECK(r.second <= 1e-13);  // co-analytic part stays zero
  const auto r2 = koebe::variational_expansion_residual(k2, 0.005 * dir, 3);
  CHECK(r.first / r2.first > 3.5);
  CHECK(r.first / r2.first < 4.5);
}

TEST_CASE("expansion holds for a non-extremal real-coefficient shear") {
  const HarmonicMap f = koebe::shear(
      koebe::koebe_map(),
      koebe::custom_map(
          "zsq", [](complex z) { return z * z; }, [](complex z) { return 2.0 * z; },
          [](int n) {
            return n >= 2 ? mul(Series::identity(n), Series::identity(n)) : Series::zero(n);
          }),
      0.0);
  // its coefficients break the Marty relation (3 A_3 = 10 vs 9), yet the
  // first-order transform expansion still holds
  const Series h = f.analytic_part().series(3);
  CHECK(std::abs(3.0 * h[3] - 10.0) < 1e-12);
  const complex dir{0.6, 0.8};
  const auto big = koebe::variational_expansion_residual(f, 0.02 * dir, 2);
  const auto small = koebe::variational_expansion_residual(f, 0.01 * dir, 2);
  CHECK(big.first / small.first > 3.4);
  CHECK(big.first / small.first < 4.6);
}

TEST_CASE("variational expansion preconditions") {
  const HarmonicMap f = koebe::kar_closed_form(2.0, 1.0);
  CHECK_THROWS_AS(koebe::variational_expansion_residual(f, complex{0.1, 0.0}, 2),
                  koebe::BadParameter);
  const HarmonicMap rot = koebe::rotate(f, complex{0.0, 1.0});
  CHECK_THROWS_AS(koebe::variational_expansion_residual(rot, complex{0.01, 0.0}, 2),
                  koebe::BadParameter);
}
