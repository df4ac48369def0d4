#pragma once

// Test-only oracles, kept independent of the code paths they check:
// closed-form expansions assembled from raw series arithmetic, and small
// random generators for property-style sweeps.

#include <complex>
#include <random>
#include <vector>

#include "koebe/series.hpp"

namespace oracles {

using koebe::complex;
using koebe::Series;

inline Series monomials(std::vector<complex> low, int order) {
  low.resize(static_cast<std::size_t>(order) + 1);
  return Series(std::move(low));
}

// 1/(1-z)^2 = sum (n+1) z^n
inline Series inv_one_minus_z_sq(int order) {
  std::vector<complex> c(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) c[static_cast<std::size_t>(n)] = double(n + 1);
  return Series(std::move(c));
}

// 1/(1-z)^3 = sum (n+1)(n+2)/2 z^n
inline Series inv_one_minus_z_cubed(int order) {
  std::vector<complex> c(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n)
    c[static_cast<std::size_t>(n)] = double(n + 1) * double(n + 2) / 2.0;
  return Series(std::move(c));
}

// Analytic part of the harmonic Koebe map, (z - z^2/2 + z^3/6)/(1-z)^3.
inline Series harmonic_koebe_h(int order) {
  return mul(monomials({0.0, 1.0, -0.5, 1.0 / 6.0}, order), inv_one_minus_z_cubed(order));
}

// Co-analytic part, (z^2/2 + z^3/6)/(1-z)^3.
inline Series harmonic_koebe_g(int order) {
  return mul(monomials({0.0, 0.0, 0.5, 1.0 / 6.0}, order), inv_one_minus_z_cubed(order));
}

inline complex harmonic_koebe_h_value(complex z) {
  return (z - 0.5 * z * z + z * z * z / 6.0) / std::pow(1.0 - z, 3);
}

inline complex harmonic_koebe_g_value(complex z) {
  return (0.5 * z * z + z * z * z / 6.0) / std::pow(1.0 - z, 3);
}

// Half-plane map parts, (z - z^2/2)/(1-z)^2 and -(z^2/2)/(1-z)^2.
inline Series halfplane_h(int order) {
  return mul(monomials({0.0, 1.0, -0.5}, order), inv_one_minus_z_sq(order));
}

inline Series halfplane_g(int order) {
  return mul(monomials({0.0, 0.0, -0.5}, order), inv_one_minus_z_sq(order));
}

inline complex halfplane_h_value(complex z) {
  return (z - 0.5 * z * z) / ((1.0 - z) * (1.0 - z));
}

inline complex halfplane_g_value(complex z) {
  return -0.5 * z * z / ((1.0 - z) * (1.0 - z));
}

// k_0 assembled from logarithms: (1/2)[log(1+z) - log(1-z)].
inline Series k0_series(int order) {
  const Series lp = koebe::log(monomials({1.0, 1.0}, order));
  const Series lm = koebe::log(monomials({1.0, -1.0}, order));
  return scale(sub(lp, lm), 0.5);
}

// k_a by the exp/log route, independent of the coefficient recurrence.
inline Series gk_series_explog(complex a, int order) {
  const Series cayley = div(monomials({1.0, 1.0}, order), monomials({1.0, -1.0}, order));
  return scale(sub(koebe::pow(cayley, a), Series::one(order)), 1.0 / (2.0 * a));
}

// Lens map as tanh(R k_0) = (E - 1)/(E + 1) with E = exp(2 R k_0).
inline Series lens_series_tanh(double R, int order) {
  const Series e = koebe::exp(scale(k0_series(order), 2.0 * R));
  return div(sub(e, Series::one(order)), add(e, Series::one(order)));
}

inline Series random_series(std::mt19937_64& rng, int order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<complex> c(static_cast<std::size_t>(order) + 1);
  for (auto& v : c) v = complex{u(rng), u(rng)};
  return Series(std::move(c));
}

inline complex random_point(std::mt19937_64& rng, double max_abs) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(max_abs * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

}  // namespace oracles
