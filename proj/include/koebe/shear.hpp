#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koebe/errors.hpp"
#include "koebe/maps.hpp"
#include "koebe/quadrature.hpp"
#include "koebe/series.hpp"

namespace koebe {

// Parameters of a generalized harmonic Koebe function K_H(lambda, a, mu, R):
// h - lambda g = k_a and g'/h' = mu l_R, with |lambda| = |mu| = 1.
struct GHKParams {
  complex lambda{1.0, 0.0};
  complex a{0.0, 0.0};
  complex mu{1.0, 0.0};
  double R = 0.0;

  void validate() const {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
      throw BadParameter("lambda must be unimodular, got |lambda| = " +
                         std::to_string(std::abs(lambda)));
    if (std::abs(std::abs(mu) - 1.0) > 1e-12)
      throw BadParameter("mu must be unimodular, got |mu| = " + std::to_string(std::abs(mu)));
    if (!(R >= 0.0 && R <= 1.0))
      throw BadParameter("R must lie in [0,1], got " + std::to_string(R));
  }

  // Order a + R of the family the map is extremal for; defined for the
  // real-parameter case lambda = mu = 1.
  std::optional<double> order() const {
    const bool real_case = std::abs(a.imag()) <= 1e-14 &&
                           std::abs(lambda - complex{1.0, 0.0}) <= 1e-12 &&
                           std::abs(mu - complex{1.0, 0.0}) <= 1e-12;
    if (!real_case) return std::nullopt;
    return a.real() + R;
  }
};

struct Provenance {
  std::string tag;
  std::vector<std::pair<std::string, complex>> params;
};

// A planar harmonic map f = h + conj(g) in its canonical decomposition.
class HarmonicMap {
 public:
  HarmonicMap(AnalyticMap h, AnalyticMap g, Provenance prov)
      : h_(std::move(h)), g_(std::move(g)), prov_(std::move(prov)) {}

  const AnalyticMap& analytic_part() const { return h_; }
  const AnalyticMap& coanalytic_part() const { return g_; }
  const Provenance& provenance() const { return prov_; }

 private:
  AnalyticMap h_;
  AnalyticMap g_;
  Provenance prov_;
};

inline complex eval_harmonic(const HarmonicMap& f, complex z) {
  return f.analytic_part().value(z) + std::conj(f.coanalytic_part().value(z));
}

inline complex dilatation(const HarmonicMap& f, complex z) {
  const complex hp = f.analytic_part().derivative(z);
  if (std::abs(hp) <= 1e-14)
    throw DegenerateDerivative("dilatation undefined where h' vanishes");
  return f.coanalytic_part().derivative(z) / hp;
}

inline double jacobian(const HarmonicMap& f, complex z) {
  return std::norm(f.analytic_part().derivative(z)) -
         std::norm(f.coanalytic_part().derivative(z));
}

namespace detail {

inline constexpr double kShearQuadTol = 1e-10;
inline constexpr int kShearQuadPanels = 1 << 16;

// Integrand h'(t) = phi'(t) / (1 - e^{2 i theta} omega(t)) of the shear
// system, with the sense-preservation guard |omega| < 1 checked at every
// quadrature node.
inline complex shear_hprime(const AnalyticMap& phi, const AnalyticMap& omega, complex e2t,
                            complex t) {
  const complex w = omega.value(t);
  if (std::abs(w) >= 1.0)
    throw DilatationOutOfRange("|omega(z)| = " + std::to_string(std::abs(w)) +
                               " >= 1 at a requested point");
  return phi.derivative(t) / (1.0 - e2t * w);
}

}  // namespace detail

// Harmonic shear of phi in the theta direction with dilatation omega:
// h - e^{2 i theta} g = phi, g' = omega h', h(0) = g(0) = 0.
//
// Pointwise values integrate h' along the radial segment [0, z]; series come
// from series division and integration at the requested truncation.
inline HarmonicMap shear(const AnalyticMap& phi, const AnalyticMap& omega, double theta) {
  if (!(theta >= 0.0 && theta < std::numbers::pi))
    throw BadParameter("shear direction must lie in [0, pi), got " + std::to_string(theta));
  const complex e2t = std::polar(1.0, 2.0 * theta);

  auto h_value = [phi, omega, e2t](complex z) {
    detail::require_in_disk(z);
    auto f = [&](complex t) { return detail::shear_hprime(phi, omega, e2t, t); };
    return integrate_segment(f, complex{}, z, detail::kShearQuadTol, detail::kShearQuadPanels);
  };
  auto h_deriv = [phi, omega, e2t](complex z) {
    return detail::shear_hprime(phi, omega, e2t, z);
  };
  auto h_series = [phi, omega, e2t](int n) {
    const int m = std::max(n - 1, 0);
    const Series dphi = derivative(phi.series(n));
    const Series denom = sub(Series::one(m), scale(omega.series(m), e2t));
    return truncated(integrate(div(dphi, denom)), n);
  };

  auto g_value = [phi, omega, e2t](complex z) {
    detail::require_in_disk(z);
    auto f = [&](complex t) {
      return omega.value(t) * detail::shear_hprime(phi, omega, e2t, t);
    };
    return integrate_segment(f, complex{}, z, detail::kShearQuadTol, detail::kShearQuadPanels);
  };
  auto g_deriv = [phi, omega, e2t](complex z) {
    return omega.value(z) * detail::shear_hprime(phi, omega, e2t, z);
  };
  auto g_series = [phi, omega, e2t](int n) {
    const int m = std::max(n - 1, 0);
    const Series hp = div(derivative(phi.series(n)),
                          sub(Series::one(m), scale(omega.series(m), e2t)));
    return truncated(integrate(mul(omega.series(m), hp)), n);
  };

  AnalyticMap h = custom_map("shear.h(" + phi.name() + ")", std::move(h_value),
                             std::move(h_deriv), std::move(h_series));
  AnalyticMap g = custom_map("shear.g(" + phi.name() + ")", std::move(g_value),
                             std::move(g_deriv), std::move(g_series));
  return HarmonicMap(std::move(h), std::move(g),
                     Provenance{"shear", {{"theta", complex{theta, 0.0}}}});
}

// K_H(lambda, a, mu, R), built as the shear of k_a with dilatation mu l_R
// in the direction with e^{2 i theta} = lambda.
inline HarmonicMap generalized_harmonic_koebe(const GHKParams& p) {
  p.validate();
  double theta = 0.5 * std::arg(p.lambda);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  const AnalyticMap omega = scale_map(lens_map(p.R), p.mu);
  HarmonicMap sheared = shear(generalized_koebe(p.a), omega, theta);
  Provenance prov{"ghk",
                  {{"lambda", p.lambda}, {"a", p.a}, {"mu", p.mu}, {"R", complex{p.R, 0.0}}}};
  return HarmonicMap(sheared.analytic_part(), sheared.coanalytic_part(), std::move(prov));
}

// K_{a,R} in closed form: h = (k_{a+R} + k_a)/2, g = (k_{a+R} - k_a)/2.
// Independent of the shear route, so the two constructions cross-check
// each other; this one evaluates pointwise without quadrature.
inline HarmonicMap kar_closed_form(double a, double R) {
  if (!(R >= 0.0 && R <= 1.0))
    throw BadParameter("R must lie in [0,1], got " + std::to_string(R));
  const AnalyticMap sum = generalized_koebe(complex{a + R, 0.0});
  const AnalyticMap diff = generalized_koebe(complex{a, 0.0});
  AnalyticMap h = combine_maps(sum, diff, 0.5, 0.5, "kar.h");
  AnalyticMap g = combine_maps(sum, diff, 0.5, -0.5, "kar.g");
  return HarmonicMap(std::move(h), std::move(g),
                     Provenance{"kar", {{"a", complex{a, 0.0}}, {"R", complex{R, 0.0}}}});
}

// The harmonic Koebe function: horizontal shear of k with dilatation z.
inline HarmonicMap harmonic_koebe() {
  HarmonicMap sheared = shear(koebe_map(), identity_map(), 0.0);
  return HarmonicMap(sheared.analytic_part(), sheared.coanalytic_part(),
                     Provenance{"hkoebe", {}});
}

// The half-plane map: vertical shear of z/(1-z) with dilatation -z.
inline HarmonicMap halfplane_map() {
  HarmonicMap sheared =
      shear(halfplane_phi(), scale_map(identity_map(), -1.0), 0.5 * std::numbers::pi);
  return HarmonicMap(sheared.analytic_part(), sheared.coanalytic_part(),
                     Provenance{"halfplane", {}});
}

// An analytic map viewed as a harmonic one (g = 0).
inline HarmonicMap harmonic_from_analytic(const AnalyticMap& h) {
  return HarmonicMap(h, zero_map(), Provenance{"analytic", {}});
}

// The rotation conj(eta) f(eta z): analytic part conj(eta) h(eta z),
// co-analytic part eta g(eta z).
inline HarmonicMap rotate(const HarmonicMap& f, complex eta) {
  if (std::abs(std::abs(eta) - 1.0) > 1e-12)
    throw BadParameter("rotation factor must be unimodular, got |eta| = " +
                       std::to_string(std::abs(eta)));
  const AnalyticMap h = f.analytic_part();
  const AnalyticMap g = f.coanalytic_part();
  const complex etac = std::conj(eta);

  AnalyticMap hr = custom_map(
      "rotated(" + h.name() + ")", [h, eta, etac](complex z) { return etac * h.value(eta * z); },
      [h, eta](complex z) { return h.derivative(eta * z); },
      [h, eta, etac](int n) {
        const Series s = h.series(n);
        std::vector<complex> c(static_cast<std::size_t>(n) + 1);
        complex p = etac;  // conj(eta) eta^k at k = 0
        for (int k = 0; k <= n; ++k, p *= eta) c[static_cast<std::size_t>(k)] = p * s[k];
        return Series(std::move(c));
      });
  AnalyticMap gr = custom_map(
      "rotated(" + g.name() + ")", [g, eta](complex z) { return eta * g.value(eta * z); },
      [g, eta](complex z) { return eta * eta * g.derivative(eta * z); },
      [g, eta](int n) {
        const Series s = g.series(n);
        std::vector<complex> c(static_cast<std::size_t>(n) + 1);
        complex p = eta;  // eta^{k+1} at k = 0
        for (int k = 0; k <= n; ++k, p *= eta) c[static_cast<std::size_t>(k)] = p * s[k];
        return Series(std::move(c));
      });
  Provenance prov{"rotate(" + f.provenance().tag + ")", {{"eta", eta}}};
  return HarmonicMap(std::move(hr), std::move(gr), std::move(prov));
}

}  // namespace koebe
