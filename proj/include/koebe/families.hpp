#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "koebe/errors.hpp"
#include "koebe/maps.hpp"
#include "koebe/series.hpp"
#include "koebe/shear.hpp"

namespace koebe {

// Real coefficient sequences generated by the coupled Marty recurrences
//   (n+1) A_{n+1} = 2 A_2 A_n + 2 B_2 B_n + (n-1) A_{n-1}
//   (n+1) B_{n+1} = 2 A_2 B_n + 2 B_2 A_n + (n-1) B_{n-1}
// from the normalized seed A_0 = B_0 = B_1 = 0, A_1 = 1.
struct MartyState {
  std::vector<double> A;
  std::vector<double> B;
  double A2 = 0.0;
  double B2 = 0.0;
};

inline MartyState marty_generate(double A2, double B2, int N) {
  if (N < 2) throw BadParameter("marty_generate needs N >= 2");
  MartyState st;
  st.A2 = A2;
  st.B2 = B2;
  st.A.assign(static_cast<std::size_t>(N) + 1, 0.0);
  st.B.assign(static_cast<std::size_t>(N) + 1, 0.0);
  st.A[1] = 1.0;
  st.A[2] = A2;
  st.B[2] = B2;
  for (int n = 2; n < N; ++n) {
    st.A[static_cast<std::size_t>(n) + 1] =
        (2.0 * A2 * st.A[static_cast<std::size_t>(n)] + 2.0 * B2 * st.B[static_cast<std::size_t>(n)] +
         double(n - 1) * st.A[static_cast<std::size_t>(n) - 1]) /
        double(n + 1);
    st.B[static_cast<std::size_t>(n) + 1] =
        (2.0 * A2 * st.B[static_cast<std::size_t>(n)] + 2.0 * B2 * st.A[static_cast<std::size_t>(n)] +
         double(n - 1) * st.B[static_cast<std::size_t>(n) - 1]) /
        double(n + 1);
  }
  return st;
}

// Residuals of the harmonic Marty relations on actual (complex) coefficients:
//   (n+1) a_{n+1} = 2 a_2 a_n + 2 b_2 conj(b_n) + (n-1) conj(a_{n-1})
//   (n+1) b_{n+1} = 2 a_2 conj(b_n) + 2 b_2 a_n + (n-1) conj(b_{n-1})
// Returns (|lhs - rhs| for the a-relation, same for the b-relation) for each
// n = 2 .. N-1, in that order.
inline std::vector<std::pair<double, double>> marty_residuals(const Series& h, const Series& g,
                                                              int N) {
  if (N < 2) throw BadParameter("marty_residuals needs N >= 2");
  if (std::abs(g[1]) > 1e-12)
    throw BadParameter("marty_residuals expects a map normalized with b_1 = 0");
  const complex a2 = h[2];
  const complex b2 = g[2];
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(N - 2));
  for (int n = 2; n <= N - 1; ++n) {
    const complex ra = double(n + 1) * h[n + 1] - 2.0 * a2 * h[n] - 2.0 * b2 * std::conj(g[n]) -
                       double(n - 1) * std::conj(h[n - 1]);
    const complex rb = double(n + 1) * g[n + 1] - 2.0 * a2 * std::conj(g[n]) - 2.0 * b2 * h[n] -
                       double(n - 1) * std::conj(g[n - 1]);
    out.emplace_back(std::abs(ra), std::abs(rb));
  }
  return out;
}

inline std::vector<std::pair<double, double>> marty_residuals(const HarmonicMap& f, int N) {
  return marty_residuals(f.analytic_part().series(N), f.coanalytic_part().series(N), N);
}

// Max coefficient residual of (1 - z^2) S' = 1 + alpha S for a normalized
// series (c_0 = 0, c_1 = 1), over orders n <= N-2.
inline double ode_residual(const Series& s, complex alpha) {
  if (std::abs(s[0]) > 1e-12 || std::abs(s[1] - 1.0) > 1e-12)
    throw BadParameter("ode_residual expects a series normalized to c_0 = 0, c_1 = 1");
  double worst = 0.0;
  for (int n = 0; n <= s.trunc_order() - 2; ++n) {
    complex r = double(n + 1) * s[n + 1] - alpha * s[n];
    if (n >= 1) r -= double(n - 1) * s[n - 1];
    if (n == 0) r -= 1.0;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

namespace detail {

// Taylor coefficients of the disk automorphism (z + zeta)/(1 + conj(zeta) z):
// zeta + (1 - |zeta|^2) sum_{k>=1} (-conj(zeta))^{k-1} z^k.
inline Series mobius_series(complex zeta, int order) {
  std::vector<complex> c(static_cast<std::size_t>(order) + 1);
  c[0] = zeta;
  const double j = 1.0 - std::norm(zeta);
  complex p = 1.0;
  for (int k = 1; k <= order; ++k, p *= -std::conj(zeta))
    c[static_cast<std::size_t>(k)] = j * p;
  return Series(std::move(c));
}

// Composition with a Mobius map has a nonzero inner constant term, so the
// Horner evaluation is carried at an enlarged working order before
// truncating back; the tail then contributes below coefficient tolerance
// for the low orders the transforms are read at.
inline constexpr int kTransformWorkOrder = 160;

inline Series transform_part_series(const AnalyticMap& part, complex zeta, complex scale_by,
                                    int out_order, int work_order) {
  const int w = std::max(work_order, out_order + 16);
  const Series composed = horner_compose(part.series(w), mobius_series(zeta, w), w);
  std::vector<complex> c(static_cast<std::size_t>(out_order) + 1);
  const complex at_zeta = part.value(zeta);
  for (int n = 0; n <= out_order; ++n) c[static_cast<std::size_t>(n)] = composed[n] * scale_by;
  c[0] -= at_zeta * scale_by;
  return Series(std::move(c));
}

}  // namespace detail

// Koebe transform K_zeta(f)(z) = [f((z+zeta)/(1+conj(zeta)z)) - f(zeta)]
// normalized by (1 - |zeta|^2) h'(zeta).
inline HarmonicMap koebe_transform(const HarmonicMap& f, complex zeta,
                                   int work_order = detail::kTransformWorkOrder) {
  detail::require_in_disk(zeta);
  const AnalyticMap h = f.analytic_part();
  const AnalyticMap g = f.coanalytic_part();
  const complex hpz = h.derivative(zeta);
  if (std::abs(hpz) <= 1e-14)
    throw DegenerateDerivative("Koebe transform undefined where h' vanishes");
  const complex d = (1.0 - std::norm(zeta)) * hpz;
  const complex zc = std::conj(zeta);

  auto mob = [zeta, zc](complex z) { return (z + zeta) / (1.0 + zc * z); };
  auto mobp = [zeta, zc](complex z) {
    const complex q = 1.0 + zc * z;
    return (1.0 - std::norm(zeta)) / (q * q);
  };

  AnalyticMap ht = custom_map(
      "koebe-transform.h",
      [h, mob, d, zeta](complex z) { return (h.value(mob(z)) - h.value(zeta)) / d; },
      [h, mob, mobp, d](complex z) { return h.derivative(mob(z)) * mobp(z) / d; },
      [h, zeta, d, work_order](int n) {
        return detail::transform_part_series(h, zeta, 1.0 / d, n, work_order);
      });
  const complex dc = std::conj(d);
  AnalyticMap gt = custom_map(
      "koebe-transform.g",
      [g, mob, dc, zeta](complex z) { return (g.value(mob(z)) - g.value(zeta)) / dc; },
      [g, mob, mobp, dc](complex z) { return g.derivative(mob(z)) * mobp(z) / dc; },
      [g, zeta, dc, work_order](int n) {
        return detail::transform_part_series(g, zeta, 1.0 / dc, n, work_order);
      });
  Provenance prov{"koebe-transform(" + f.provenance().tag + ")", {{"zeta", zeta}}};
  return HarmonicMap(std::move(ht), std::move(gt), std::move(prov));
}

// Affine change A_eps(f) = [f - conj(eps f)] / (1 - conj(eps) g'(0)).
// The analytic part becomes (h - conj(eps) g)/s and the co-analytic part
// (g - eps h)/conj(s), with s the normalizer above.
inline HarmonicMap affine_change(const HarmonicMap& f, complex eps) {
  if (std::abs(eps) >= 1.0)
    throw BadParameter("affine parameter must satisfy |eps| < 1, got " +
                       std::to_string(std::abs(eps)));
  const AnalyticMap h = f.analytic_part();
  const AnalyticMap g = f.coanalytic_part();
  const complex b1 = g.derivative(complex{});
  const complex s = 1.0 - std::conj(eps) * b1;
  if (std::abs(s) <= 1e-14)
    throw DegenerateNormalizer("affine change normalizer vanishes");

  AnalyticMap ht = combine_maps(h, g, 1.0 / s, -std::conj(eps) / s, "affine.h");
  AnalyticMap gt = combine_maps(g, h, 1.0 / std::conj(s), -eps / std::conj(s), "affine.g");
  Provenance prov{"affine(" + f.provenance().tag + ")", {{"eps", eps}}};
  return HarmonicMap(std::move(ht), std::move(gt), std::move(prov));
}

// First-order coefficient expansion of the renormalized transform
// f_zeta = A_{omega_zeta(0)}(K_zeta(f)) about zeta = 0, for maps with real
// coefficients A_n, B_n:
//   a_n* = A_n + [(n+1)A_{n+1} - 2A_2 A_n] zeta
//              - [2 conj(B_2) B_n + (n-1) A_{n-1}] conj(zeta) + o(|zeta|)
//   b_n* = B_n + [(n+1)B_{n+1} - 2B_2 A_n] zeta
//              - [2 conj(A_2) B_n + (n-1) B_{n-1}] conj(zeta) + o(|zeta|)
// Returns (|a_n* - predicted|, |b_n* - predicted|); the remainder should
// shrink quadratically under halving of zeta.
inline std::pair<double, double> variational_expansion_residual(const HarmonicMap& f,
                                                                complex zeta, int n) {
  if (std::abs(zeta) > 0.05)
    throw BadParameter("expansion residual is meaningful only for |zeta| <= 0.05");
  if (n < 1) throw BadParameter("coefficient index must be positive");

  const Series hs = f.analytic_part().series(n + 1);
  const Series gs = f.coanalytic_part().series(n + 1);
  for (int k = 0; k <= n + 1; ++k)
    if (std::abs(hs[k].imag()) > 1e-10 || std::abs(gs[k].imag()) > 1e-10)
      throw BadParameter("expansion residual expects real Taylor coefficients");

  // Dilatation of K_zeta(f) at the origin.
  const complex eps = f.coanalytic_part().derivative(zeta) /
                      std::conj(f.analytic_part().derivative(zeta));
  const HarmonicMap fz = affine_change(koebe_transform(f, zeta), eps);

  const complex an_star = fz.analytic_part().series(n)[n];
  const complex bn_star = fz.coanalytic_part().series(n)[n];

  const complex A2 = hs[2], B2 = gs[2];
  const complex An = hs[n], Bn = gs[n];
  const complex An1 = hs[n + 1], Bn1 = gs[n + 1];
  const complex Anm = hs[n - 1], Bnm = gs[n - 1];
  const complex zc = std::conj(zeta);

  const complex a_pred = An + (double(n + 1) * An1 - 2.0 * A2 * An) * zeta -
                         (2.0 * std::conj(B2) * Bn + double(n - 1) * Anm) * zc;
  const complex b_pred = Bn + (double(n + 1) * Bn1 - 2.0 * B2 * An) * zeta -
                         (2.0 * std::conj(A2) * Bn + double(n - 1) * Bnm) * zc;
  return {std::abs(an_star - a_pred), std::abs(bn_star - b_pred)};
}

}  // namespace koebe
