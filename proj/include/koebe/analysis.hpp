#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "koebe/errors.hpp"
#include "koebe/maps.hpp"
#include "koebe/series.hpp"
#include "koebe/shear.hpp"

namespace koebe {

// Two distinct disk points mapped (nearly) to the same image point.
struct CollisionWitness {
  complex z1;
  complex z2;
  double image_gap = 0.0;
  double preimage_gap = 0.0;
};

// The analytic collision pair for K_{a,R} with |a| > 2: z_1 solves
// (1+z)/(1-z) = e^{i pi / |a|}, so z_1 = i tan(pi / (2|a|)), and the real
// coefficients of h and g force f(z_1) = f(conj(z_1)).
inline std::pair<complex, complex> collision_points(double a) {
  if (!(std::abs(a) > 2.0))
    throw BadParameter("collision points exist only for |a| > 2, got a = " + std::to_string(a));
  const complex z1{0.0, std::tan(std::numbers::pi / (2.0 * std::abs(a)))};
  return {z1, std::conj(z1)};
}

inline CollisionWitness collision_witness(double a, const HarmonicMap& f) {
  const auto [z1, z2] = collision_points(a);
  CollisionWitness w;
  w.z1 = z1;
  w.z2 = z2;
  w.image_gap = std::abs(eval_harmonic(f, z1) - eval_harmonic(f, z2));
  w.preimage_gap = std::abs(z1 - z2);
  return w;
}

inline CollisionWitness collision_witness(double a, double R) {
  return collision_witness(a, kar_closed_form(a, R));
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double unit_double(std::uint64_t bits) {
  return double(bits >> 11) * 0x1p-53;
}

// Deterministic low-discrepancy point set in |z| <= 0.95: the additive
// recurrence with the plastic-number fractions, offset by the seed.
inline std::vector<complex> probe_points(int samples, std::uint64_t seed) {
  constexpr double kAlpha1 = 0.7548776662466927;
  constexpr double kAlpha2 = 0.5698402909980532;
  std::uint64_t state = seed;
  const double s1 = unit_double(splitmix64(state));
  const double s2 = unit_double(splitmix64(state));
  std::vector<complex> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    double u = std::fmod(s1 + kAlpha1 * double(k + 1), 1.0);
    double v = std::fmod(s2 + kAlpha2 * double(k + 1), 1.0);
    pts.push_back(std::polar(0.95 * std::sqrt(u), 2.0 * std::numbers::pi * v));
  }
  return pts;
}

}  // namespace detail

// Deterministic collision search: evaluates f on a quasi-random point set
// (plus any injected extras) and reports the worst pair whose image gap is
// below 1e-6 times its preimage gap. The coupling of the two gaps keeps
// mere crowding near the boundary from being flagged.
inline std::optional<CollisionWitness> injectivity_probe(const HarmonicMap& f, int samples,
                                                         std::uint64_t seed,
                                                         const std::vector<complex>& extra = {}) {
  if (samples < 2) throw BadParameter("injectivity probe needs at least 2 samples");
  std::vector<complex> pts = detail::probe_points(samples, seed);
  pts.insert(pts.end(), extra.begin(), extra.end());

  std::vector<complex> vals;
  vals.reserve(pts.size());
  for (const complex& z : pts) vals.push_back(eval_harmonic(f, z));

  constexpr double kRatio = 1e-6;
  bool found = false;
  std::size_t bi = 0, bj = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dz2 = std::norm(pts[i] - pts[j]);
      if (dz2 <= 1e-30) continue;
      const double df2 = std::norm(vals[i] - vals[j]);
      if (df2 < kRatio * kRatio * dz2) {
        const double score = df2 / dz2;
        if (!found || score < best) {
          found = true;
          best = score;
          bi = i;
          bj = j;
        }
      }
    }
  }
  if (!found) return std::nullopt;
  CollisionWitness w;
  w.z1 = pts[bi];
  w.z2 = pts[bj];
  w.image_gap = std::abs(vals[bi] - vals[bj]);
  w.preimage_gap = std::abs(pts[bi] - pts[bj]);
  return w;
}

// Sharp growth bounds for order-alpha affine and linear invariant families:
//   (1/2a)[1 - ((1-r)/(1+r))^a] <= |f(z)| <= (1/2a)[((1+r)/(1-r))^a - 1].
inline std::pair<double, double> growth_bounds(double alpha, double r) {
  if (!(alpha >= 1.0)) throw BadParameter("order must be >= 1, got " + std::to_string(alpha));
  if (!(r > 0.0 && r < 1.0)) throw BadParameter("radius must lie in (0,1)");
  const double q = (1.0 + r) / (1.0 - r);
  return {(1.0 - std::pow(1.0 / q, alpha)) / (2.0 * alpha),
          (std::pow(q, alpha) - 1.0) / (2.0 * alpha)};
}

// Sharp distortion bounds:
//   (1-r)^{a-1}/(1+r)^{a+1} <= |h'| - |g'|,  |h'| + |g'| <= (1+r)^{a-1}/(1-r)^{a+1}.
inline std::pair<double, double> distortion_bounds(double alpha, double r) {
  if (!(alpha >= 1.0)) throw BadParameter("order must be >= 1, got " + std::to_string(alpha));
  if (!(r > 0.0 && r < 1.0)) throw BadParameter("radius must lie in (0,1)");
  return {std::pow(1.0 - r, alpha - 1.0) / std::pow(1.0 + r, alpha + 1.0),
          std::pow(1.0 + r, alpha - 1.0) / std::pow(1.0 - r, alpha + 1.0)};
}

struct BoundReport {
  double r = 0.0;
  double alpha = 0.0;
  double growth_lower = 0.0, growth_upper = 0.0;
  double distortion_lower = 0.0, distortion_upper = 0.0;
  double measured_growth = 0.0;         // |f(r)|
  double measured_distortion_sum = 0.0;   // |h'(r)| + |g'(r)|
  double measured_distortion_diff = 0.0;  // |h'(-r)| - |g'(-r)|
  bool growth_equality = false;
  bool distortion_upper_equality = false;
  bool distortion_lower_equality = false;

  bool all_equalities() const {
    return growth_equality && distortion_upper_equality && distortion_lower_equality;
  }
};

// Verifies the equality cases of the growth and distortion bounds for
// K_{a,R} with order alpha = a + R at the real points r and -r.
inline BoundReport equality_report(double a, double R, double r, double tol = 1e-9) {
  if (!(r > 0.0 && r < 1.0)) throw BadParameter("radius must lie in (0,1)");
  if (!(a >= -2.0 && a <= 2.0))
    throw BadParameter("equality cases need a in [-2,2], got " + std::to_string(a));
  if (!(R >= 0.0 && R <= 1.0)) throw BadParameter("R must lie in [0,1]");
  const double alpha = a + R;
  if (!(alpha >= 1.0))
    throw BadParameter("equality cases need order a + R >= 1, got " + std::to_string(alpha));

  const HarmonicMap f = kar_closed_form(a, R);
  BoundReport rep;
  rep.r = r;
  rep.alpha = alpha;
  std::tie(rep.growth_lower, rep.growth_upper) = growth_bounds(alpha, r);
  std::tie(rep.distortion_lower, rep.distortion_upper) = distortion_bounds(alpha, r);

  rep.measured_growth = std::abs(eval_harmonic(f, complex{r, 0.0}));
  const complex hp = f.analytic_part().derivative(complex{r, 0.0});
  const complex gp = f.coanalytic_part().derivative(complex{r, 0.0});
  rep.measured_distortion_sum = std::abs(hp) + std::abs(gp);
  const complex hm = f.analytic_part().derivative(complex{-r, 0.0});
  const complex gm = f.coanalytic_part().derivative(complex{-r, 0.0});
  rep.measured_distortion_diff = std::abs(hm) - std::abs(gm);

  auto matches = [tol](double x, double y) { return std::abs(x - y) <= tol * (1.0 + std::abs(y)); };
  rep.growth_equality = matches(rep.measured_growth, rep.growth_upper);
  rep.distortion_upper_equality = matches(rep.measured_distortion_sum, rep.distortion_upper);
  rep.distortion_lower_equality = matches(rep.measured_distortion_diff, rep.distortion_lower);
  return rep;
}

namespace detail {

// Taylor coefficients of phi' around z from samples on a small circle;
// the complex-step stencil generalized to 16 points. Radius 1e-3 keeps
// the k! / h^k rounding growth of the third derivative near 1e-10 while
// the aliasing tail stays far below it.
inline std::pair<complex, complex> second_third_derivative(const AnalyticMap& phi, complex z) {
  const double gap = 1.0 - std::abs(z);
  const double h = std::min(1e-3, 0.25 * gap);
  constexpr int kM = 16;
  complex c1{}, c2{};
  for (int j = 0; j < kM; ++j) {
    const double t = 2.0 * std::numbers::pi * double(j) / double(kM);
    const complex w = phi.derivative(z + std::polar(h, t));
    c1 += w * std::polar(1.0, -t);
    c2 += w * std::polar(1.0, -2.0 * t);
  }
  c1 /= double(kM) * h;
  c2 /= double(kM) * h * h;
  return {c1, 2.0 * c2};  // phi'', phi'''
}

}  // namespace detail

// Numerical Schwarzian from derivative samples alone.
inline complex schwarzian_numeric(const AnalyticMap& phi, complex z) {
  detail::require_in_disk(z);
  const complex p1 = phi.derivative(z);
  if (std::abs(p1) <= 1e-14)
    throw DegenerateDerivative("Schwarzian undefined where phi' vanishes");
  const auto [p2, p3] = detail::second_third_derivative(phi, z);
  const complex q = p2 / p1;
  return p3 / p1 - 1.5 * q * q;
}

// S(phi) = (phi''/phi')' - (1/2)(phi''/phi')^2, from the closed form when
// the map kind provides one, otherwise numerically.
inline complex schwarzian(const AnalyticMap& phi, complex z) {
  detail::require_in_disk(z);
  if (std::abs(phi.derivative(z)) <= 1e-14)
    throw DegenerateDerivative("Schwarzian undefined where phi' vanishes");
  if (phi.has_closed_schwarzian()) return phi.closed_schwarzian(z);
  return schwarzian_numeric(phi, z);
}

// sup over a polar mesh (radii up to 0.99, nested under doubling) of
// |S phi(z)| (1 - |z|^2)^2. The mesh contains the real axis, where the
// supremum is attained for every k_a.
inline double schwarzian_norm(const AnalyticMap& phi, int grid) {
  if (grid < 8) throw BadParameter("Schwarzian norm grid must be at least 8");
  double worst = 0.0;
  for (int i = 1; i <= grid; ++i) {
    const double r = 0.99 * double(i) / double(grid);
    for (int j = 0; j < grid; ++j) {
      const double t = 2.0 * std::numbers::pi * double(j) / double(grid);
      const complex z = std::polar(r, t);
      const double weight = (1.0 - std::norm(z)) * (1.0 - std::norm(z));
      worst = std::max(worst, std::abs(schwarzian(phi, z)) * weight);
    }
  }
  return worst;
}

}  // namespace koebe
