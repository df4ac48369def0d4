#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "koebe/errors.hpp"
#include "koebe/series.hpp"

namespace koebe {

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1,1] (positive half).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEstimate {
  complex integral;
  double error;
};

template <typename F>
PanelEstimate gk15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const complex fc = f(mid);
  complex kron = kKronrodWeights[7] * fc;
  complex gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const complex f1 = f(mid - half * kKronrodNodes[j]);
    const complex f2 = f(mid + half * kKronrodNodes[j]);
    kron += kKronrodWeights[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  kron *= half;
  gauss *= half;
  return {kron, std::abs(kron - gauss)};
}

}  // namespace detail

// Integral of an analytic integrand along the straight segment [z0, z1],
// by adaptive composite Gauss-Kronrod bisection. The per-panel budget is
// proportional to panel width, so accepted panels sum to at most abs_tol.
template <typename F>
complex integrate_segment(const F& f, complex z0, complex z1, double abs_tol = 1e-10,
                          int max_panels = 1 << 16) {
  const complex dz = z1 - z0;
  if (dz == complex{}) return complex{};
  auto g = [&](double s) { return f(z0 + s * dz) * dz; };

  struct Interval {
    double a, b;
  };
  std::vector<Interval> stack{{0.0, 1.0}};
  complex total{};
  int panels = 1;
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const auto est = detail::gk15(g, iv.a, iv.b);
    const double width = iv.b - iv.a;
    if (est.error <= abs_tol * width || width <= 0x1p-52) {
      total += est.integral;
      continue;
    }
    panels += 1;
    if (panels > max_panels)
      throw IntegrationFailure("adaptive quadrature exceeded " + std::to_string(max_panels) +
                               " panels before reaching tolerance");
    const double mid = 0.5 * (iv.a + iv.b);
    stack.push_back({iv.a, mid});
    stack.push_back({mid, iv.b});
  }
  return total;
}

}  // namespace koebe
