#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "koebe/errors.hpp"
#include "koebe/series.hpp"

namespace koebe {

enum class MapKind { koebe, gkoebe, k0, lens, halfplane_phi, custom };

namespace detail {

inline constexpr double kDiskMargin = 1e-9;

inline void require_in_disk(complex z) {
  if (std::abs(z) > 1.0 - kDiskMargin)
    throw PointOutsideDisk("evaluation point with |z| = " + std::to_string(std::abs(z)) +
                           " is not inside the unit disk");
}

// (1+z)/(1-z), mapping the disk onto the right half-plane, where the
// principal logarithm is continuous.
inline complex cayley(complex z) { return (1.0 + z) / (1.0 - z); }

inline complex k0_value(complex z) { return 0.5 * std::log(cayley(z)); }

// exp(x) - 1 without cancellation for small |x|: the real part combines
// expm1 with the half-angle form of cos - 1.
inline complex expm1c(complex x) {
  const double er = std::expm1(x.real());
  const double si = std::sin(0.5 * x.imag());
  return {er * std::cos(x.imag()) - 2.0 * si * si,
          std::exp(x.real()) * std::sin(x.imag())};
}

// Below this threshold k_a is evaluated as k_0 + a k_0^2, the first-order
// expansion in a, to dodge the division by 2a.
inline constexpr double kSmallA = 1e-9;

inline complex gk_value(complex a, complex z) {
  if (std::abs(a) < kSmallA) {
    const complex w = k0_value(z);
    return w + a * w * w;
  }
  const complex t = cayley(z);
  return expm1c(a * std::log(t)) / (2.0 * a);
}

inline complex gk_derivative(complex a, complex z) {
  const complex t = cayley(z);
  return std::exp(a * std::log(t)) / (1.0 - z * z);
}

// Coefficients of k_a from (1 - z^2) k_a' = 1 + 2a k_a:
// (n+1) c_{n+1} = 2a c_n + (n-1) c_{n-1}, with c_0 = 0, c_1 = 1.
inline Series gk_series(complex a, int order) {
  std::vector<complex> c(static_cast<std::size_t>(order) + 1);
  if (order >= 1) c[1] = 1.0;
  for (int n = 1; n < order; ++n)
    c[static_cast<std::size_t>(n) + 1] =
        (2.0 * a * c[static_cast<std::size_t>(n)] +
         double(n - 1) * c[static_cast<std::size_t>(n) - 1]) /
        double(n + 1);
  return Series(std::move(c));
}

inline complex lens_value(double R, complex z) {
  if (R == 0.0) return complex{};
  if (R == 1.0) return z;
  const complex u = expm1c(R * std::log(cayley(z)));  // t^R - 1
  return u / (u + 2.0);
}

inline Series lens_series(double R, int order) {
  if (R == 0.0) return Series::zero(order);
  if (R == 1.0) return Series::identity(order);
  // l_R = R k_R / (1 + R k_R).
  const Series rk = scale(gk_series(R, order), R);
  return div(rk, add(Series::one(order), rk));
}

}  // namespace detail

// An evaluable analytic function on the unit disk: pointwise value and
// derivative, Taylor series on demand, tagged with its defining parameters.
// Immutable and cheap to copy.
class AnalyticMap {
 public:
  struct Impl {
    MapKind kind = MapKind::custom;
    std::string name;
    std::optional<complex> a;  // gkoebe parameter
    std::optional<double> R;   // lens parameter
    std::function<complex(complex)> value;
    std::function<complex(complex)> deriv;
    std::function<Series(int)> series;
    // Exact Schwarzian derivative where the kind admits a closed form.
    std::function<complex(complex)> schwarzian;
  };

  explicit AnalyticMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  complex value(complex z) const {
    detail::require_in_disk(z);
    return impl_->value(z);
  }

  complex derivative(complex z) const {
    detail::require_in_disk(z);
    return impl_->deriv(z);
  }

  Series series(int trunc_order = kDefaultTruncOrder) const {
    if (trunc_order < 0) throw BadParameter("negative truncation order");
    return impl_->series(trunc_order);
  }

  MapKind kind() const { return impl_->kind; }
  const std::string& name() const { return impl_->name; }
  std::optional<complex> parameter_a() const { return impl_->a; }
  std::optional<double> parameter_R() const { return impl_->R; }

  bool has_closed_schwarzian() const { return static_cast<bool>(impl_->schwarzian); }
  complex closed_schwarzian(complex z) const {
    detail::require_in_disk(z);
    return impl_->schwarzian(z);
  }

 private:
  std::shared_ptr<const Impl> impl_;
};

// The classical Koebe map k(z) = z/(1-z)^2 = k_2.
inline AnalyticMap koebe_map() {
  auto impl = std::make_shared<AnalyticMap::Impl>();
  impl->kind = MapKind::koebe;
  impl->name = "koebe";
  impl->a = complex{2.0, 0.0};
  impl->value = [](complex z) { return z / ((1.0 - z) * (1.0 - z)); };
  impl->deriv = [](complex z) { return (1.0 + z) / std::pow(1.0 - z, 3); };
  impl->series = [](int n) {
    std::vector<complex> c(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) c[static_cast<std::size_t>(i)] = double(i);
    return Series(std::move(c));
  };
  impl->schwarzian = [](complex z) {
    const complex d = 1.0 - z * z;
    return -6.0 / (d * d);
  };
  return AnalyticMap(std::move(impl));
}

// k_a(z) = ((1+z)/(1-z))^a - 1, divided by 2a, under the principal branch;
// a = 0 gives the limit k_0(z) = (1/2) log((1+z)/(1-z)).
inline AnalyticMap generalized_koebe(complex a) {
  auto impl = std::make_shared<AnalyticMap::Impl>();
  impl->kind = MapKind::gkoebe;
  impl->name = "gkoebe";
  impl->a = a;
  impl->value = [a](complex z) { return detail::gk_value(a, z); };
  impl->deriv = [a](complex z) { return detail::gk_derivative(a, z); };
  impl->series = [a](int n) { return detail::gk_series(a, n); };
  impl->schwarzian = [a](complex z) {
    const complex d = 1.0 - z * z;
    return 2.0 * (1.0 - a * a) / (d * d);
  };
  return AnalyticMap(std::move(impl));
}

inline AnalyticMap k0_map() {
  auto impl = std::make_shared<AnalyticMap::Impl>();
  impl->kind = MapKind::k0;
  impl->name = "k0";
  impl->a = complex{0.0, 0.0};
  impl->value = [](complex z) { return detail::k0_value(z); };
  impl->deriv = [](complex z) { return 1.0 / (1.0 - z * z); };
  impl->series = [](int n) { return detail::gk_series(0.0, n); };
  impl->schwarzian = [](complex z) {
    const complex d = 1.0 - z * z;
    return 2.0 / (d * d);
  };
  return AnalyticMap(std::move(impl));
}

// Lens map l_R = (t^R - 1)/(t^R + 1) with t = (1+z)/(1-z). Maps the disk
// into itself; l_0 = 0 and l_1 = identity.
inline AnalyticMap lens_map(double R) {
  if (!(R >= 0.0 && R <= 1.0))
    throw BadParameter("lens parameter R must lie in [0,1], got " + std::to_string(R));
  auto impl = std::make_shared<AnalyticMap::Impl>();
  impl->kind = MapKind::lens;
  impl->name = "lens";
  impl->R = R;
  impl->value = [R](complex z) { return detail::lens_value(R, z); };
  impl->deriv = [R](complex z) {
    const complex l = detail::lens_value(R, z);
    return R * (1.0 - l * l) / (1.0 - z * z);
  };
  impl->series = [R](int n) { return detail::lens_series(R, n); };
  if (R > 0.0) {
    // l_R is a Mobius function of t^R, so S l_R = S k_R.
    impl->schwarzian = [R](complex z) {
      const complex d = 1.0 - z * z;
      return 2.0 * (1.0 - R * R) / (d * d);
    };
  }
  return AnalyticMap(std::move(impl));
}

// The half-plane factor l(z) = z/(1-z).
inline AnalyticMap halfplane_phi() {
  auto impl = std::make_shared<AnalyticMap::Impl>();
  impl->kind = MapKind::halfplane_phi;
  impl->name = "hp-phi";
  impl->value = [](complex z) { return z / (1.0 - z); };
  impl->deriv = [](complex z) { return 1.0 / ((1.0 - z) * (1.0 - z)); };
  impl->series = [](int n) {
    std::vector<complex> c(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) c[static_cast<std::size_t>(i)] = 1.0;
    return Series(std::move(c));
  };
  impl->schwarzian = [](complex) { return complex{}; };  // Mobius
  return AnalyticMap(std::move(impl));
}

inline AnalyticMap custom_map(std::string name, std::function<complex(complex)> value,
                              std::function<complex(complex)> deriv,
                              std::function<Series(int)> series,
                              std::function<complex(complex)> schwarzian = nullptr) {
  auto impl = std::make_shared<AnalyticMap::Impl>();
  impl->name = std::move(name);
  impl->value = std::move(value);
  impl->deriv = std::move(deriv);
  impl->series = std::move(series);
  impl->schwarzian = std::move(schwarzian);
  return AnalyticMap(std::move(impl));
}

inline AnalyticMap identity_map() {
  return custom_map(
      "identity", [](complex z) { return z; }, [](complex) { return complex{1.0}; },
      [](int n) { return Series::identity(n); }, [](complex) { return complex{}; });
}

inline AnalyticMap zero_map() {
  return custom_map(
      "zero", [](complex) { return complex{}; }, [](complex) { return complex{}; },
      [](int n) { return Series::zero(n); });
}

inline AnalyticMap scale_map(const AnalyticMap& f, complex w) {
  return custom_map(
      "scaled(" + f.name() + ")", [f, w](complex z) { return w * f.value(z); },
      [f, w](complex z) { return w * f.derivative(z); },
      [f, w](int n) { return scale(f.series(n), w); });
}

// ca*f + cb*g as a map.
inline AnalyticMap combine_maps(const AnalyticMap& f, const AnalyticMap& g, complex ca,
                                complex cb, std::string name = "") {
  if (name.empty()) name = "combo(" + f.name() + "," + g.name() + ")";
  return custom_map(
      std::move(name),
      [f, g, ca, cb](complex z) { return ca * f.value(z) + cb * g.value(z); },
      [f, g, ca, cb](complex z) { return ca * f.derivative(z) + cb * g.derivative(z); },
      [f, g, ca, cb](int n) { return add(scale(f.series(n), ca), scale(g.series(n), cb)); });
}

// Hille's criterion: k_a is univalent iff a or -a lies in the closed disk
// of radius 1 centered at 1.
inline bool hille_univalent(complex a) {
  return std::abs(a - 1.0) <= 1.0 || std::abs(a + 1.0) <= 1.0;
}

// Residual of the identity l_R = R k_R / (1 + R k_R).
inline double lens_identity_residual(double R, complex z) {
  if (!(R > 0.0 && R < 1.0))
    throw BadParameter("lens identity needs R strictly inside (0,1), got " + std::to_string(R));
  detail::require_in_disk(z);
  const complex lhs = detail::lens_value(R, z);
  const complex kr = detail::gk_value(R, z);
  const complex rhs = R * kr / (1.0 + R * kr);
  return std::abs(lhs - rhs);
}

}  // namespace koebe
