#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "koebe/errors.hpp"

namespace koebe {

using complex = std::complex<double>;

inline constexpr int kDefaultTruncOrder = 64;

// Mixed absolute/relative comparison: |x - y| <= atol + rtol*|y|.
// Every verification routine takes one of these explicitly.
struct Tolerance {
  double atol = 1e-12;
  double rtol = 1e-10;

  bool close(complex x, complex y) const {
    return std::abs(x - y) <= atol + rtol * std::abs(y);
  }
};

inline bool is_finite(complex v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// Truncated Taylor expansion c_0..c_N about the origin.
//
// Values are immutable after construction and never hold a NaN or infinity.
// Binary operations truncate to the shorter operand, so no coefficient of a
// result is ever fabricated from missing high-order terms.
class Series {
 public:
  explicit Series(int trunc_order) : c_(checked_size(trunc_order)) {}

  explicit Series(std::vector<complex> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty())
      throw BadParameter("Series requires at least the constant coefficient");
    for (const complex& v : c_)
      if (!is_finite(v)) throw NonFiniteCoefficient("non-finite series coefficient");
  }

  static Series zero(int trunc_order) { return Series(trunc_order); }

  static Series constant(complex c, int trunc_order) {
    std::vector<complex> v(checked_size(trunc_order));
    v[0] = c;
    return Series(std::move(v));
  }

  static Series one(int trunc_order) { return constant(1.0, trunc_order); }

  // The monomial z (truncation at order 0 drops its only coefficient).
  static Series identity(int trunc_order) {
    std::vector<complex> v(checked_size(trunc_order));
    if (trunc_order >= 1) v[1] = 1.0;
    return Series(std::move(v));
  }

  int trunc_order() const { return static_cast<int>(c_.size()) - 1; }

  // Coefficient access; indices past the truncation order read as zero.
  complex operator[](int n) const {
    return (n >= 0 && n < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(n)]
                                                       : complex{};
  }

  const std::vector<complex>& coeffs() const { return c_; }

 private:
  static std::size_t checked_size(int trunc_order) {
    if (trunc_order < 0) throw BadParameter("negative truncation order");
    return static_cast<std::size_t>(trunc_order) + 1;
  }

  std::vector<complex> c_;
};

// Copy truncated (or zero-extended) to an exact order.
inline Series truncated(const Series& s, int trunc_order) {
  if (trunc_order < 0) throw BadParameter("negative truncation order");
  std::vector<complex> c(static_cast<std::size_t>(trunc_order) + 1);
  for (int i = 0; i <= trunc_order; ++i) c[static_cast<std::size_t>(i)] = s[i];
  return Series(std::move(c));
}

inline double max_abs_coeff(const Series& s) {
  double m = 0.0;
  for (const complex& v : s.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

// sup-norm of the coefficient difference up to the shorter truncation.
inline double max_coeff_diff(const Series& a, const Series& b) {
  int n = std::min(a.trunc_order(), b.trunc_order());
  double m = 0.0;
  for (int i = 0; i <= n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline Series add(const Series& a, const Series& b) {
  int n = std::min(a.trunc_order(), b.trunc_order());
  std::vector<complex> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = a[i] + b[i];
  return Series(std::move(c));
}

inline Series sub(const Series& a, const Series& b) {
  int n = std::min(a.trunc_order(), b.trunc_order());
  std::vector<complex> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = a[i] - b[i];
  return Series(std::move(c));
}

inline Series scale(const Series& a, complex w) {
  std::vector<complex> c(a.coeffs());
  for (complex& v : c) v *= w;
  return Series(std::move(c));
}

namespace detail {

// Cauchy product truncated at an explicit output order.
inline Series mul_to(const Series& a, const Series& b, int out_order) {
  std::vector<complex> c(static_cast<std::size_t>(out_order) + 1);
  int na = std::min(a.trunc_order(), out_order);
  for (int i = 0; i <= na; ++i) {
    complex ai = a[i];
    if (ai == complex{}) continue;
    int nb = std::min(b.trunc_order(), out_order - i);
    for (int j = 0; j <= nb; ++j) c[static_cast<std::size_t>(i + j)] += ai * b[j];
  }
  return Series(std::move(c));
}

}  // namespace detail

inline Series mul(const Series& a, const Series& b) {
  return detail::mul_to(a, b, std::min(a.trunc_order(), b.trunc_order()));
}

// Power-series long division. Requires a unit constant term in b.
inline Series div(const Series& a, const Series& b) {
  const complex b0 = b[0];
  if (std::abs(b0) <= 1e-14)
    throw DivisionByNonUnit("series division by constant term of modulus " +
                            std::to_string(std::abs(b0)));
  int n = std::min(a.trunc_order(), b.trunc_order());
  std::vector<complex> q(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    complex s = a[i];
    for (int k = 0; k < i; ++k) s -= q[static_cast<std::size_t>(k)] * b[i - k];
    q[static_cast<std::size_t>(i)] = s / b0;
  }
  return Series(std::move(q));
}

// Term-wise d/dz; the truncation order drops by one.
inline Series derivative(const Series& a) {
  int n = std::max(a.trunc_order() - 1, 0);
  std::vector<complex> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = double(i + 1) * a[i + 1];
  return Series(std::move(c));
}

// Term-wise antiderivative with constant 0; the truncation order rises by one.
inline Series integrate(const Series& a) {
  int n = a.trunc_order() + 1;
  std::vector<complex> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i) + 1] = a[i] / double(i + 1);
  return Series(std::move(c));
}

// Series exponential via the ODE recurrence E' = A'E. Requires a_0 = 0.
inline Series exp(const Series& a) {
  if (std::abs(a[0]) > 1e-14)
    throw BadConstantTerm("series exp needs constant term 0, got modulus " +
                          std::to_string(std::abs(a[0])));
  int n = a.trunc_order();
  std::vector<complex> e(static_cast<std::size_t>(n) + 1);
  e[0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    complex s = 0.0;
    for (int k = 1; k <= m; ++k) s += double(k) * a[k] * e[static_cast<std::size_t>(m - k)];
    e[static_cast<std::size_t>(m)] = s / double(m);
  }
  return Series(std::move(e));
}

// Series logarithm, branch fixed by log 1 = 0. Requires a_0 = 1.
inline Series log(const Series& a) {
  if (std::abs(a[0] - 1.0) > 1e-14)
    throw BadConstantTerm("series log needs constant term 1, got distance " +
                          std::to_string(std::abs(a[0] - 1.0)));
  // L' = A'/A, integrated with L(0) = 0.
  return integrate(div(derivative(a), a));
}

// Principal power A^w = exp(w log A). Requires a_0 = 1.
inline Series pow(const Series& a, complex w) {
  if (std::abs(a[0] - 1.0) > 1e-14)
    throw BadConstantTerm("series pow needs constant term 1, got distance " +
                          std::to_string(std::abs(a[0] - 1.0)));
  if (w == complex{}) return Series::one(a.trunc_order());
  return exp(scale(log(a), w));
}

namespace detail {

// Horner evaluation of the truncated polynomial of A at the series B.
// Meaningful as true composition only when |b_0| is well inside the
// convergence disk of A; callers control the working order.
inline Series horner_compose(const Series& a, const Series& b, int out_order) {
  Series r = Series::constant(a[a.trunc_order()], out_order);
  for (int k = a.trunc_order() - 1; k >= 0; --k) {
    r = mul_to(r, b, out_order);
    std::vector<complex> c(r.coeffs());
    c[0] += a[k];
    r = Series(std::move(c));
  }
  return r;
}

}  // namespace detail

// Taylor coefficients of A(B(z)). Requires b_0 = 0, which makes the
// truncated result exact: orders above the cutoff cannot leak downward.
inline Series compose(const Series& a, const Series& b) {
  if (std::abs(b[0]) > 1e-14)
    throw BadConstantTerm("series composition needs inner constant term 0, got modulus " +
                          std::to_string(std::abs(b[0])));
  return detail::horner_compose(a, b, std::min(a.trunc_order(), b.trunc_order()));
}

// Horner evaluation of the truncated series at a point.
inline complex eval(const Series& a, complex z) {
  complex r = a[a.trunc_order()];
  for (int k = a.trunc_order() - 1; k >= 0; --k) r = r * z + a[k];
  return r;
}

// Coefficient recovery from point samples on |z| = r by a discrete Fourier
// transform: c_n ~ (1/(M r^n)) sum_k f(r w^k) w^{-kn}. Default M = 4(N+1)
// keeps the aliasing tail negligible against the r^{-n} rounding growth.
inline Series coefficients_from_samples(const std::function<complex(complex)>& evaluate,
                                        double r, int trunc_order, int samples = 0) {
  if (!(r > 0.0 && r < 1.0))
    throw BadRadius("sampling radius must lie in (0,1), got " + std::to_string(r));
  if (trunc_order < 0) throw BadParameter("negative truncation order");
  int m = samples > 0 ? samples : 4 * (trunc_order + 1);
  if (m < std::max(4 * trunc_order, 1))
    throw BadParameter("sample count must be at least 4N");

  std::vector<complex> f(static_cast<std::size_t>(m));
  std::vector<complex> root(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    double t = 2.0 * std::numbers::pi * double(j) / double(m);
    f[static_cast<std::size_t>(j)] = evaluate(std::polar(r, t));
    root[static_cast<std::size_t>(j)] = std::polar(1.0, -t);
  }
  std::vector<complex> c(static_cast<std::size_t>(trunc_order) + 1);
  double rn = 1.0;
  for (int n = 0; n <= trunc_order; ++n) {
    // Compensated left-to-right sum: the terms cancel down to ~M r^n c_n,
    // and plain accumulation would dominate the error at high n.
    complex s{}, comp{};
    for (int j = 0; j < m; ++j) {
      const complex term = f[static_cast<std::size_t>(j)] *
                           root[static_cast<std::size_t>(j * n % m)];
      const complex y = term - comp;
      const complex t = s + y;
      comp = (t - s) - y;
      s = t;
    }
    c[static_cast<std::size_t>(n)] = s / (double(m) * rn);
    rn *= r;
  }
  return Series(std::move(c));
}

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }
inline Series operator/(const Series& a, const Series& b) { return div(a, b); }
inline Series operator-(const Series& a) { return scale(a, -1.0); }
inline Series operator*(complex w, const Series& a) { return scale(a, w); }
inline Series operator*(const Series& a, complex w) { return scale(a, w); }

}  // namespace koebe
