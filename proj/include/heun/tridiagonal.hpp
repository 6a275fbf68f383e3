#pragma once
//
// Symmetric tridiagonal matrices and pencils: Sturm-sequence counts and
// bisection eigenvalues.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "heun/errors.hpp"

namespace heun {

/// Symmetric tridiagonal matrix; off[i] couples rows i and i+1.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }

  void validate() const {
    if (diag.empty()) throw DomainError("tridiagonal matrix is empty");
    if (off.size() + 1 != diag.size()) throw DomainError("tridiagonal matrix: off-diagonal length must be order - 1");
    for (double v : diag)
      if (!std::isfinite(v)) throw NumericError("tridiagonal matrix: non-finite diagonal entry");
    for (double v : off)
      if (!std::isfinite(v)) throw NumericError("tridiagonal matrix: non-finite off-diagonal entry");
  }
};

namespace detail {

inline double safe_pivot(double q, double scale) {
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(scale, std::numeric_limits<double>::min());
  if (q == 0.0) return -tiny;
  return q;
}

inline double tridiag_scale(const SymTridiag& t) {
  double s = 0.0;
  for (double v : t.diag) s = std::max(s, std::abs(v));
  for (double v : t.off) s = std::max(s, std::abs(v));
  return s;
}

} // namespace detail

/// Number of eigenvalues of t strictly below x (negative inertia of t - x I).
inline std::size_t sturm_count(const SymTridiag& t, double x) {
  const double scale = detail::tridiag_scale(t) + std::abs(x);
  std::size_t count = 0;
  double q = detail::safe_pivot(t.diag[0] - x, scale);
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.size(); ++i) {
    q = detail::safe_pivot(t.diag[i] - x - t.off[i - 1] * t.off[i - 1] / q, scale);
    if (q < 0.0) ++count;
  }
  return count;
}

/// Negative inertia of a - x b. When b is positive definite this counts the
/// eigenvalues of the pencil (a, b) below x.
inline std::size_t sturm_count(const SymTridiag& a, const SymTridiag& b, double x) {
  const double scale = detail::tridiag_scale(a) + std::abs(x) * detail::tridiag_scale(b);
  std::size_t count = 0;
  double q = detail::safe_pivot(a.diag[0] - x * b.diag[0], scale);
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double e = a.off[i - 1] - x * b.off[i - 1];
    q = detail::safe_pivot(a.diag[i] - x * b.diag[i] - e * e / q, scale);
    if (q < 0.0) ++count;
  }
  return count;
}

/// Gershgorin enclosure [lo, hi] of the spectrum.
inline std::pair<double, double> gershgorin_bounds(const SymTridiag& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < t.size()) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

namespace detail {

template <class Count>
double bisect_kth(Count count, std::size_t k, double lo, double hi) {
  // Invariant: count(lo) <= k < count(hi).
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double abs_tol = 1e-3 * eps * (std::abs(lo) + std::abs(hi));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (hi - lo <= 4.0 * eps * std::max(std::abs(lo), std::abs(hi)) + abs_tol) break;
    if (count(mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace detail

/// k-th smallest eigenvalue (k = 0 is the lowest).
inline double eigenvalue(const SymTridiag& t, std::size_t k) {
  t.validate();
  if (k >= t.size()) throw DomainError("eigenvalue index out of range");
  auto [lo, hi] = gershgorin_bounds(t);
  const double pad = 1e-12 * (std::abs(lo) + std::abs(hi)) + std::numeric_limits<double>::min();
  return detail::bisect_kth([&](double x) { return sturm_count(t, x); }, k, lo - pad, hi + pad);
}

/// All eigenvalues, ascending.
inline std::vector<double> eigenvalues(const SymTridiag& t) {
  t.validate();
  std::vector<double> out(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = eigenvalue(t, k);
  return out;
}

/// k-th smallest eigenvalue of the pencil a v = x b v; b must be positive
/// definite.
inline double pencil_eigenvalue(const SymTridiag& a, const SymTridiag& b, std::size_t k) {
  a.validate();
  b.validate();
  if (a.size() != b.size()) throw DomainError("pencil matrices differ in order");
  if (k >= a.size()) throw DomainError("eigenvalue index out of range");
  const double bmin = eigenvalue(b, 0);
  if (!(bmin > 0.0)) throw DomainError("pencil: second matrix is not positive definite");
  auto [lo, hi] = gershgorin_bounds(a);
  const double r = std::max(std::abs(lo), std::abs(hi)) / bmin;
  const double pad = 1e-12 * r + std::numeric_limits<double>::min();
  return detail::bisect_kth([&](double x) { return sturm_count(a, b, x); }, k, -r - pad, r + pad);
}

/// All pencil eigenvalues, ascending.
inline std::vector<double> pencil_eigenvalues(const SymTridiag& a, const SymTridiag& b) {
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = pencil_eigenvalue(a, b, k);
  return out;
}

} // namespace heun
