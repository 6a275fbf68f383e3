#pragma once
//
// Finite-difference oracle for -psi'' + (v - e) psi = 0 in xi = lambda x,
// v = 2V/lambda^2, e = 2E/lambda^2. Uses only samples of V, E and psi.
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "heun/errors.hpp"
#include "heun/potentials.hpp"
#include "heun/transforms.hpp"
#include "heun/tridiagonal.hpp"

namespace heun {

inline constexpr int kDefaultGrid = 8192;

struct Grid {
  double x_min = 0.0;
  double x_max = 1.0;
  int npoints = kDefaultGrid;
  // Points next to each end left out of residuals (boundary layer of a
  // singular endpoint, where the 3-point stencil does not resolve psi).
  int skip_lo = 0;
  int skip_hi = 0;

  double h() const { return (x_max - x_min) / (npoints - 1); }
  double x(int i) const { return i == npoints - 1 ? x_max : x_min + i * h(); }
  void validate() const {
    if (npoints < 64) throw DomainError("grid needs at least 64 points");
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
      throw DomainError("grid needs finite x_min < x_max");
    if (skip_lo < 0 || skip_hi < 0 || skip_lo + skip_hi + 3 > npoints)
      throw DomainError("grid boundary layers leave no interior points");
  }
  /// Grid with the same ends and half the spacing.
  Grid refined() const { return {x_min, x_max, 2 * npoints - 1, 2 * skip_lo, 2 * skip_hi}; }
};

inline constexpr double kXiTail = 40.0;
inline constexpr double kXiOrigin = 1e-3;
inline constexpr double kPotentialCap = 1e6;
inline constexpr int kBoundaryLayer = 32;

/// Truncated domain for a system: the box as is, lambda x in [-40, 40] on
/// the line, lambda x in [1e-3, 40] on the half-line with the inner end
/// moved out until |2V/lambda^2| < 1e6. Residuals skip kBoundaryLayer
/// spacings next to a finite end.
inline Grid default_grid(const PhysicalSystem& sys, int npoints = kDefaultGrid) {
  const CoordinateCase& cc = sys.ccase;
  const double L = sys.lambda;
  Grid g;
  g.npoints = npoints;
  switch (cc.kind) {
  case DomainKind::Box:
    g.x_min = cc.xi_min / L;
    g.x_max = cc.xi_max / L;
    g.skip_lo = g.skip_hi = kBoundaryLayer;
    break;
  case DomainKind::FullLine:
    g.x_min = -kXiTail / L;
    g.x_max = kXiTail / L;
    break;
  case DomainKind::HalfLine: {
    double xi = cc.xi_min + kXiOrigin;
    for (int it = 0; it < 200; ++it) {
      const double v = potential_value(sys, xi / L);
      if (std::isfinite(v) && std::abs(v) < kPotentialCap) break;
      xi = cc.xi_min + (xi - cc.xi_min) * 1.25;
    }
    g.x_min = xi / L;
    g.x_max = (cc.xi_min + kXiTail) / L;
    g.skip_lo = kBoundaryLayer;
    break;
  }
  }
  g.validate();
  return g;
}

struct ResidualReport {
  double rms_h = 0.0;           // 3-point stencil with spacing h
  double rms_h2 = 0.0;          // spacing h/2
  double rms_richardson = 0.0;  // (4 L_{h/2} - L_h)/3 Laplacian
  double discretization = 0.0;  // rms of the h vs h/2 Laplacian difference, relative
  double tail_ratio = 0.0;      // max |psi| at the grid ends / max |psi|
  int points_used = 0;
};

/// Relative rms of the left side of the Schrodinger equation over interior
/// grid points (boundary layers excluded), normalized by the rms of
/// (v - e) psi.
inline ResidualReport schrodinger_residual(const PhysicalSystem& sys, const std::function<double(double)>& psi,
                                           double energy, const Grid& grid) {
  grid.validate();
  const double L = sys.lambda;
  const double hx = grid.h();
  const double hxi = L * hx;
  const int n = grid.npoints;
  std::vector<double> f(static_cast<std::size_t>(n));
  std::vector<double> fm(static_cast<std::size_t>(n)), fp(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = grid.x(i);
    f[i] = psi(x);
    if (i > 0 && i + 1 < n) {
      fm[i] = psi(x - 0.5 * hx);
      fp[i] = psi(x + 0.5 * hx);
    }
  }
  double s_h = 0.0, s_h2 = 0.0, s_r = 0.0, s_ref = 0.0, s_disc = 0.0, fmax = 0.0;
  int used = 0;
  for (double v : f)
    if (std::isfinite(v)) fmax = std::max(fmax, std::abs(v));
  const int lo = std::max(1, grid.skip_lo);
  const int hi = n - 1 - std::max(1, grid.skip_hi);
  for (int i = lo; i <= hi; ++i) {
    const double vals[5] = {f[i - 1], fm[i], f[i], fp[i], f[i + 1]};
    bool ok = true;
    for (double v : vals) ok = ok && std::isfinite(v);
    if (!ok) continue;
    const double v = potential_value(sys, grid.x(i));
    if (!std::isfinite(v)) continue;
    const double lap_h = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (hxi * hxi);
    const double lap_h2 = (fp[i] - 2.0 * f[i] + fm[i]) / (0.25 * hxi * hxi);
    const double lap_r = (4.0 * lap_h2 - lap_h) / 3.0;
    const double pot = (v - energy) * f[i];
    const double r_h = -lap_h + pot;
    const double r_h2 = -lap_h2 + pot;
    const double r_r = -lap_r + pot;
    s_h += r_h * r_h;
    s_h2 += r_h2 * r_h2;
    s_r += r_r * r_r;
    s_ref += pot * pot;
    s_disc += (lap_h - lap_h2) * (lap_h - lap_h2);
    ++used;
  }
  if (used == 0 || s_ref == 0.0) throw DomainError("residual: no usable interior points or (v - e) psi vanishes");
  ResidualReport r;
  r.rms_h = std::sqrt(s_h / s_ref);
  r.rms_h2 = std::sqrt(s_h2 / s_ref);
  r.rms_richardson = std::sqrt(s_r / s_ref);
  r.discretization = std::sqrt(s_disc / s_ref);
  const double ends = std::max(std::isfinite(f.front()) ? std::abs(f.front()) : 0.0,
                               std::isfinite(f.back()) ? std::abs(f.back()) : 0.0);
  r.tail_ratio = fmax > 0.0 ? ends / fmax : 0.0;
  r.points_used = used;
  return r;
}

/// Dirichlet Hamiltonian -d^2/dxi^2 + v on the grid interior.
inline SymTridiag discrete_hamiltonian(const PhysicalSystem& sys, const Grid& grid) {
  grid.validate();
  const double hxi = sys.lambda * grid.h();
  const double inv = 1.0 / (hxi * hxi);
  const int m = grid.npoints - 2;
  SymTridiag t;
  t.diag.resize(static_cast<std::size_t>(m));
  t.off.assign(static_cast<std::size_t>(m) - 1, -inv);
  for (int i = 0; i < m; ++i) {
    const double v = potential_value(sys, grid.x(i + 1));
    if (!std::isfinite(v)) throw NumericError("potential is not finite at an interior grid point");
    t.diag[i] = 2.0 * inv + v;
  }
  return t;
}

struct NumericLevel {
  double coarse = 0.0;      // spacing h
  double fine = 0.0;        // spacing h/2
  double richardson = 0.0;  // (4 fine - coarse)/3
  double estimate = 0.0;    // |fine - coarse|/3
};

/// Lowest `count` eigenvalues 2E/lambda^2 on the grid and on its refinement.
inline std::vector<NumericLevel> numeric_eigenvalues(const PhysicalSystem& sys, const Grid& grid, int count) {
  if (count < 1) throw DomainError("numeric_eigenvalues: count must be positive");
  if (count > grid.npoints - 2) throw DomainError("numeric_eigenvalues: more levels than interior points");
  const SymTridiag hc = discrete_hamiltonian(sys, grid);
  const SymTridiag hf = discrete_hamiltonian(sys, grid.refined());
  std::vector<NumericLevel> out;
  for (int k = 0; k < count; ++k) {
    NumericLevel l;
    l.coarse = eigenvalue(hc, static_cast<std::size_t>(k));
    l.fine = eigenvalue(hf, static_cast<std::size_t>(k));
    if (!std::isfinite(l.coarse) || !std::isfinite(l.fine)) throw NumericError("eigenvalue bisection failed");
    l.richardson = (4.0 * l.fine - l.coarse) / 3.0;
    l.estimate = std::abs(l.fine - l.coarse) / 3.0;
    out.push_back(l);
  }
  return out;
}

} // namespace heun
