#pragma once
//
// Series wavefunctions psi = y^alpha (1-y)^beta (d-y)^{gamma+c/2} sum p_n q_n(y)
// with q_n the orthonormal Jacobi basis, the maps from the class recursions
// to the Wilson / Racah-Heun / V families, and the restricted spectrum.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "heun/errors.hpp"
#include "heun/heun_core.hpp"
#include "heun/orthopoly.hpp"
#include "heun/potentials.hpp"
#include "heun/quadrature.hpp"
#include "heun/specfun.hpp"
#include "heun/transforms.hpp"
#include "heun/tridiagonal.hpp"

namespace heun {

inline constexpr int kDefaultTerms = 64;
inline constexpr int kMaxTerms = 512;

/// Truncation order of the recursion behind an nterms-term series. Bound
/// states are quantized at the same order so that the backward recursion
/// reproduces the eigenvector exactly.
inline int series_order(int nterms) { return 2 * nterms + 32; }

// ---------------------------------------------------------------------------
// Parameter maps

struct GeneralMap {
  double kappa = 0.0, sigma = 0.0, tau_sq = 0.0, eta = 0.0, z_squared = 0.0;
  WilsonParams wilson() const { return WilsonParams::paired(sigma, tau_sq, eta); }
};

struct SpecialMap {
  double theta = 0.0, tau_sq = 0.0, z = 0.0;
};

struct RestrictedMap {
  double sigma = 0.0, tau = 0.0, eta = 0.0, z_squared = 0.0;
  WilsonParams wilson() const { return WilsonParams::paired(sigma, tau * tau, eta); }
};

inline GeneralMap map_params_general(const HeunParams& p, const BasisParams& basis) {
  const double abc1 = p.a + p.b + p.c - 1.0;
  GeneralMap m;
  m.kappa = p.d;
  m.sigma = 0.5 * (basis.mu + 1.0);
  m.eta = 0.5 * (basis.nu + 1.0);
  m.tau_sq = 0.25 * abc1 * abc1 - p.D;
  m.z_squared = coeff_R(p);
  return m;
}

inline SpecialMap map_params_special(const HeunParams& p, const BasisParams& basis) {
  (void)basis;
  if (!(p.d > 1.0)) throw DomainError("map_params_special needs d > 1");
  const double abc1 = p.a + p.b + p.c - 1.0;
  SpecialMap m;
  m.theta = std::acosh(2.0 * p.d - 1.0);
  m.tau_sq = 0.25 * abc1 * abc1 - p.D;
  m.z = -coeff_R_tilde(p) / std::sqrt(p.d * (p.d - 1.0));
  return m;
}

inline RestrictedMap map_params_restricted(const HeunParams& p, const BasisParams& basis) {
  if (!classify(p).contains(SolutionClass::RestrictedFirst))
    throw ConstraintError("restricted class conditions do not hold");
  RestrictedMap m;
  m.sigma = 0.5 * (basis.nu + 1.0);
  m.eta = 0.5 * (basis.mu + 1.0);
  m.tau = 0.5 * (p.a + p.b + p.c - 1.0);
  m.z_squared = -0.25 * (basis.mu + 1.0) * (basis.mu + 1.0);
  return m;
}

/// The polynomial family a class recursion maps onto, with its argument and
/// the sign pattern relating p_n to the family values.
struct ClassMapping {
  PolynomialFamily family;
  double argument = 0.0;  // z^2 (Wilson families) or z (V)
  bool alternating = false;
};

inline ClassMapping class_mapping(SolutionClass cls, const HeunParams& p, const BasisParams& basis) {
  switch (cls) {
  case SolutionClass::General: {
    const GeneralMap m = map_params_general(p, basis);
    return {RacahHeunFamily{m.kappa, m.wilson()}, m.z_squared, true};
  }
  case SolutionClass::Special: {
    const SpecialMap m = map_params_special(p, basis);
    return {NewVFamily{NewVParams{basis.mu, basis.nu, m.tau_sq, m.theta}}, m.z, false};
  }
  case SolutionClass::RestrictedFirst: {
    const RestrictedMap m = map_params_restricted(p, basis);
    return {WilsonFamily{m.wilson()}, m.z_squared, false};
  }
  default: throw UnsupportedError("no polynomial map for the second restricted family");
  }
}

/// p_0..p_n predicted from the mapped family. Family off-diagonals are
/// nonnegative roots, the class ones may be negative, so each step carries
/// the sign of the class off-diagonal (and a factor -1 for General).
inline std::vector<double> mapped_class_values(const ClassRecursionCoeffs& k, const ClassMapping& m, int n) {
  const PolyValues f = family_eval(m.family, n, m.argument);
  std::vector<double> out(f.values.size());
  double sign = 1.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = sign * f.values[j];
    const double o = k.off(static_cast<int>(j));
    sign *= (o < 0.0 ? -1.0 : 1.0) * (m.alternating ? -1.0 : 1.0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restricted spectrum

struct SpectrumLevel {
  int k = 0;
  double energy = 0.0;      // 2E_k/lambda^2
  double B = 0.0;           // Heun B of the level
  bool threshold = false;   // mu + 1 = 0: level at the continuum edge
};

struct SpectrumResult {
  std::vector<SpectrumLevel> levels;
  int N = -1;
  std::string provenance = "formula";

  std::vector<double> energies() const {
    std::vector<double> e;
    for (const auto& l : levels) e.push_back(l.energy);
    return e;
  }
};

namespace detail {

inline void require_restricted_first(const PhysicalSystem& sys) {
  if (sys.cls != SolutionClass::RestrictedFirst)
    throw DomainError("restricted spectrum needs a system of the first restricted family");
  if (sys.ccase.zero_energy_only) throw UnsupportedError("zero-energy case has no spectrum");
}

} // namespace detail

/// Bound levels 2E_k/lambda^2 = -B_k/(d-1) of a first-family restricted
/// system. For (1,1) and (0,1) one of mu, nu depends on the level, and the
/// level condition is solved in closed form together with it.
inline SpectrumResult restricted_spectrum(const PhysicalSystem& sys) {
  detail::require_restricted_first(sys);
  const HeunParams& p = sys.heun;
  const double d = p.d;
  SpectrumResult out;
  switch (sys.ccase.id) {
  case CaseId::HalfHalf:
    throw AmbiguityError(
        "case (1/2,1/2): the level formula is stated as -B/(d-1) while this case's energy parameter is c^2/4; "
        "the reading is ambiguous, use terminating_restricted_system for the box levels");
  case CaseId::HalfOne: {
    const double nu = basis_params(p, sys.cls, sys.branch).nu;
    const double abc = p.a + p.b + p.c;
    const double top = 0.5 * (abc - nu) - 1.0;
    if (top < 0.0) break;
    const int N = static_cast<int>(std::floor(top));
    for (int k = 0; k <= N; ++k) {
      const double s = top - k;  // (mu+1)/2
      SpectrumLevel l;
      l.k = k;
      l.energy = -s * s + 0.25 * (1.0 - p.b) * (1.0 - p.b);
      l.B = -(d - 1.0) * l.energy;
      l.threshold = s == 0.0;
      out.levels.push_back(l);
    }
    break;
  }
  case CaseId::OneOne: {
    // u0 = A/d + B/(d-1) fixed, nu^2 = -4 A/d; with m = c/2 - k and
    // s = (mu+1)/2: nu = 2(m - s) and s = (m^2 + u0)/(2m).
    const double u0 = sys.u.at(0);
    for (int k = 0;; ++k) {
      const double m = 0.5 * p.c - k;
      if (!(m > 0.0)) break;
      const double s = (m * m + u0) / (2.0 * m);
      if (s < 0.0 || s > m) break;
      SpectrumLevel l;
      l.k = k;
      l.energy = -s * s;
      l.B = (d - 1.0) * s * s;
      l.threshold = s == 0.0;
      out.levels.push_back(l);
    }
    break;
  }
  case CaseId::ZeroOne: {
    // nu fixed by A; c^2/4 = s^2 - K with K = u0 - A/d^2 and
    // c/2 = s + m, m = k + (nu+1)/2, so s = (-K - m^2)/(2m).
    const double nu = basis_params(p, sys.cls, sys.branch).nu;
    const double K = sys.u.at(0) - p.A / (d * d);
    for (int k = 0;; ++k) {
      const double m = k + 0.5 * (nu + 1.0);
      const double s = (-K - m * m) / (2.0 * m);
      if (s < 0.0) break;
      SpectrumLevel l;
      l.k = k;
      l.energy = -s * s;
      l.B = (d - 1.0) * s * s;
      l.threshold = s == 0.0;
      out.levels.push_back(l);
    }
    break;
  }
  default: throw UnsupportedError("no spectrum for this case");
  }
  out.N = static_cast<int>(out.levels.size()) - 1;
  return out;
}

/// The system re-built at level k of restricted_spectrum.
inline PhysicalSystem bound_state_system(const PhysicalSystem& sys, int k) {
  const SpectrumResult sp = restricted_spectrum(sys);
  if (k < 0 || k > sp.N)
    throw NoSolutionError("level " + std::to_string(k) + " does not exist (N = " + std::to_string(sp.N) + ")");
  const SpectrumLevel& l = sp.levels[static_cast<std::size_t>(k)];
  if (l.threshold) throw InadmissibleError("level " + std::to_string(k) + " sits at the threshold (mu = -1)");
  const HeunParams& p = sys.heun;
  SystemInputs in;
  in.d = p.d;
  in.B = l.B;
  switch (sys.ccase.id) {
  case CaseId::HalfOne: in.c = p.c; in.A = p.A; break;
  case CaseId::OneOne: in.c = p.c; in.u = sys.u; break;
  case CaseId::ZeroOne: in.A = p.A; in.u = sys.u; break;
  default: throw UnsupportedError("bound_state_system: unsupported case");
  }
  return build_system(sys.cls, sys.ccase.id, in, sys.lambda, sys.branch);
}

/// First-family (1/2,1/2) system whose series terminates at degree k: the
/// free exponent c is set to 2k + mu + nu + 2 (energy c^2/4); A, B unchanged.
inline PhysicalSystem terminating_restricted_system(const PhysicalSystem& sys, int k) {
  detail::require_restricted_first(sys);
  if (sys.ccase.id != CaseId::HalfHalf) throw UnsupportedError("terminating_restricted_system is for case (1/2,1/2)");
  if (k < 0) throw DomainError("negative level index");
  const BasisParams bp = sys.basis;
  SystemInputs in;
  in.d = sys.heun.d;
  in.A = sys.heun.A;
  in.B = sys.heun.B;
  in.c = 2.0 * k + bp.mu + bp.nu + 2.0;
  return build_system(sys.cls, sys.ccase.id, in, sys.lambda, sys.branch);
}

// ---------------------------------------------------------------------------
// Quantization of General / Special systems

/// Moves E (hence the strengths u, not the energy) so that the truncated
/// recursion of order series_order(nterms) has an eigenvector: k = 0 picks
/// the topmost isolated eigenvalue, k = 1 the next, and so on.
inline PhysicalSystem quantize(const PhysicalSystem& sys, int k = 0, int nterms = kDefaultTerms) {
  if (sys.cls != SolutionClass::General && sys.cls != SolutionClass::Special)
    throw DomainError("quantize applies to the general and special classes");
  if (sys.ccase.zero_energy_only) throw UnsupportedError("zero-energy case");
  const int L = series_order(nterms);
  if (k < 0 || k >= L) throw DomainError("quantize: level index out of range");
  const ClassRecursionCoeffs rc = class_recursion_coeffs(sys.cls, sys.heun, sys.basis, L);
  PhysicalSystem out = sys;
  const std::size_t idx = static_cast<std::size_t>(L - 1 - k);
  if (sys.cls == SolutionClass::General) {
    const double target = eigenvalue(class_jacobi_matrix(rc, L), idx);
    out.heun.E += target - rc.R;
  } else {
    const Pencil pc = special_pencil(rc, L);
    const double sigma = pencil_eigenvalue(pc.W, pc.K, idx);
    if (sigma == 0.0) throw NumericError("special quantization: zero pencil eigenvalue");
    const double target = -0.5 / sigma;
    out.heun.E += target - rc.R_tilde;
  }
  out.u = strengths_from_heun(out.heun, out.cls, out.ccase.id);
  out.energy = energy_param(out);
  return out;
}

// ---------------------------------------------------------------------------
// Series

struct WavefunctionSeries {
  SolutionClass cls = SolutionClass::General;
  CoordinateCase ccase = coordinate_case(CaseId::HalfOne);
  double lambda = 1.0;
  double d = 2.0;
  BasisParams basis;
  double exp_y = 0.0;    // power of y
  double exp_1my = 0.0;  // power of 1-y
  double exp_dmy = 0.0;  // power of d-y
  double z_argument = 0.0;
  std::vector<double> coeffs;  // f_n, f_0 = 1 (p_n, or p_n scaled by (T_0+D)/(T_n+D) for Special)
  std::vector<double> norms;   // A_n
  int nterms = 0;
  double tail_estimate = 0.0;
  double recursion_defect = 0.0;  // row-0 mismatch of the backward recursion
  bool terminated = false;
  bool growth_alarm = false;
  std::vector<std::string> warnings;
};

/// Prefactor exponents of a class: (nu+1-a)/2, beta of the class, gamma + c/2.
inline std::array<double, 3> prefactor_exponents(const HeunParams& p, const BasisParams& b) {
  return {b.alpha, b.beta, b.gamma + 0.5 * p.c};
}

inline WavefunctionSeries make_series(const PhysicalSystem& sys, int nterms = kDefaultTerms) {
  if (sys.ccase.zero_energy_only) throw UnsupportedError("wavefunctions of zero-energy cases are not built");
  if (sys.cls == SolutionClass::RestrictedSecond)
    throw UnsupportedError("wavefunctions of the second restricted family are not built");
  if (nterms < 1 || nterms > kMaxTerms)
    throw DomainError("nterms must lie in [1, " + std::to_string(kMaxTerms) + "]");
  WavefunctionSeries ws;
  ws.cls = sys.cls;
  ws.ccase = sys.ccase;
  ws.lambda = sys.lambda;
  ws.d = sys.heun.d;
  ws.basis = sys.basis;
  const auto ex = prefactor_exponents(sys.heun, sys.basis);
  ws.exp_y = ex[0];
  ws.exp_1my = ex[1];
  ws.exp_dmy = ex[2];
  ws.nterms = nterms;

  const JacobiIndex idx{sys.basis.mu, sys.basis.nu};
  ws.norms.resize(static_cast<std::size_t>(nterms));
  for (int n = 0; n < nterms; ++n) ws.norms[n] = jacobi_norm(n, idx);

  if (is_restricted(sys.cls)) {
    const ClassRecursionCoeffs rc = class_recursion_coeffs(sys.cls, sys.heun, sys.basis, nterms);
    ws.z_argument = -rc.lhs();
    std::vector<double> p(static_cast<std::size_t>(nterms), 0.0);
    p[0] = 1.0;
    const double lhs = rc.lhs();
    const double h = 0.5 * (rc.abc - 1.0);
    for (int n = 0; n + 1 < nterms; ++n) {
      const double t = n + 0.5 * (rc.mu + rc.nu) + 1.0;
      if (std::abs(rc.S[n]) <= 1e-11 * (t * t + h * h)) {
        ws.terminated = true;
        break;
      }
      const double prev = n > 0 ? p[n - 1] : 0.0;
      p[n + 1] = detail::dot2(lhs - rc.diag(n), p[n], -rc.off(n - 1), prev) / rc.off(n);
      if (std::abs(p[n + 1]) > kGrowthLimit * std::max(1.0, std::abs(p[n]))) ws.growth_alarm = true;
    }
    ws.coeffs = std::move(p);
    if (!ws.terminated) ws.warnings.push_back("restricted series did not terminate: energy is not a bound level");
  } else {
    const int L = series_order(nterms);
    const ClassRecursionCoeffs rc = class_recursion_coeffs(sys.cls, sys.heun, sys.basis, L);
    if (sys.cls == SolutionClass::General)
      ws.z_argument = rc.R;
    else
      ws.z_argument = -rc.R_tilde / std::sqrt(rc.d * (rc.d - 1.0));
    // Backward (Miller) recursion from p_L = 0, p_{L-1} = 1.
    std::vector<double> p(static_cast<std::size_t>(L) + 1, 0.0);
    p[L - 1] = 1.0;
    const double lhs = rc.lhs();
    for (int n = L - 1; n >= 1; --n) {
      const double o = rc.off(n - 1);
      if (o == 0.0) throw BreakdownError("backward recursion breaks down at n = " + std::to_string(n - 1));
      p[n - 1] = detail::dot2(lhs - rc.diag(n), p[n], -rc.off(n), p[n + 1]) / o;
      if (std::abs(p[n - 1]) > 1e150) {
        for (int j = n - 1; j <= L; ++j) p[j] *= 1e-150;
      }
    }
    if (p[0] == 0.0 || !std::isfinite(p[0])) throw NumericError("backward recursion produced p_0 = 0");
    const double p0 = p[0];
    for (double& v : p) v /= p0;
    const double r0a = (lhs - rc.diag(0)) * p[0];
    const double r0b = rc.off(0) * p[1];
    ws.recursion_defect = std::abs(r0a - r0b) / std::max({std::abs(r0a), std::abs(r0b), 1e-300});
    if (sys.cls == SolutionClass::Special) {
      // The symmetric recursion is satisfied by (T_n + D) f_n, not by the
      // expansion coefficients f_n themselves.
      const double t0 = rc.T[0] + rc.D;
      for (int n = 0; n <= L; ++n) p[n] *= t0 / (rc.T[n] + rc.D);
    }
    double head = 0.0, tail = 0.0;
    for (int n = 0; n <= L; ++n) (n < nterms ? head : tail) += std::abs(p[n]);
    ws.tail_estimate = tail / head;
    p.resize(static_cast<std::size_t>(nterms));
    ws.coeffs = std::move(p);
    if (ws.recursion_defect > 1e-8)
      ws.warnings.push_back("energy is not an eigenvalue of the truncated recursion (row-0 defect " +
                            std::to_string(ws.recursion_defect) + ")");
  }
  if (ws.terminated) {
    ws.tail_estimate = 0.0;
  } else if (is_restricted(sys.cls)) {
    double head = 0.0;
    for (double v : ws.coeffs) head += std::abs(v);
    const std::size_t m = ws.coeffs.size();
    double last = 0.0;
    for (std::size_t j = m > 3 ? m - 3 : 0; j < m; ++j) last += std::abs(ws.coeffs[j]);
    ws.tail_estimate = last / head;
  }
  if (ws.growth_alarm) ws.warnings.push_back("growth monitor: coefficient ratio above 1e8");
  return ws;
}

namespace detail {

inline double prefactor(const WavefunctionSeries& ws, double y, double ym) {
  double h = 1.0;
  if (ws.exp_y != 0.0) h *= std::pow(y, ws.exp_y);
  if (ws.exp_1my != 0.0) h *= std::pow(ym, ws.exp_1my);
  if (ws.exp_dmy != 0.0) h *= std::pow((ws.d - 1.0) + ym, ws.exp_dmy);
  return h;
}

} // namespace detail

/// sum_n p_n q_n(y) with the three-small-terms stopping rule.
inline double series_sum(const WavefunctionSeries& ws, double y) {
  const JacobiIndex idx{ws.basis.mu, ws.basis.nu};
  const int n = static_cast<int>(ws.coeffs.size());
  const std::vector<double> q = jacobi_orthonormal(n - 1, idx, std::clamp(y, 0.0, 1.0));
  double sum = 0.0;
  int small = 0;
  for (int j = 0; j < n; ++j) {
    const double term = ws.coeffs[j] * q[j];
    sum += term;
    if (std::abs(term) < 1e-12 * std::abs(sum)) {
      if (++small == 3) break;
    } else {
      small = 0;
    }
  }
  return sum;
}

inline double psi_at_y(const WavefunctionSeries& ws, double y, double ym) {
  const double h = detail::prefactor(ws, y, ym);
  if (h == 0.0) return 0.0;
  return h * series_sum(ws, y);
}

/// psi(x), unnormalized (p_0 = 1).
inline double psi_series(const WavefunctionSeries& ws, double x) {
  const YPoint yp = y_point(ws.ccase, ws.lambda, x);
  return psi_at_y(ws, yp.y, yp.ym);
}

inline std::vector<double> psi_series(const WavefunctionSeries& ws, const std::vector<double>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(psi_series(ws, x));
  return out;
}

/// chi = y^alpha (1-y)^beta (d-y)^gamma sum p_n q_n and its first two
/// y-derivatives, from the derivative identities of the Jacobi polynomials.
struct ChiDerivatives {
  double chi = 0.0, dchi = 0.0, d2chi = 0.0;
};

inline ChiDerivatives chi_derivatives(const WavefunctionSeries& ws, double y, double gamma) {
  if (!(y > 0.0 && y < 1.0)) throw DomainError("chi_derivatives: y must be interior");
  const double mu = ws.basis.mu, nu = ws.basis.nu;
  const int n = static_cast<int>(ws.coeffs.size());
  const auto P0 = jacobi_poly_sequence(n - 1, {mu, nu}, y);
  const auto P1 = jacobi_poly_sequence(std::max(n - 2, 0), {mu + 1.0, nu + 1.0}, y);
  const auto P2 = jacobi_poly_sequence(std::max(n - 3, 0), {mu + 2.0, nu + 2.0}, y);
  double s = 0.0, s1 = 0.0, s2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double c = ws.coeffs[j] * ws.norms[j];
    s += c * P0[j];
    if (j >= 1) s1 += c * (j + mu + nu + 1.0) * P1[j - 1];
    if (j >= 2) s2 += c * (j + mu + nu + 1.0) * (j + mu + nu + 2.0) * P2[j - 2];
  }
  const double e1 = ws.basis.alpha, e2 = ws.basis.beta, e3 = gamma;
  const double ym = 1.0 - y, dy = ws.d - y;
  const double h = std::pow(y, e1) * std::pow(ym, e2) * std::pow(dy, e3);
  const double L = e1 / y - e2 / ym - e3 / dy;
  const double Lp = -e1 / (y * y) - e2 / (ym * ym) - e3 / (dy * dy);
  ChiDerivatives out;
  out.chi = h * s;
  out.dchi = h * (s1 + L * s);
  out.d2chi = h * (s2 + 2.0 * L * s1 + (L * L + Lp) * s);
  return out;
}

/// Left side of the Heun-type equation at y for a chi with derivatives.
inline double heun_equation_residual(const HeunParams& p, double y, const ChiDerivatives& c) {
  const double ym = 1.0 - y, dy = p.d - y;
  return c.d2chi + (p.a / y - p.b / ym - p.c / dy) * c.dchi +
         (p.A / y - p.B / ym - p.C / dy + p.D * y - p.E) / (y * ym * dy) * c.chi;
}

/// Discrete Wilson weight of a terminating restricted series, 1 / sum p_n^2.
inline double restricted_discrete_weight(const WavefunctionSeries& ws) {
  if (!is_restricted(ws.cls)) throw DomainError("discrete weight is defined for restricted series");
  if (!ws.terminated) throw InadmissibleError("series does not terminate: not a bound level");
  double s = 0.0;
  for (double v : ws.coeffs) s += v * v;
  return 1.0 / s;
}

/// Constant making the terminating restricted psi unit-normalized in x;
/// the integral is a Gauss-Jacobi sum, exact for the polynomial part.
inline double restricted_normalization(const WavefunctionSeries& ws) {
  if (!is_restricted(ws.cls)) throw DomainError("normalization is offered for restricted series only");
  if (!ws.terminated) throw InadmissibleError("series does not terminate: not a bound level");
  // psi^2 dx = y^{2alpha-a} (1-y)^{2beta-b} S^2 dy / lambda.
  const double ey = 2.0 * ws.exp_y - ws.ccase.a;
  const double e1 = 2.0 * ws.exp_1my - ws.ccase.b;
  if (!(ey > -1.0) || !(e1 > -1.0)) throw InadmissibleError("wavefunction is not square integrable");
  int deg = 0;
  for (int j = 0; j < static_cast<int>(ws.coeffs.size()); ++j)
    if (ws.coeffs[j] != 0.0) deg = j;
  const QuadratureRule rule = gauss_jacobi(deg + 2, {e1, ey});
  double integral = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double y = rule.nodes[i];
    const double f = series_sum(ws, y);
    integral += rule.weights[i] * f * f;
  }
  integral /= ws.lambda;
  return 1.0 / std::sqrt(integral);
}

} // namespace heun
