#pragma once
//
// Three-term recursions: the class recursions of the general, special and
// restricted solutions, the Wilson / Racah-Heun / V families they map to,
// Jacobi matrices and their numeric spectra.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "heun/errors.hpp"
#include "heun/heun_core.hpp"
#include "heun/specfun.hpp"
#include "heun/tridiagonal.hpp"

namespace heun {

using JacobiMatrix = SymTridiag;

namespace detail {

// a*b + c*d with the rounding error of both products folded back in.
inline double dot2(double a, double b, double c, double d) {
  const double p = a * b;
  const double ep = std::fma(a, b, -p);
  const double q = c * d;
  const double eq = std::fma(c, d, -q);
  const double s = p + q;
  const double z = s - p;
  const double es = (p - (s - z)) + (q - z);
  return s + (ep + eq + es);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Class recursions

inline double coeff_S(int n, double mu, double nu, double abc) {
  const double t = n + 0.5 * (mu + nu) + 1.0;
  const double h = 0.5 * (abc - 1.0);
  return (t - h) * (t + h);
}

inline double coeff_T(int n, double mu, double nu, double abc) {
  const double t = n + 0.5 * (mu + nu + 1.0);
  const double h = 0.5 * (abc - 1.0);
  return (t - h) * (t + h);
}

/// R of the general class.
inline double coeff_R(const HeunParams& p) {
  return p.E - p.B / (p.d - 1.0) - p.D * p.d - 0.25 * (1.0 - p.a) * (1.0 - p.a) +
         0.5 * p.c * (p.d * (p.a + p.b + p.c - 2.0) - p.a - 0.5 * p.c + 1.0);
}

inline double coeff_R_tilde(const HeunParams& p) {
  return coeff_R(p) - p.A / p.d + 0.25 * (1.0 - p.a) * (1.0 - p.a);
}

struct ClassRecursionCoeffs {
  SolutionClass cls = SolutionClass::General;
  double R = 0.0;
  double R_tilde = 0.0;
  double mu = 0.0, nu = 0.0, D = 0.0, d = 2.0, abc = 0.0;
  std::vector<double> S, T, F, G;

  int n_max() const { return static_cast<int>(S.size()) - 1; }

  /// Constant on the left of the class recursion
  ///   lhs p_n = diag_n p_n + off_{n-1} p_{n-1} + off_n p_{n+1}.
  double lhs() const {
    switch (cls) {
    case SolutionClass::General: return R;
    case SolutionClass::Special: return 2.0 * d - 1.0;
    default: return 0.25 * (mu + 1.0) * (mu + 1.0);
    }
  }

  /// Diagonal coefficient; for the special class it carries R_tilde.
  double diag(int n) const { return diag_with(n, R_tilde); }

  double diag_with(int n, double r_tilde) const {
    const std::size_t k = static_cast<std::size_t>(n);
    const double s = 2.0 * n + mu + nu;
    switch (cls) {
    case SolutionClass::General: {
      const double first = n == 0 ? 0.0 : -n * (n + mu) / s;
      return first + d * (n + 0.5 * (mu + nu + 1.0)) + 0.5 * (F[k] + 1.0 - 2.0 * d) * (S[k] + D) -
             0.25 * (nu + 1.0) * (nu + 1.0);
    }
    case SolutionClass::Special: {
      const double den = T[k] + D;
      if (den == 0.0) throw BreakdownError("special recursion: T_n + D = 0 at n = " + std::to_string(n));
      return -2.0 * r_tilde / den + F[k];
    }
    default: {
      const double first = n == 0 ? 0.0 : n * (n + nu) / s;
      return first + 0.5 * (F[k] - 1.0) * S[k] + 0.25 * (mu + 1.0) * (mu + 1.0);
    }
    }
  }

  double off(int n) const {
    if (n < 0) return 0.0;
    const std::size_t k = static_cast<std::size_t>(n);
    switch (cls) {
    case SolutionClass::General: return G[k] * (S[k] + D);
    case SolutionClass::Special: return 2.0 * G[k];
    default: return G[k] * S[k];
    }
  }
};

/// R, R_tilde and the S, T, F, G tables for n = 0..n_max.
inline ClassRecursionCoeffs class_recursion_coeffs(SolutionClass cls, const HeunParams& p, const BasisParams& basis,
                                                   int n_max) {
  if (cls == SolutionClass::RestrictedSecond)
    throw UnsupportedError("the second restricted family has basis parameters only");
  if (n_max < 0) throw DomainError("class_recursion_coeffs: negative n_max");
  ClassRecursionCoeffs k;
  k.cls = cls;
  k.R = coeff_R(p);
  k.R_tilde = coeff_R_tilde(p);
  k.mu = basis.mu;
  k.nu = basis.nu;
  k.D = is_restricted(cls) ? 0.0 : p.D;
  k.d = p.d;
  k.abc = p.a + p.b + p.c;
  const JacobiIndex idx{basis.mu, basis.nu};
  idx.validate();
  const std::size_t m = static_cast<std::size_t>(n_max) + 2;
  k.S.resize(m);
  k.T.resize(m);
  k.F.resize(m);
  k.G.resize(m);
  for (std::size_t n = 0; n < m; ++n) {
    const int nn = static_cast<int>(n);
    if (n > 0 && 2.0 * nn + basis.mu + basis.nu == 0.0)
      throw DegenerateError("2n + mu + nu = 0 in the recursion coefficients");
    k.S[n] = coeff_S(nn, basis.mu, basis.nu, k.abc);
    k.T[n] = coeff_T(nn, basis.mu, basis.nu, k.abc);
    k.F[n] = jacobi_F(nn, idx);
    k.G[n] = jacobi_G(nn, idx);
  }
  return k;
}

struct PolyValues {
  std::vector<double> values;
  bool growth_alarm = false;  // some |p_{n+1}/p_n| exceeded growth_limit
  int alarm_at = -1;
};

inline constexpr double kGrowthLimit = 1e8;

namespace detail {

inline void monitor(PolyValues& out, std::size_t n) {
  if (n == 0 || out.growth_alarm) return;
  const double prev = out.values[n - 1];
  const double cur = out.values[n];
  if (prev != 0.0 && std::abs(cur / prev) > kGrowthLimit) {
    out.growth_alarm = true;
    out.alarm_at = static_cast<int>(n);
  }
}

} // namespace detail

/// p_0..p_n by forward recursion. The optional argument replaces the class
/// spectral variable: z^2 (= R) for General, z (R_tilde = -z sqrt(d(d-1)))
/// for Special, z^2 (lhs = -z^2) for Restricted.
inline PolyValues eval_class_polynomial(const ClassRecursionCoeffs& k, int n,
                                        std::optional<double> z_argument = std::nullopt) {
  if (n < 0) throw DomainError("eval_class_polynomial: negative degree");
  if (n > k.n_max()) throw DomainError("eval_class_polynomial: coefficients not available up to n");
  double lhs = k.lhs();
  double r_tilde = k.R_tilde;
  if (z_argument) {
    switch (k.cls) {
    case SolutionClass::General: lhs = *z_argument; break;
    case SolutionClass::Special: r_tilde = -*z_argument * std::sqrt(k.d * (k.d - 1.0)); break;
    default: lhs = -*z_argument; break;
    }
  }
  PolyValues out;
  out.values.assign(static_cast<std::size_t>(n) + 1, 0.0);
  out.values[0] = 1.0;
  for (int j = 0; j < n; ++j) {
    const double o = k.off(j);
    if (o == 0.0) throw BreakdownError("class recursion breaks down: off-diagonal vanishes at n = " + std::to_string(j));
    const double prev = j > 0 ? out.values[j - 1] : 0.0;
    const double num = detail::dot2(lhs - k.diag_with(j, r_tilde), out.values[j], -k.off(j - 1), prev);
    out.values[j + 1] = num / o;
    detail::monitor(out, static_cast<std::size_t>(j) + 1);
  }
  return out;
}

/// Symmetric tridiagonal matrix of a class recursion, order M. For the
/// special class the spectral variable sits in the diagonal, so the matrix is
/// the one of the pencil form (see special_pencil).
inline JacobiMatrix class_jacobi_matrix(const ClassRecursionCoeffs& k, int M) {
  if (k.cls == SolutionClass::Special)
    throw UnsupportedError("special class spectral variable enters through a pencil; use special_pencil");
  if (M < 1 || M > k.n_max() + 1) throw DomainError("class_jacobi_matrix: order out of range");
  JacobiMatrix J;
  J.diag.resize(static_cast<std::size_t>(M));
  J.off.resize(static_cast<std::size_t>(M) - 1);
  for (int n = 0; n < M; ++n) J.diag[n] = k.diag(n);
  for (int n = 0; n + 1 < M; ++n) J.off[n] = k.off(n);
  return J;
}

/// Pencil (W, K) for the special class: W p = sigma K p with
/// sigma = 1/(-2 R_tilde), K = (2d-1) - Jacobi matrix (positive definite),
/// W = diag(1/(T_n + D)).
struct Pencil {
  SymTridiag W;
  SymTridiag K;
};

inline Pencil special_pencil(const ClassRecursionCoeffs& k, int M) {
  if (k.cls != SolutionClass::Special) throw DomainError("special_pencil: not a special-class recursion");
  if (M < 1 || M > k.n_max() + 1) throw DomainError("special_pencil: order out of range");
  Pencil pc;
  const std::size_t m = static_cast<std::size_t>(M);
  pc.W.diag.resize(m);
  pc.W.off.assign(m - 1, 0.0);
  pc.K.diag.resize(m);
  pc.K.off.resize(m - 1);
  for (std::size_t n = 0; n < m; ++n) {
    const double den = k.T[n] + k.D;
    if (den == 0.0) throw BreakdownError("special recursion: T_n + D = 0");
    pc.W.diag[n] = 1.0 / den;
    pc.K.diag[n] = 2.0 * k.d - 1.0 - k.F[n];
  }
  for (std::size_t n = 0; n + 1 < m; ++n) pc.K.off[n] = -2.0 * k.G[n];
  return pc;
}

struct IdentityResidual {
  double residual = 0.0;
  double scale = 0.0;
};

/// |LHS - RHS| of the identity used to map the general recursion onto the
/// Racah-Heun form, with the magnitude of the largest term.
inline IdentityResidual identity_14_residual(int n, double mu, double nu, double D, double abc) {
  const JacobiIndex idx{mu, nu};
  const double s = 2.0 * n + mu + nu;
  const double Sn = coeff_S(n, mu, nu, abc) + D;
  double first;
  if (n == 0) {
    first = (nu + 1.0) * Sn / (mu + nu + 2.0);
  } else {
    first = (n + nu + 1.0) * (n + mu + nu + 1.0) * Sn / ((s + 1.0) * (s + 2.0));
  }
  const double second = n == 0 ? 0.0 : n * (n + mu) * (coeff_S(n - 1, mu, nu, abc) + D) / (s * (s + 1.0));
  const double r1 = n == 0 ? 0.0 : -n * (n + mu) / s;
  const double r2 = 0.5 * (1.0 + jacobi_F(n, idx)) * Sn;
  IdentityResidual out;
  out.residual = std::abs((first + second) - (r1 + r2));
  out.scale = std::max({std::abs(first), std::abs(second), std::abs(r1), std::abs(r2)});
  return out;
}

// ---------------------------------------------------------------------------
// Wilson and Racah-Heun

/// Wilson parameters as two pairs m1 -+ delta1, m2 -+ delta2, i.e.
/// a = m1 - delta1, b = m1 + delta1, c = m2 - delta2, d = m2 + delta2.
/// Only the squares of the half-gaps and their product enter the recursion,
/// so a negative square encodes a complex-conjugate pair.
struct WilsonParams {
  double m1 = 0.0, dd1 = 0.0, m2 = 0.0, dd2 = 0.0, cross = 0.0;

  static WilsonParams from_real(double a, double b, double c, double d) {
    WilsonParams w;
    w.m1 = 0.5 * (a + b);
    w.m2 = 0.5 * (c + d);
    const double d1 = 0.5 * (b - a);
    const double d2 = 0.5 * (d - c);
    w.dd1 = d1 * d1;
    w.dd2 = d2 * d2;
    w.cross = d1 * d2;
    return w;
  }

  /// (sigma - tau, sigma + tau, eta, eta) with tau^2 of either sign.
  static WilsonParams paired(double sigma, double tau_sq, double eta) {
    WilsonParams w;
    w.m1 = sigma;
    w.dd1 = tau_sq;
    w.m2 = eta;
    w.dd2 = 0.0;
    w.cross = 0.0;
    return w;
  }

  double s() const { return 2.0 * (m1 + m2); }
  bool all_real() const { return dd1 >= 0.0 && dd2 >= 0.0; }

  /// The four parameters as complex numbers.
  std::array<std::complex<double>, 4> complex_params() const {
    auto half = [](double sq) {
      return sq >= 0.0 ? std::complex<double>(std::sqrt(sq), 0.0) : std::complex<double>(0.0, std::sqrt(-sq));
    };
    std::complex<double> d1 = half(dd1);
    std::complex<double> d2 = half(dd2);
    // Fix the relative sign of the half-gaps from the stored product.
    if (std::abs(d1 * d2 - cross) > std::abs(d1 * d2 + cross)) d2 = -d2;
    return {m1 - d1, m1 + d1, m2 - d2, m2 + d2};
  }

  /// Real parameters (a, b, c, d); throws if a pair is complex.
  std::array<double, 4> real_params() const {
    if (!all_real()) throw InadmissibleError("Wilson parameters contain a complex-conjugate pair");
    const auto z = complex_params();
    return {z[0].real(), z[1].real(), z[2].real(), z[3].real()};
  }
};

/// Diagonal coefficient A_n + C_n - a^2 of the Wilson recursion.
inline double wilson_diag(int n, const WilsonParams& w) {
  const double s = w.s();
  const double t = n + w.m1 + w.m2;
  const double ka = n == 0 ? 2.0 * w.m1 / s : (n + s - 1.0) * (n + 2.0 * w.m1) / ((2.0 * n + s - 1.0) * (2.0 * n + s));
  const double kc = n == 0 ? 0.0 : n * (n + 2.0 * w.m2 - 1.0) / ((2.0 * n + s - 2.0) * (2.0 * n + s - 1.0));
  const double shift = w.dd1 - w.dd2;
  return ka * (t * t + shift) + kc * ((t - 1.0) * (t - 1.0) + shift) - w.m1 * w.m1 - w.dd1;
}

/// Off-diagonal B_n of the Wilson recursion (nonnegative root).
inline double wilson_off(int n, const WilsonParams& w) {
  if (n < 0) return 0.0;
  const double s = w.s();
  const double t = n + w.m1 + w.m2;
  const double q = t * t + w.dd1 - w.dd2;
  const double four = q * q - 4.0 * t * t * w.dd1;  // (n+a+c)(n+a+d)(n+b+c)(n+b+d)
  // (n+s-1)/(2n+s-1) is 1 at n = 0.
  double rest = (n + 1.0) * (n + 2.0 * w.m1) * (n + 2.0 * w.m2) / (2.0 * n + s + 1.0);
  if (n > 0) rest *= (n + s - 1.0) / (2.0 * n + s - 1.0);
  double rad = rest * four;
  if (rad < 0.0) {
    if (rad > -1e-14 * std::abs(rest) * (q * q + 1.0)) rad = 0.0;
    else
      throw InadmissibleError("Wilson recursion: negative radicand at n = " + std::to_string(n));
  }
  return std::sqrt(rad) / (2.0 * n + s);
}

/// kappa-deformation term (n+a+c)(n+b+d) - (2n+s-1)/2.
inline double racah_heun_term(int n, const WilsonParams& w) {
  const double t = n + w.m1 + w.m2;
  return t * t - w.dd1 - w.dd2 - 2.0 * w.cross - 0.5 * (2.0 * n + w.s() - 1.0);
}

/// W_0..W_n of the kappa-deformed Wilson recursion (kappa = 0 gives Wilson).
inline PolyValues racah_heun_eval(int n, double z_squared, double kappa, const WilsonParams& w) {
  if (n < 0) throw DomainError("racah_heun_eval: negative degree");
  PolyValues out;
  out.values.assign(static_cast<std::size_t>(n) + 1, 0.0);
  out.values[0] = 1.0;
  for (int j = 0; j < n; ++j) {
    const double b = wilson_off(j, w);
    if (b == 0.0) throw BreakdownError("Wilson recursion breaks down: B_n = 0 at n = " + std::to_string(j));
    double diag = wilson_diag(j, w);
    if (kappa != 0.0) diag -= kappa * racah_heun_term(j, w);
    const double prev = j > 0 ? out.values[j - 1] : 0.0;
    const double num = detail::dot2(diag - z_squared, out.values[j], -wilson_off(j - 1, w), prev);
    out.values[j + 1] = num / b;
    detail::monitor(out, static_cast<std::size_t>(j) + 1);
  }
  return out;
}

inline PolyValues wilson_eval(int n, double z_squared, const WilsonParams& w) {
  return racah_heun_eval(n, z_squared, 0.0, w);
}

/// Normalized Wilson polynomial from the terminating 4F3 sum (real
/// parameters only).
inline double wilson_hypergeometric(int n, double z_squared, const WilsonParams& w) {
  if (n < 0) throw DomainError("wilson_hypergeometric: negative degree");
  const auto [a, b, c, d] = w.real_params();
  const double s = a + b + c + d;
  if (n == 0) return 1.0;
  auto log_poch = [](double x, int k) {
    double acc = 0.0;
    int sign = 1;
    for (int j = 0; j < k; ++j) {
      const double v = x + j;
      if (v == 0.0) throw DegenerateError("Wilson 4F3: vanishing Pochhammer symbol");
      if (v < 0.0) sign = -sign;
      acc += std::log(std::abs(v));
    }
    return std::pair<double, int>{acc, sign};
  };
  double log_pref = 0.0;
  int sign_pref = 1;
  auto mul = [&](std::pair<double, int> v, int power) {
    log_pref += power * v.first;
    if (v.second < 0) sign_pref = -sign_pref;
  };
  mul(log_poch(a + b, n), 1);
  mul(log_poch(a + c, n), 1);
  mul(log_poch(a + d, n), 1);
  mul(log_poch(s, n), 1);
  mul(log_poch(b + c, n), -1);
  mul(log_poch(b + d, n), -1);
  mul(log_poch(c + d, n), -1);
  log_pref -= log_gamma(n + 1.0);
  if (sign_pref < 0) throw InadmissibleError("Wilson 4F3: negative normalization radicand");
  const double pref = std::sqrt((2.0 * n + s - 1.0) / (n + s - 1.0)) * std::exp(0.5 * log_pref);

  // The alternating sum cancels for large z; extended precision keeps the
  // oracle about three digits ahead of the recursion.
  using ld = long double;
  ld term = 1.0L;
  ld sum = 1.0L;
  for (int k = 0; k < n; ++k) {
    const ld ak = static_cast<ld>(a) + k;
    term *= static_cast<ld>(k - n) * (static_cast<ld>(n) + s - 1.0L + k) * (ak * ak + z_squared) /
            ((static_cast<ld>(a) + b + k) * (static_cast<ld>(a) + c + k) * (static_cast<ld>(a) + d + k) * (k + 1.0L));
    sum += term;
  }
  return static_cast<double>(pref * sum);
}

namespace detail {

inline void require_continuous(const WilsonParams& w) {
  const auto z = w.complex_params();
  for (const auto& v : z)
    if (!(v.real() > 0.0)) throw InadmissibleError("Wilson weight needs parameters with positive real part");
}

inline double log_weight_norm(const WilsonParams& w) {
  const auto z = w.complex_params();
  std::complex<double> acc = log_gamma(std::complex<double>(w.s(), 0.0));
  const int pairs[6][2] = {{0, 1}, {2, 3}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
  for (const auto& pr : pairs) acc -= log_gamma(z[pr[0]] + z[pr[1]]);
  return acc.real() - std::log(2.0 * std::numbers::pi);
}

} // namespace detail

/// Normalized Wilson weight rho(z), z > 0.
inline double wilson_weight(double z, const WilsonParams& w) {
  detail::require_continuous(w);
  if (!(z > 0.0)) throw DomainError("wilson_weight: z must be positive");
  const auto p = w.complex_params();
  const std::complex<double> iz(0.0, z);
  double lg = 0.0;
  for (const auto& v : p) lg += log_gamma(v + iz).real();
  lg -= log_gamma(2.0 * iz).real();
  return std::exp(detail::log_weight_norm(w) + 2.0 * lg);
}

struct WilsonAsymptotics {
  double amplitude = 0.0;
  double phase = 0.0;  // reduced to (-pi, pi]
};

/// Amplitude 2/sqrt(pi rho(z)) and phase arg Gamma(2iz) - arg prod
/// Gamma(p + iz) of W_n ~ amplitude n^(-1/2) cos(2z ln n + phase).
inline WilsonAsymptotics wilson_asymptotics(double z, const WilsonParams& w) {
  WilsonAsymptotics out;
  out.amplitude = 2.0 / std::sqrt(std::numbers::pi * wilson_weight(z, w));
  const auto p = w.complex_params();
  const std::complex<double> iz(0.0, z);
  double ph = log_gamma(2.0 * iz).imag();
  for (const auto& v : p) ph -= log_gamma(v + iz).imag();
  out.phase = std::remainder(ph, 2.0 * std::numbers::pi);
  return out;
}

/// z_k^2 = -(k+a)^2, k = 0..floor(-a), for a < 0 with a+b, a+c, a+d of
/// positive real part. Empty for a >= 0.
inline std::vector<double> wilson_discrete_spectrum(const WilsonParams& w) {
  const auto p = w.complex_params();
  if (p[0].imag() != 0.0) throw InadmissibleError("discrete spectrum needs a real first parameter");
  const double a = p[0].real();
  if (a >= 0.0) return {};
  for (int j = 1; j < 4; ++j)
    if (!((p[0] + p[j]).real() > 0.0))
      throw InadmissibleError("discrete spectrum needs a+b, a+c, a+d with positive real part");
  std::vector<double> out;
  for (int k = 0; k <= static_cast<int>(std::floor(-a)); ++k) out.push_back(-(k + a) * (k + a));
  return out;
}

/// Jacobi matrix of the (kappa-deformed) Wilson recursion, order M.
inline JacobiMatrix wilson_jacobi_matrix(const WilsonParams& w, int M, double kappa = 0.0) {
  if (M < 1) throw DomainError("wilson_jacobi_matrix: order must be positive");
  JacobiMatrix J;
  J.diag.resize(static_cast<std::size_t>(M));
  J.off.resize(static_cast<std::size_t>(M) - 1);
  for (int n = 0; n < M; ++n) J.diag[n] = wilson_diag(n, w) - kappa * racah_heun_term(n, w);
  for (int n = 0; n + 1 < M; ++n) {
    const double b = wilson_off(n, w);
    if (!(b > 0.0)) throw InadmissibleError("Favard condition violated: B_n <= 0 at n = " + std::to_string(n));
    J.off[n] = b;
  }
  return J;
}

// ---------------------------------------------------------------------------
// V family

struct NewVParams {
  double mu = 0.0, nu = 0.0;
  double tau_sq = 0.0;  // negative for imaginary tau
  double theta = 0.0;

  void validate() const {
    JacobiIndex{mu, nu}.validate();
    if (!(theta >= 0.0)) throw InadmissibleError("V polynomials need theta >= 0");
  }
  double resonance(int n) const {
    const double t = n + 0.5 * (mu + nu + 1.0);
    return t * t - tau_sq;
  }
};

/// V_0..V_n by forward recursion from V_0 = 1.
inline PolyValues v_poly_eval(int n, double z, const NewVParams& v) {
  v.validate();
  if (n < 0) throw DomainError("v_poly_eval: negative degree");
  const JacobiIndex idx{v.mu, v.nu};
  const double ch = std::cosh(v.theta);
  const double sh = std::sinh(v.theta);
  PolyValues out;
  out.values.assign(static_cast<std::size_t>(n) + 1, 0.0);
  out.values[0] = 1.0;
  for (int j = 0; j < n; ++j) {
    const double den = v.resonance(j);
    if (den == 0.0) throw BreakdownError("V recursion: (n+(mu+nu+1)/2)^2 = tau^2 at n = " + std::to_string(j));
    const double diag = z * sh / den + jacobi_F(j, idx);
    const double prev = j > 0 ? out.values[j - 1] : 0.0;
    const double num = detail::dot2(ch - diag, out.values[j], -2.0 * jacobi_G(j - 1, idx), prev);
    out.values[j + 1] = num / (2.0 * jacobi_G(j, idx));
    detail::monitor(out, static_cast<std::size_t>(j) + 1);
  }
  return out;
}

/// Pencil of the V recursion: W v = sigma K v with sigma = 1/z,
/// W = diag(sinh(theta) / resonance_n), K = cosh(theta) - Jacobi matrix.
inline Pencil newv_pencil(const NewVParams& v, int M) {
  v.validate();
  if (M < 1) throw DomainError("newv_pencil: order must be positive");
  if (v.theta == 0.0) throw InadmissibleError("theta = 0 removes the spectral variable from the V recursion");
  const JacobiIndex idx{v.mu, v.nu};
  const std::size_t m = static_cast<std::size_t>(M);
  Pencil pc;
  pc.W.diag.resize(m);
  pc.W.off.assign(m - 1, 0.0);
  pc.K.diag.resize(m);
  pc.K.off.resize(m - 1);
  const double sh = std::sinh(v.theta);
  const double ch = std::cosh(v.theta);
  for (std::size_t n = 0; n < m; ++n) {
    const double den = v.resonance(static_cast<int>(n));
    if (den == 0.0) throw BreakdownError("V recursion resonance");
    pc.W.diag[n] = sh / den;
    pc.K.diag[n] = ch - jacobi_F(static_cast<int>(n), idx);
  }
  for (std::size_t n = 0; n + 1 < m; ++n) pc.K.off[n] = -2.0 * jacobi_G(static_cast<int>(n), idx);
  return pc;
}

/// Eigenvalues z of the order-M truncated V recursion, ascending. Pencil
/// eigenvalues sigma = 1/z; sigma = 0 cannot occur since W is nonsingular.
inline std::vector<double> newv_eigenvalues(const NewVParams& v, int M) {
  const Pencil pc = newv_pencil(v, M);
  std::vector<double> sig = pencil_eigenvalues(pc.W, pc.K);
  std::vector<double> z;
  z.reserve(sig.size());
  for (double s : sig) z.push_back(1.0 / s);
  std::sort(z.begin(), z.end());
  return z;
}

/// floor(|tau| - (mu+nu+1)/2) + 1 for real tau, 0 otherwise: the size of
/// the discrete negative spectrum stated for the V family (conjecture).
inline int newv_conjectured_count(const NewVParams& v) {
  if (v.tau_sq <= 0.0) return 0;
  const double top = std::sqrt(v.tau_sq) - 0.5 * (v.mu + v.nu + 1.0);
  if (top < 0.0) return 0;
  return static_cast<int>(std::floor(top)) + 1;
}

// ---------------------------------------------------------------------------
// Tagged family and numeric spectra

struct WilsonFamily {
  WilsonParams w;
};
struct RacahHeunFamily {
  double kappa = 0.0;
  WilsonParams w;
};
struct NewVFamily {
  NewVParams v;
};
using PolynomialFamily = std::variant<WilsonFamily, RacahHeunFamily, NewVFamily>;

inline std::string family_name(const PolynomialFamily& f) {
  if (std::holds_alternative<WilsonFamily>(f)) return "wilson";
  if (std::holds_alternative<RacahHeunFamily>(f)) return "racah_heun";
  return "new_v";
}

/// Values p_0..p_n of a family at its spectral argument (z^2 for the Wilson
/// families, z for V).
inline PolyValues family_eval(const PolynomialFamily& f, int n, double arg) {
  if (const auto* w = std::get_if<WilsonFamily>(&f)) return wilson_eval(n, arg, w->w);
  if (const auto* r = std::get_if<RacahHeunFamily>(&f)) return racah_heun_eval(n, arg, r->kappa, r->w);
  return v_poly_eval(n, arg, std::get<NewVFamily>(f).v);
}

/// Eigenvalues of the order-M truncation (z^2 for Wilson families, z for V).
inline std::vector<double> family_eigenvalues(const PolynomialFamily& f, int M) {
  if (const auto* w = std::get_if<WilsonFamily>(&f)) return eigenvalues(wilson_jacobi_matrix(w->w, M));
  if (const auto* r = std::get_if<RacahHeunFamily>(&f)) return eigenvalues(wilson_jacobi_matrix(r->w, M, r->kappa));
  return newv_eigenvalues(std::get<NewVFamily>(f).v, M);
}

struct StableEigenvalue {
  double value = 0.0;       // order-2M estimate
  double drift = 0.0;       // |order 2M - order M|
  double tolerance = 0.0;   // acceptance threshold used
};

struct DiscreteSpectrum {
  std::vector<StableEigenvalue> stable;
  std::vector<double> eig_M;
  std::vector<double> eig_2M;
  int M = 0;
};

/// Eigenvalues that agree between two truncation orders within
/// max(abs_floor, rel_gap * gap to the nearest neighbour).
inline DiscreteSpectrum numeric_discrete_spectrum(const std::vector<double>& eig_M, const std::vector<double>& eig_2M,
                                                  int M, double abs_floor = 1e-6, double rel_gap = 1e-3) {
  DiscreteSpectrum out;
  out.M = M;
  out.eig_M = eig_M;
  out.eig_2M = eig_2M;
  for (std::size_t i = 0; i < eig_2M.size(); ++i) {
    const double v = eig_2M[i];
    double gap = std::numeric_limits<double>::infinity();
    if (i > 0) gap = std::min(gap, v - eig_2M[i - 1]);
    if (i + 1 < eig_2M.size()) gap = std::min(gap, eig_2M[i + 1] - v);
    auto it = std::lower_bound(eig_M.begin(), eig_M.end(), v);
    double drift = std::numeric_limits<double>::infinity();
    if (it != eig_M.end()) drift = std::min(drift, std::abs(*it - v));
    if (it != eig_M.begin()) drift = std::min(drift, std::abs(*(it - 1) - v));
    const double tol = std::max(abs_floor, rel_gap * gap);
    if (drift <= tol) out.stable.push_back({v, drift, tol});
  }
  return out;
}

inline DiscreteSpectrum numeric_discrete_spectrum(const PolynomialFamily& f, int M, double abs_floor = 1e-6,
                                                  double rel_gap = 1e-3) {
  return numeric_discrete_spectrum(family_eigenvalues(f, M), family_eigenvalues(f, 2 * M), M, abs_floor, rel_gap);
}

} // namespace heun
