#pragma once
//
// Scalar special-function kernels: shifted Jacobi polynomials on [0,1],
// their normalization constants, log-gamma (real and complex argument),
// the Gauss hypergeometric series and the lower incomplete beta function.
//

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>
#include <algorithm>

#include "heun/errors.hpp"

namespace heun {

/// Jacobi indices (mu, nu) of P_n^{(mu,nu)}(y) on [0,1]; the weight is
/// y^nu (1-y)^mu.
struct JacobiIndex {
  double mu = 0.0;
  double nu = 0.0;

  void validate() const {
    if (!(mu > -1.0) || !(nu > -1.0))
      throw DomainError("Jacobi indices must satisfy mu > -1 and nu > -1 (got mu=" +
                        std::to_string(mu) + ", nu=" + std::to_string(nu) + ")");
  }
};

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

// Lanczos (g = 7, n = 9) coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// zeta(k) for k = 2..31, used by the Taylor expansion of lnGamma(1+z).
inline constexpr std::array<double, 30> kZeta = {
    1.6449340668482264, 1.2020569031595943, 1.0823232337111382, 1.0369277551433699,
    1.0173430619844491, 1.0083492773819228, 1.0040773561979443, 1.0020083928260822,
    1.0009945751278181, 1.0004941886041195, 1.0002460865533080, 1.0001227133475785,
    1.0000612481350587, 1.0000305882363070, 1.0000152822594087, 1.0000076371976379,
    1.0000038172932650, 1.0000019082127166, 1.0000009539620339, 1.0000004769329868,
    1.0000002384505027, 1.0000001192199260, 1.0000000596081891, 1.0000000298035035,
    1.0000000149015548, 1.0000000074507118, 1.0000000037253340, 1.0000000018626597,
    1.0000000009313274, 1.0000000004656629};

inline constexpr double kEulerGamma = 0.57721566490153286061;

// lnGamma(1+z) for |z| <= 0.3 by its Taylor series; keeps relative accuracy
// near the zeros of lnGamma at x = 1 and x = 2.
inline double log_gamma_one_plus(double z) {
  double sum = -kEulerGamma * z;
  double zk = -z;
  for (std::size_t k = 2; k < kZeta.size() + 2; ++k) {
    zk *= -z;
    const double term = kZeta[k - 2] * zk / static_cast<double>(k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

inline double log_gamma_lanczos(double x) {
  const double z = x - 1.0;
  double acc = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) acc += kLanczos[k] / (z + static_cast<double>(k));
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

inline std::complex<double> log_gamma_lanczos(std::complex<double> w) {
  const std::complex<double> z = w - 1.0;
  std::complex<double> acc = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) acc += kLanczos[k] / (z + static_cast<double>(k));
  const std::complex<double> t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

// log(sin(pi w)) without overflow for large |Im w|.
inline std::complex<double> log_sin_pi(std::complex<double> w) {
  using namespace std::complex_literals;
  constexpr double pi = std::numbers::pi;
  if (w.imag() >= 0.0)
    return -1i * pi * w + std::log(1.0 - std::exp(2i * pi * w)) + std::log(0.5i);
  return 1i * pi * w + std::log(1.0 - std::exp(-2i * pi * w)) - std::log(2i);
}

} // namespace detail

/// ln|Gamma(x)| for real x off the poles.
inline double log_gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("log_gamma: non-finite argument");
  if (detail::is_nonpositive_integer(x)) throw PoleError("log_gamma: pole at x = " + std::to_string(x));
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    const double s = std::sin(std::numbers::pi * x);
    return std::log(std::numbers::pi / std::abs(s)) - log_gamma(1.0 - x);
  }
  if (std::abs(x - 1.0) <= 0.3) return detail::log_gamma_one_plus(x - 1.0);
  if (std::abs(x - 2.0) <= 0.3) return detail::log_gamma_one_plus(x - 2.0) + std::log1p(x - 2.0);
  return detail::log_gamma_lanczos(x);
}

/// ln Gamma(w) for complex w; real part is ln|Gamma(w)|, imaginary part a
/// continuous determination of arg Gamma(w) in the right half-plane.
inline std::complex<double> log_gamma(std::complex<double> w) {
  if (w.imag() == 0.0 && detail::is_nonpositive_integer(w.real()))
    throw PoleError("log_gamma: pole at w = " + std::to_string(w.real()));
  if (w.real() < 0.5) {
    return std::log(std::numbers::pi) - detail::log_sin_pi(w) - log_gamma(1.0 - w);
  }
  return detail::log_gamma_lanczos(w);
}

/// Complete beta function B(alpha, beta) for positive arguments.
inline double beta_function(double alpha, double beta) {
  return std::exp(log_gamma(alpha) + log_gamma(beta) - log_gamma(alpha + beta));
}

inline std::vector<double> jacobi_poly_sequence(int n, const JacobiIndex& idx, double y);
inline double jacobi_norm(int n, const JacobiIndex& idx);

/// Shifted Jacobi polynomial P_n^{(mu,nu)}(y) on [0,1], i.e. the classical
/// polynomial at x = 2y - 1, by the three-term recursion in the degree.
inline double jacobi_poly(int n, const JacobiIndex& idx, double y) {
  idx.validate();
  if (n < 0) throw DomainError("jacobi_poly: negative degree");
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("jacobi_poly: y must lie in [0,1]");
  return jacobi_poly_sequence(n, idx, y).back();
}

/// Diagonal coefficient F_n of the orthonormal Jacobi recursion
/// (2y-1) q_n = F_n q_n + 2 G_n q_{n+1} + 2 G_{n-1} q_{n-1}.
inline double jacobi_F(int n, const JacobiIndex& idx) {
  const double s = 2.0 * n + idx.mu + idx.nu;
  if (n == 0) {
    if (s + 2.0 == 0.0) throw DegenerateError("jacobi_F: mu + nu + 2 = 0");
    return (idx.nu - idx.mu) / (s + 2.0);
  }
  if (s == 0.0 || s + 2.0 == 0.0) throw DegenerateError("jacobi_F: 2n + mu + nu hits zero");
  return (idx.nu - idx.mu) * (idx.nu + idx.mu) / (s * (s + 2.0));
}

/// Off-diagonal coefficient G_n of the same recursion; positive for valid
/// indices.
inline double jacobi_G(int n, const JacobiIndex& idx) {
  if (n < 0) return 0.0;
  const double mu = idx.mu;
  const double nu = idx.nu;
  const double s = 2.0 * n + mu + nu;
  if (s + 2.0 == 0.0) throw DegenerateError("jacobi_G: 2n + mu + nu + 2 = 0");
  double r = (n + 1.0) * (n + mu + 1.0) * (n + nu + 1.0) / (s + 3.0);
  // (n+mu+nu+1)/(2n+mu+nu+1) is 1 at n = 0.
  if (n > 0) r *= (n + mu + nu + 1.0) / (s + 1.0);
  if (!(r >= 0.0)) throw DegenerateError("jacobi_G: negative radicand");
  return std::sqrt(r) / (s + 2.0);
}

/// Orthonormal values q_k = A_k P_k^{(mu,nu)}(y), k = 0..n, by the
/// recursion in F_n, G_n.
inline std::vector<double> jacobi_orthonormal(int n, const JacobiIndex& idx, double y) {
  idx.validate();
  if (n < 0) throw DomainError("jacobi_orthonormal: negative degree");
  std::vector<double> q(static_cast<std::size_t>(n) + 1);
  const double x = 2.0 * y - 1.0;
  q[0] = jacobi_norm(0, idx);
  double prev = 0.0;
  for (int k = 0; k < n; ++k) {
    const double gk = jacobi_G(k, idx);
    const double gkm = jacobi_G(k - 1, idx);
    const double next = ((x - jacobi_F(k, idx)) * q[k] - 2.0 * gkm * prev) / (2.0 * gk);
    prev = q[k];
    q[k + 1] = next;
  }
  return q;
}

/// Values P_k^{(mu,nu)}(y) for k = 0..n by the three-term recursion in the
/// degree.
inline std::vector<double> jacobi_poly_sequence(int n, const JacobiIndex& idx, double y) {
  idx.validate();
  std::vector<double> p(static_cast<std::size_t>(std::max(n, 0)) + 1, 1.0);
  if (n <= 0) return p;
  const double a = idx.mu;
  const double b = idx.nu;
  const double x = 2.0 * y - 1.0;
  p[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + a + b;
    const double c1 = 2.0 * kk * (kk + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (a * a - b * b);
    const double c3 = (s - 2.0) * (s - 1.0) * s;
    const double c4 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * s;
    p[k] = ((c2 + c3 * x) * p[k - 1] - c4 * p[k - 2]) / c1;
  }
  return p;
}

/// The same polynomial from the terminating 2F1(-n, n+mu+nu+1; mu+1; 1-y)
/// sum. Used as an independent reference for jacobi_poly.
inline double jacobi_poly_hypergeometric(int n, const JacobiIndex& idx, double y) {
  idx.validate();
  if (n < 0) throw DomainError("jacobi_poly_hypergeometric: negative degree");
  const double a = idx.mu;
  const double b = idx.nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    term *= (kk - n) * (n + a + b + 1.0 + kk) / ((a + 1.0 + kk) * (kk + 1.0)) * (1.0 - y);
    sum += term;
  }
  const double pref = std::exp(log_gamma(n + a + 1.0) - log_gamma(n + 1.0) - log_gamma(a + 1.0));
  return pref * sum;
}

/// Normalization A_n making A_n P_n^{(mu,nu)} orthonormal on [0,1] with
/// weight y^nu (1-y)^mu.
inline double jacobi_norm(int n, const JacobiIndex& idx) {
  idx.validate();
  if (n < 0) throw DomainError("jacobi_norm: negative degree");
  const double s = 2.0 * n + idx.mu + idx.nu + 1.0;
  double log_ratio = log_gamma(n + 1.0) - log_gamma(n + idx.mu + 1.0) - log_gamma(n + idx.nu + 1.0);
  // Gamma(n+mu+nu+1) * (2n+mu+nu+1) = Gamma(n+mu+nu+2) / (n+mu+nu+1) * (2n+mu+nu+1);
  // for n = 0 and mu+nu+1 -> 0 use Gamma(mu+nu+2) directly.
  if (n == 0)
    log_ratio += log_gamma(idx.mu + idx.nu + 2.0);
  else
    log_ratio += log_gamma(n + idx.mu + idx.nu + 1.0) + std::log(s);
  return std::exp(0.5 * log_ratio);
}

/// Gauss hypergeometric series 2F1(p, q; r; z) for |z| < 1, or for any z
/// when p or q is a non-positive integer (terminating series).
inline double gauss_2f1(double p, double q, double r, double z) {
  long terminate_at = -1;
  if (detail::is_nonpositive_integer(p)) terminate_at = static_cast<long>(-p);
  if (detail::is_nonpositive_integer(q)) {
    const long m = static_cast<long>(-q);
    terminate_at = terminate_at < 0 ? m : std::min(terminate_at, m);
  }
  if (detail::is_nonpositive_integer(r)) {
    const long pole = static_cast<long>(-r);
    if (terminate_at < 0 || terminate_at > pole)
      throw PoleError("gauss_2f1: r is a non-positive integer and the series does not terminate before it");
  }
  if (terminate_at < 0 && !(std::abs(z) < 1.0))
    throw DomainError("gauss_2f1: |z| >= 1 requires a terminating series");

  double term = 1.0;
  double sum = 1.0;
  if (terminate_at >= 0) {
    for (long k = 0; k < terminate_at; ++k) {
      const double kk = static_cast<double>(k);
      term *= (p + kk) * (q + kk) / ((r + kk) * (kk + 1.0)) * z;
      sum += term;
    }
    return sum;
  }
  int small = 0;
  for (long k = 0; k < 100000; ++k) {
    const double kk = static_cast<double>(k);
    term *= (p + kk) * (q + kk) / ((r + kk) * (kk + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= 1e-15 * std::abs(sum)) {
      if (++small == 2) return sum;
    } else {
      small = 0;
    }
  }
  throw NumericError("gauss_2f1: series did not converge");
}

/// Lower incomplete beta function B(y; alpha, beta) = int_0^y t^(alpha-1) (1-t)^(beta-1) dt.
inline double incomplete_beta_lower(double y, double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw DomainError("incomplete_beta_lower: alpha and beta must be positive");
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("incomplete_beta_lower: y must lie in [0,1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return beta_function(alpha, beta);
  auto series = [](double t, double p, double q) {
    return std::pow(t, p) / p * gauss_2f1(p, 1.0 - q, 1.0 + p, t);
  };
  if (y <= 0.5) return series(y, alpha, beta);
  return beta_function(alpha, beta) - series(1.0 - y, beta, alpha);
}

} // namespace heun
