#pragma once
//
// Coordinate maps y(x) with dy/dx = lambda y^a (1-y)^b for the six
// admissible (a, b) pairs.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "heun/errors.hpp"
#include "heun/specfun.hpp"

namespace heun {

enum class CaseId { HalfHalf, HalfOne, OneOne, ZeroOne, HalfThreeHalves, ZeroThreeHalves };

enum class DomainKind { Box, HalfLine, FullLine };

struct CoordinateCase {
  CaseId id;
  double a;
  double b;
  DomainKind kind;
  double xi_min;  // lower end of lambda*x
  double xi_max;  // upper end of lambda*x (may be +inf)
  bool zero_energy_only;
  const char* name;
};

inline constexpr std::array<CaseId, 6> kAllCases = {CaseId::HalfHalf, CaseId::HalfOne, CaseId::OneOne,
                                                    CaseId::ZeroOne, CaseId::HalfThreeHalves,
                                                    CaseId::ZeroThreeHalves};

inline CoordinateCase coordinate_case(CaseId id) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr double hp = 0.5 * std::numbers::pi;
  switch (id) {
  case CaseId::HalfHalf: return {id, 0.5, 0.5, DomainKind::Box, -hp, hp, false, "1/2,1/2"};
  case CaseId::HalfOne: return {id, 0.5, 1.0, DomainKind::HalfLine, 0.0, inf, false, "1/2,1"};
  case CaseId::OneOne: return {id, 1.0, 1.0, DomainKind::FullLine, -inf, inf, false, "1,1"};
  case CaseId::ZeroOne: return {id, 0.0, 1.0, DomainKind::HalfLine, 0.0, inf, false, "0,1"};
  case CaseId::HalfThreeHalves: return {id, 0.5, 1.5, DomainKind::HalfLine, 0.0, inf, true, "1/2,3/2"};
  case CaseId::ZeroThreeHalves: return {id, 0.0, 1.5, DomainKind::HalfLine, 2.0, inf, true, "0,3/2"};
  }
  throw DomainError("unknown coordinate case");
}

inline CoordinateCase parse_case(const std::string& s) {
  for (CaseId id : kAllCases)
    if (s == coordinate_case(id).name) return coordinate_case(id);
  throw DomainError("unknown coordinate case '" + s + "' (expected one of 1/2,1/2 1/2,1 1,1 0,1 1/2,3/2 0,3/2)");
}

/// Case with the given (a, b), if it is one of the six.
inline CoordinateCase case_from_ab(double a, double b) {
  for (CaseId id : kAllCases) {
    const CoordinateCase cc = coordinate_case(id);
    if (cc.a == a && cc.b == b) return cc;
  }
  throw UnsupportedError("(a, b) = (" + std::to_string(a) + ", " + std::to_string(b) +
                         ") is not one of the six coordinate cases");
}

namespace detail {

inline void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive and finite");
}

} // namespace detail

/// y(x) in closed form.
inline double y_of_x(const CoordinateCase& cc, double lambda, double x) {
  detail::check_lambda(lambda);
  const double xi = lambda * x;
  const double slack = 1e-12 * (1.0 + std::abs(xi));
  if (std::isnan(xi) || xi < cc.xi_min - slack || xi > cc.xi_max + slack)
    throw DomainError(std::string("x outside the domain of case ") + cc.name);
  switch (cc.id) {
  case CaseId::HalfHalf: {
    const double s = std::sin(std::clamp(xi, cc.xi_min, cc.xi_max));
    return 0.5 * (1.0 + s);
  }
  case CaseId::HalfOne: {
    const double t = std::tanh(0.5 * std::max(xi, 0.0));
    return t * t;
  }
  case CaseId::OneOne:
    return 1.0 / (1.0 + std::exp(-xi));
  case CaseId::ZeroOne:
    return -std::expm1(-std::max(xi, 0.0));
  case CaseId::HalfThreeHalves: {
    const double h = 0.5 * std::max(xi, 0.0);
    return h * h / (h * h + 1.0);
  }
  case CaseId::ZeroThreeHalves: {
    const double h = 0.5 * std::max(xi, 2.0);
    return 1.0 - 1.0 / (h * h);
  }
  }
  throw DomainError("unknown coordinate case");
}

/// y together with 1 - y, the latter computed without cancellation.
struct YPoint {
  double y;
  double ym;  // 1 - y
};

inline YPoint y_point(const CoordinateCase& cc, double lambda, double x) {
  const double y = y_of_x(cc, lambda, x);
  const double xi = lambda * x;
  switch (cc.id) {
  case CaseId::HalfHalf: return {y, 0.5 * (1.0 - std::sin(std::clamp(xi, cc.xi_min, cc.xi_max)))};
  case CaseId::HalfOne: {
    const double ch = std::cosh(0.5 * std::max(xi, 0.0));
    return {y, 1.0 / (ch * ch)};
  }
  case CaseId::OneOne: return {y, 1.0 / (1.0 + std::exp(xi))};
  case CaseId::ZeroOne: return {y, std::exp(-std::max(xi, 0.0))};
  case CaseId::HalfThreeHalves: {
    const double h = 0.5 * std::max(xi, 0.0);
    return {y, 1.0 / (h * h + 1.0)};
  }
  case CaseId::ZeroThreeHalves: {
    const double h = 0.5 * std::max(xi, 2.0);
    return {y, 1.0 / (h * h)};
  }
  }
  return {y, 1.0 - y};
}

/// x(y) in closed form; an endpoint with an infinite preimage returns +-inf.
inline double x_of_y(const CoordinateCase& cc, double lambda, double y) {
  detail::check_lambda(lambda);
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("x_of_y: y must lie in [0,1]");
  constexpr double inf = std::numeric_limits<double>::infinity();
  // Endpoints first: finite preimages are exact, infinite ones are signalled.
  if (y == 0.0 || y == 1.0) {
    const bool lower = y == 0.0;
    switch (cc.id) {
    case CaseId::HalfHalf: return (lower ? cc.xi_min : cc.xi_max) / lambda;
    case CaseId::OneOne: return lower ? -inf : inf;
    default: return lower ? cc.xi_min / lambda : inf;
    }
  }
  const double yc = std::clamp(y, 1e-15, 1.0 - 1e-15);
  double xi = 0.0;
  switch (cc.id) {
  case CaseId::HalfHalf: xi = std::asin(2.0 * yc - 1.0); break;
  case CaseId::HalfOne: xi = 2.0 * std::atanh(std::sqrt(yc)); break;
  case CaseId::OneOne: xi = std::log(yc) - std::log1p(-yc); break;
  case CaseId::ZeroOne: xi = -std::log1p(-yc); break;
  case CaseId::HalfThreeHalves: xi = 2.0 * std::sqrt(yc / (1.0 - yc)); break;
  case CaseId::ZeroThreeHalves: xi = 2.0 / std::sqrt(1.0 - yc); break;
  }
  return xi / lambda;
}

/// x(y) from the integral representation lambda x = int t^{-a} (1-t)^{-b} dt
/// plus the per-case constant. Independent of the closed forms except for
/// case (1,1), where the antiderivative is the logarithm itself.
inline double x_of_y_integral(const CoordinateCase& cc, double lambda, double y) {
  detail::check_lambda(lambda);
  if (!(y > 0.0 && y < 1.0)) throw DomainError("x_of_y_integral: y must be interior");
  const double alpha = 1.0 - cc.a;
  const double beta = 1.0 - cc.b;
  double xi = 0.0;
  if (cc.id == CaseId::OneOne) {
    xi = std::log(y) - std::log1p(-y);
  } else if (cc.id == CaseId::HalfHalf) {
    xi = incomplete_beta_lower(y, alpha, beta) - 0.5 * std::numbers::pi;
  } else {
    // Series antiderivative vanishing at y = 0; valid for beta <= 0 too.
    xi = std::pow(y, alpha) / alpha * gauss_2f1(alpha, 1.0 - beta, 1.0 + alpha, y);
    if (cc.id == CaseId::ZeroThreeHalves) xi += 2.0;
  }
  return xi / lambda;
}

/// dy/dx = lambda y^a (1-y)^b.
inline double dy_dx(const CoordinateCase& cc, double lambda, double y) {
  detail::check_lambda(lambda);
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("dy_dx: y must lie in [0,1]");
  return lambda * std::pow(y, cc.a) * std::pow(1.0 - y, cc.b);
}

/// d^2y/dx^2 = lambda^2 g g' with g = y^a (1-y)^b.
inline double d2y_dx2(const CoordinateCase& cc, double lambda, double y) {
  const double g = std::pow(y, cc.a) * std::pow(1.0 - y, cc.b);
  double gp = 0.0;
  if (y > 0.0 && y < 1.0) gp = g * (cc.a / y - cc.b / (1.0 - y));
  return lambda * lambda * g * gp;
}

} // namespace heun
