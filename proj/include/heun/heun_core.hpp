#pragma once
//
// Parameters of the nine-parameter Heun-type equation
//   chi'' + (a/y - b/(1-y) - c/(d-y)) chi'
//     + (A/y - B/(1-y) - C/(d-y) + D y - E) / (y(1-y)(d-y)) chi = 0,
// the d < 1 -> d > 1 reparametrization, the solution classes and the
// Jacobi-basis parameters of each class.
//

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "heun/errors.hpp"

namespace heun {

struct HeunParams {
  double a = 0.0, b = 0.0, c = 0.0, d = 2.0;
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0;

  bool operator==(const HeunParams&) const = default;
};

enum class SolutionClass { General, Special, RestrictedFirst, RestrictedSecond };

inline std::string to_string(SolutionClass cls) {
  switch (cls) {
  case SolutionClass::General: return "general";
  case SolutionClass::Special: return "special";
  case SolutionClass::RestrictedFirst: return "restricted_first";
  case SolutionClass::RestrictedSecond: return "restricted_second";
  }
  return "unknown";
}

inline SolutionClass parse_solution_class(const std::string& s) {
  if (s == "general") return SolutionClass::General;
  if (s == "special") return SolutionClass::Special;
  if (s == "restricted_first" || s == "restricted") return SolutionClass::RestrictedFirst;
  if (s == "restricted_second") return SolutionClass::RestrictedSecond;
  throw DomainError("unknown solution class '" + s + "'");
}

inline bool is_restricted(SolutionClass cls) {
  return cls == SolutionClass::RestrictedFirst || cls == SolutionClass::RestrictedSecond;
}

/// Exponents and Jacobi indices of the basis
/// y^alpha (1-y)^beta (d-y)^gamma P_n^{(mu,nu)}(y).
struct BasisParams {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, mu = 0.0, nu = 0.0;
};

/// Sign of the square root taken for nu (resp. nu+1) and mu (resp. mu+1).
struct BranchChoice {
  int nu_sign = +1;
  int mu_sign = +1;

  bool operator==(const BranchChoice&) const = default;
};

struct AuxConstants {
  double C_tilde = 0.0, D_tilde = 0.0, E_tilde = 0.0;
};

/// Equality test used for the class constraints.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  bool equal(double x, double y) const {
    return std::abs(x - y) <= std::max(rel * std::max(std::abs(x), std::abs(y)), abs);
  }
  bool less_equal(double x, double y) const { return x <= y || equal(x, y); }
};

inline void validate_d(double d) {
  if (!std::isfinite(d) || d <= 0.0 || d == 1.0)
    throw DomainError("d must be positive and different from 1 (got " + std::to_string(d) + ")");
}

/// Maps d < 1 parameters to the equivalent d > 1 set; identity when d > 1.
/// Solutions relate by chi(y) = chi'(y/d).
inline HeunParams normalize_d(const HeunParams& p) {
  validate_d(p.d);
  if (p.d > 1.0) return p;
  const double inv = 1.0 / p.d;
  const double inv2 = inv * inv;
  HeunParams q;
  q.a = p.a;
  q.b = p.c;
  q.c = p.b;
  q.d = inv;
  q.A = p.A * inv2;
  q.B = p.C * inv2;
  q.C = p.B * inv2;
  q.D = p.D;
  q.E = p.E * inv;
  return q;
}

/// The same map applied unconditionally (an involution up to rounding).
inline HeunParams invert_d(const HeunParams& p) {
  validate_d(p.d);
  const double inv = 1.0 / p.d;
  const double inv2 = inv * inv;
  return {p.a, p.c, p.b, inv, p.A * inv2, p.C * inv2, p.B * inv2, p.D, p.E * inv};
}

inline AuxConstants aux_constants(const HeunParams& p) {
  AuxConstants k;
  k.C_tilde = -0.25 * p.c * p.d * (p.c - 2.0) * (p.d - 1.0);
  k.D_tilde = 0.25 * p.c * (2.0 * p.a + 2.0 * p.b + p.c - 2.0);
  k.E_tilde = 0.25 * p.c * ((p.c - 2.0) * (p.d - 1.0) - 2.0 * p.a);
  return k;
}

/// C value fixed by the class equality.
inline double class_C(SolutionClass cls, double c, double d) {
  if (cls == SolutionClass::General) return 0.25 * (1.0 - c) * (1.0 - c) * d * (d - 1.0);
  return 0.25 * c * (c - 2.0) * d * (d - 1.0);
}

/// E value required by the restricted classes.
inline double restricted_E(const HeunParams& p) {
  return p.A / p.d + p.B / (p.d - 1.0) -
         0.5 * p.c * (p.d * (p.a + p.b + p.c - 2.0) - p.a - 0.5 * p.c + 1.0);
}

struct Classification {
  std::vector<SolutionClass> classes;
  bool original_heun = false;  // A = B = C = 0
  std::vector<std::string> notes;

  bool contains(SolutionClass cls) const {
    return std::find(classes.begin(), classes.end(), cls) != classes.end();
  }
};

/// Every class whose conditions hold for normalized parameters (d > 1).
inline Classification classify(const HeunParams& p, const Tolerance& tol = {}) {
  validate_d(p.d);
  if (p.d < 1.0) throw DomainError("classify expects normalized parameters (d > 1)");
  Classification out;
  out.original_heun = p.A == 0.0 && p.B == 0.0 && p.C == 0.0;

  const double lhs_a = 4.0 * p.A / p.d;
  const double rhs_a = (1.0 - p.a) * (1.0 - p.a);
  const double lhs_b = 4.0 * p.B / (p.d - 1.0);
  const double rhs_b = -(1.0 - p.b) * (1.0 - p.b);
  const bool ineq_a = tol.less_equal(lhs_a, rhs_a);
  const bool ineq_b = tol.less_equal(rhs_b, lhs_b);
  if (!ineq_a) out.notes.push_back("4A/d <= (1-a)^2 violated");
  if (!ineq_b) out.notes.push_back("4B/(d-1) >= -(1-b)^2 violated");
  if (!ineq_a || !ineq_b) return out;

  const double lhs_c = 4.0 * p.C / (p.d * (p.d - 1.0));
  const double one_c = (1.0 - p.c) * (1.0 - p.c);
  if (tol.equal(lhs_c, one_c)) out.classes.push_back(SolutionClass::General);
  if (tol.equal(lhs_c, one_c - 1.0)) {
    out.classes.push_back(SolutionClass::Special);
    if (tol.equal(p.D, 0.0) && tol.equal(p.E, restricted_E(p))) {
      out.classes.push_back(SolutionClass::RestrictedFirst);
      out.classes.push_back(SolutionClass::RestrictedSecond);
    }
  }
  return out;
}

namespace detail {

// Roots r of r^2 = sq with the requested sign; tiny negative squares from
// rounding are clamped to zero.
inline double signed_root(double sq, int sign, const char* what) {
  if (sq < 0.0) {
    if (sq > -1e-12 * std::max(1.0, std::abs(sq))) sq = 0.0;
    else
      throw ConstraintError(std::string("negative discriminant: ") + what + " = " + std::to_string(sq));
  }
  return sign >= 0 ? std::sqrt(sq) : -std::sqrt(sq);
}

} // namespace detail

inline double nu_squared(const HeunParams& p) {
  return (1.0 - p.a) * (1.0 - p.a) - 4.0 * p.A / p.d;
}

inline double mu_squared(const HeunParams& p) {
  return (1.0 - p.b) * (1.0 - p.b) + 4.0 * p.B / (p.d - 1.0);
}

/// Basis parameters of a class for one root branch. Throws ConstraintError
/// if a square is negative or the branch gives mu <= -1 or nu <= -1, and
/// NoSolutionError if no branch is admissible.
inline BasisParams basis_params(const HeunParams& p, SolutionClass cls, BranchChoice branch = {}) {
  validate_d(p.d);
  const double nu_sq = nu_squared(p);
  const double mu_sq = mu_squared(p);
  const double nu_root_abs = detail::signed_root(nu_sq, +1, "(1-a)^2 - 4A/d");
  const double mu_root_abs = detail::signed_root(mu_sq, +1, "(1-b)^2 + 4B/(d-1)");

  const bool shift_nu = cls == SolutionClass::RestrictedSecond;
  const bool shift_mu = cls == SolutionClass::RestrictedFirst;
  auto value = [](double root, int sign, bool shifted) {
    const double r = sign >= 0 ? root : -root;
    return shifted ? r - 1.0 : r;
  };
  auto admissible = [&](double root, bool shifted) {
    for (int s : {+1, -1})
      if (value(root, s, shifted) > -1.0) return true;
    return false;
  };
  if (!admissible(nu_root_abs, shift_nu) || !admissible(mu_root_abs, shift_mu))
    throw NoSolutionError("no root branch gives mu > -1 and nu > -1 for class " + to_string(cls));

  BasisParams bp;
  bp.nu = value(nu_root_abs, branch.nu_sign, shift_nu);
  bp.mu = value(mu_root_abs, branch.mu_sign, shift_mu);
  if (!(bp.nu > -1.0) || !(bp.mu > -1.0))
    throw ConstraintError("requested root branch gives mu = " + std::to_string(bp.mu) + ", nu = " +
                          std::to_string(bp.nu) + " (need both > -1)");

  switch (cls) {
  case SolutionClass::General:
    bp.alpha = 0.5 * (bp.nu + 1.0 - p.a);
    bp.beta = 0.5 * (bp.mu + 1.0 - p.b);
    bp.gamma = 0.5 * (1.0 - p.c);
    break;
  case SolutionClass::Special:
    bp.alpha = 0.5 * (bp.nu + 1.0 - p.a);
    bp.beta = 0.5 * (bp.mu + 1.0 - p.b);
    bp.gamma = -0.5 * p.c;
    break;
  case SolutionClass::RestrictedFirst:
    bp.alpha = 0.5 * (bp.nu + 1.0 - p.a);
    bp.beta = 0.5 * (bp.mu + 2.0 - p.b);
    bp.gamma = -0.5 * p.c;
    break;
  case SolutionClass::RestrictedSecond:
    bp.alpha = 0.5 * (bp.nu + 2.0 - p.a);
    bp.beta = 0.5 * (bp.mu + 1.0 - p.b);
    bp.gamma = -0.5 * p.c;
    break;
  }
  return bp;
}

struct BranchedBasis {
  BranchChoice branch;
  BasisParams basis;
};

/// All admissible root branches (duplicates removed when a root is zero).
inline std::vector<BranchedBasis> basis_branches(const HeunParams& p, SolutionClass cls) {
  std::vector<BranchedBasis> out;
  for (int sn : {+1, -1}) {
    for (int sm : {+1, -1}) {
      BranchChoice br{sn, sm};
      try {
        BasisParams bp = basis_params(p, cls, br);
        bool dup = false;
        for (const auto& e : out)
          if (e.basis.mu == bp.mu && e.basis.nu == bp.nu) dup = true;
        if (!dup) out.push_back({br, bp});
      } catch (const NoSolutionError&) {
        throw;
      } catch (const ConstraintError&) {
        // inadmissible branch
      }
    }
  }
  return out;
}

} // namespace heun
