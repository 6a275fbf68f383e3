#pragma once
//
// Physical systems: potential strengths u_i = 2V_i/lambda^2 and free inputs
// mapped to Heun parameters per class and coordinate case, and evaluation of
// the reduced potential 2V/lambda^2 and energy parameter 2E/lambda^2.
//

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "heun/errors.hpp"
#include "heun/heun_core.hpp"
#include "heun/transforms.hpp"

namespace heun {

/// Free inputs of a table row. Unset entries must stay unset when the row
/// does not use them.
struct SystemInputs {
  std::optional<double> d, c, A, B, D;
  std::vector<double> u;
};

struct PhysicalSystem {
  SolutionClass cls = SolutionClass::General;
  CoordinateCase ccase = coordinate_case(CaseId::HalfHalf);
  double lambda = 1.0;
  std::vector<double> u;
  HeunParams heun;
  BasisParams basis;
  BranchChoice branch;
  double energy = 0.0;  // 2E/lambda^2
};

/// Which free inputs a (class, case) row takes, and how many strengths.
struct RowSpec {
  bool d = true, c = false, A = false, B = false, D = false;
  std::size_t n_u = 0;
};

inline RowSpec row_spec(SolutionClass cls, CaseId id) {
  if (coordinate_case(id).zero_energy_only)
    throw UnsupportedError("zero-energy cases are built from Heun parameters only (system_from_heun)");
  if (cls == SolutionClass::RestrictedSecond)
    throw UnsupportedError("potentials of the second restricted family are not tabulated");
  RowSpec r;
  if (cls == SolutionClass::General || cls == SolutionClass::Special) {
    r.c = true;
    switch (id) {
    case CaseId::HalfHalf: r.A = r.B = r.D = true; r.n_u = 1; break;
    case CaseId::HalfOne: r.A = r.B = true; r.n_u = 2; break;
    case CaseId::OneOne: r.B = true; r.n_u = 3; break;
    case CaseId::ZeroOne: r.A = r.B = true; r.n_u = 2; break;
    default: break;
    }
    return r;
  }
  switch (id) {
  case CaseId::HalfHalf: r.c = r.A = r.B = true; break;
  case CaseId::HalfOne: r.c = r.A = r.B = true; break;
  case CaseId::OneOne: r.c = r.B = true; r.n_u = 1; break;
  case CaseId::ZeroOne: r.A = r.B = true; r.n_u = 1; break;
  default: break;
  }
  return r;
}

/// Energy parameter 2E/lambda^2 of a Heun parameter set in a case.
inline double energy_param(const HeunParams& p, SolutionClass cls, const CoordinateCase& cc) {
  if (cc.zero_energy_only) return 0.0;
  if (cc.id == CaseId::HalfHalf) return is_restricted(cls) ? 0.25 * p.c * p.c : 0.25 * p.c * p.c - p.D;
  return -p.B / (p.d - 1.0);
}

inline double energy_param(const PhysicalSystem& sys) { return energy_param(sys.heun, sys.cls, sys.ccase); }

/// Strengths u_i read back from Heun parameters (inverse of the table
/// relations).
inline std::vector<double> strengths_from_heun(const HeunParams& p, SolutionClass cls, CaseId id) {
  const AuxConstants k = aux_constants(p);
  const double d = p.d;
  const double c = p.c;
  if (coordinate_case(id).zero_energy_only) return {};
  if (cls == SolutionClass::General || cls == SolutionClass::Special) {
    switch (id) {
    case CaseId::HalfHalf: return {p.E + k.E_tilde - d * (p.D - 0.25 * c * c)};
    case CaseId::HalfOne: return {p.B - (d - 1.0) * (p.E + k.E_tilde), 0.25 * c * (c + 1.0) - p.D};
    case CaseId::OneOne: return {p.A * (d - 1.0) + p.B * d, 0.25 * c * (c + 2.0) - p.D, p.E + k.E_tilde};
    case CaseId::ZeroOne: {
      const double u0 = (p.E + p.B + k.E_tilde) / d;
      return {u0, (d - 1.0) * (p.D - 0.25 * c * c - u0) + p.B};
    }
    default: return {};
    }
  }
  switch (id) {
  case CaseId::OneOne: return {p.A / d + p.B / (d - 1.0)};
  case CaseId::ZeroOne: return {p.B / (d - 1.0) - 0.25 * c * c + p.A / (d * d)};
  default: return {};
  }
}

namespace detail {

inline double need(const std::optional<double>& v, const char* name, bool used) {
  if (!used) {
    if (v) throw DomainError(std::string("input '") + name + "' is not used by this table row");
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (!v) throw DomainError(std::string("missing required input '") + name + "'");
  if (!std::isfinite(*v)) throw DomainError(std::string("input '") + name + "' is not finite");
  return *v;
}

inline PhysicalSystem finish_system(SolutionClass cls, const CoordinateCase& cc, double lambda,
                                    const HeunParams& p, BranchChoice branch) {
  const Classification cl = classify(p);
  if (!cl.contains(cls)) {
    std::string why = "parameters do not satisfy the " + to_string(cls) + " class conditions";
    for (const auto& n : cl.notes) why += "; " + n;
    throw ConstraintError(why);
  }
  PhysicalSystem sys;
  sys.cls = cls;
  sys.ccase = cc;
  sys.lambda = lambda;
  sys.heun = p;
  sys.branch = branch;
  sys.basis = basis_params(p, cls, branch);
  sys.u = strengths_from_heun(p, cls, cc.id);
  sys.energy = energy_param(p, cls, cc);
  return sys;
}

} // namespace detail

/// Heun parameters solving a table row, before any class check.
/// Requires d > 1 (the table potentials are regular on [0,1] only then).
inline HeunParams heun_from_row(SolutionClass cls, CaseId id, const SystemInputs& in) {
  const RowSpec rs = row_spec(cls, id);
  const CoordinateCase cc = coordinate_case(id);
  const double d = detail::need(in.d, "d", true);
  if (!(d > 1.0)) throw ConstraintError("table rows require d > 1 (use system_from_heun for raw d < 1 parameters)");
  const double c_in = detail::need(in.c, "c", rs.c);
  const double A_in = detail::need(in.A, "A", rs.A);
  const double B_in = detail::need(in.B, "B", rs.B);
  const double D_in = detail::need(in.D, "D", rs.D);
  if (in.u.size() != rs.n_u)
    throw DomainError("row expects " + std::to_string(rs.n_u) + " strengths u, got " + std::to_string(in.u.size()));
  for (double v : in.u)
    if (!std::isfinite(v)) throw DomainError("strength u is not finite");

  HeunParams p;
  p.a = cc.a;
  p.b = cc.b;
  p.d = d;
  const auto& u = in.u;

  if (cls == SolutionClass::General || cls == SolutionClass::Special) {
    p.c = c_in;
    p.C = class_C(cls, p.c, d);
    const double Et = aux_constants(p).E_tilde;
    switch (id) {
    case CaseId::HalfHalf:
      p.A = A_in;
      p.B = B_in;
      p.D = D_in;
      p.E = u[0] - Et + d * (p.D - 0.25 * p.c * p.c);
      break;
    case CaseId::HalfOne:
      p.A = A_in;
      p.B = B_in;
      p.E = (p.B - u[0]) / (d - 1.0) - Et;
      p.D = 0.25 * p.c * (p.c + 1.0) - u[1];
      break;
    case CaseId::OneOne:
      p.B = B_in;
      p.A = (u[0] - p.B * d) / (d - 1.0);
      p.D = 0.25 * p.c * (p.c + 2.0) - u[1];
      p.E = u[2] - Et;
      break;
    case CaseId::ZeroOne:
      p.A = A_in;
      p.B = B_in;
      p.D = u[0] + (u[1] - p.B) / (d - 1.0) + 0.25 * p.c * p.c;
      p.E = u[0] * d - p.B - Et;
      break;
    default: break;
    }
  } else {
    switch (id) {
    case CaseId::HalfHalf:
    case CaseId::HalfOne:
      p.c = c_in;
      p.A = A_in;
      p.B = B_in;
      break;
    case CaseId::OneOne:
      p.c = c_in;
      p.B = B_in;
      p.A = u[0] * d - p.B * d / (d - 1.0);
      break;
    case CaseId::ZeroOne: {
      // 4B - (d-1)c^2 is fixed by the energy-independent strength u0.
      p.A = A_in;
      p.B = B_in;
      const double c2 = 4.0 * (p.B / (d - 1.0) - u[0] + p.A / (d * d));
      if (c2 < 0.0)
        throw ConstraintError("restricted (0,1): B/(d-1) - u0 + A/d^2 must be nonnegative to define c");
      p.c = std::sqrt(c2);
      break;
    }
    default: break;
    }
    p.C = class_C(cls, p.c, d);
    p.D = 0.0;
    p.E = restricted_E(p);
  }
  return p;
}

/// Solves a table row for the Heun parameters and builds the system.
inline PhysicalSystem build_system(SolutionClass cls, CaseId id, const SystemInputs& in, double lambda,
                                   BranchChoice branch = {}) {
  detail::check_lambda(lambda);
  const HeunParams p = heun_from_row(cls, id, in);
  return detail::finish_system(cls, coordinate_case(id), lambda, p, branch);
}

/// System from raw Heun parameters; d < 1 is normalized first and the case is
/// read from the normalized (a, b).
inline PhysicalSystem system_from_heun(SolutionClass cls, const HeunParams& raw, double lambda,
                                       BranchChoice branch = {}) {
  detail::check_lambda(lambda);
  const HeunParams p = normalize_d(raw);
  const CoordinateCase cc = case_from_ab(p.a, p.b);
  return detail::finish_system(cls, cc, lambda, p, branch);
}

/// Eq. (6) reduced form U(y) = 2(V - E)/lambda^2 for arbitrary Heun
/// parameters (any d, y != d).
inline double reduced_potential(const HeunParams& p, double y, double ym) {
  const AuxConstants k = aux_constants(p);
  const double dy = p.d - y;
  const double bracket = p.E + k.E_tilde + y * (k.D_tilde - p.D) + (p.C + k.C_tilde) / dy - p.A / y + p.B / ym;
  return std::pow(y, 2.0 * p.a - 1.0) * std::pow(ym, 2.0 * p.b - 1.0) / dy * bracket;
}

inline double reduced_potential(const HeunParams& p, double y) { return reduced_potential(p, y, 1.0 - y); }

/// Generic 2V/lambda^2 of a case (constants forcing decay at infinity
/// included); p must carry the case's (a, b).
inline double potential_generic(const HeunParams& p, const CoordinateCase& cc, double y, double ym) {
  const AuxConstants k = aux_constants(p);
  const double d = p.d;
  const double c = p.c;
  const double dy = (d - 1.0) + ym;
  const double CC = p.C + k.C_tilde;
  const double EE = p.E + k.E_tilde;
  switch (cc.id) {
  case CaseId::HalfHalf:
    return (EE + d * (0.25 * c * c - p.D) - p.A / y + p.B / ym + CC / dy) / dy;
  case CaseId::HalfOne:
    return ym / dy * (y * (0.25 * c * (c + 1.0) - p.D) - p.A / y + CC / dy) + (p.B - (d - 1.0) * EE) / dy +
           (EE - p.B / (d - 1.0));
  case CaseId::OneOne:
    return y * ym / dy * (EE + y * (0.25 * c * (c + 2.0) - p.D) + CC / dy) + ((d - 1.0) * p.A + p.B * d) / dy +
           (-p.A - p.B * d / (d - 1.0));
  case CaseId::ZeroOne:
    return ym / (y * dy) * (-p.A / y + CC / dy) + (EE + p.B) / (d * y) +
           (d - 1.0) / d * ((p.D - 0.25 * c * c) * d - EE + p.B / (d - 1.0)) / dy +
           (0.25 * c * c - p.D - p.B / (d - 1.0));
  case CaseId::HalfThreeHalves:
  case CaseId::ZeroThreeHalves: {
    // y^(2a-1) prefactor: 1 for a = 1/2, 1/y for a = 0.
    const double pre = cc.id == CaseId::ZeroThreeHalves ? ym * ym / (y * dy) : ym * ym / dy;
    return pre * (EE + y * (k.D_tilde - p.D) + CC / dy - p.A / y + p.B / ym);
  }
  }
  throw DomainError("unknown coordinate case");
}

/// Class-table 2V/lambda^2 in terms of the strengths u_i.
inline double potential_table(const PhysicalSystem& sys, double y, double ym) {
  const HeunParams& p = sys.heun;
  if (sys.ccase.zero_energy_only) return potential_generic(p, sys.ccase, y, ym);
  const double d = p.d;
  const double c = p.c;
  const double dy = (d - 1.0) + ym;
  const auto& u = sys.u;
  if (sys.cls == SolutionClass::General || sys.cls == SolutionClass::Special) {
    const double cc = sys.cls == SolutionClass::General ? 0.25 * d * (d - 1.0) : 0.0;
    switch (sys.ccase.id) {
    case CaseId::HalfHalf: return (u[0] - p.A / y + p.B / ym + cc / dy) / dy;
    case CaseId::HalfOne: return ym / dy * (u[1] * y + u[0] / ym - p.A / y + cc / dy) - u[0] / (d - 1.0);
    case CaseId::OneOne: return y * ym / dy * (u[2] + u[1] * y + cc / dy) + u[0] / dy - u[0] / (d - 1.0);
    case CaseId::ZeroOne:
      return ym / (y * dy) * (-p.A / y + cc / dy) + u[0] / y + u[1] / dy - u[0] - u[1] / (d - 1.0);
    default: break;
    }
  } else if (sys.cls == SolutionClass::RestrictedFirst) {
    switch (sys.ccase.id) {
    case CaseId::HalfHalf: return -(p.A / d) / y + (p.B / (d - 1.0)) / ym;
    case CaseId::HalfOne: return -ym * (0.25 * c * (c + 1.0) + (p.A / d) / y);
    case CaseId::OneOne: return -ym * (u[0] + 0.25 * c * (c + 2.0) * y);
    case CaseId::ZeroOne: return u[0] * (ym / y) + p.A / (d * d) * (1.0 + (d - 1.0) / y - d / (y * y));
    default: break;
    }
  }
  throw UnsupportedError("no tabulated potential for class " + to_string(sys.cls));
}

/// 2V(x)/lambda^2.
inline double potential_value(const PhysicalSystem& sys, double x) {
  const YPoint yp = y_point(sys.ccase, sys.lambda, x);
  return potential_table(sys, yp.y, yp.ym);
}

/// Closed forms in x for the first restricted family; (0,1) rewritten from
/// its y-form with y = 1 - exp(-lambda x).
inline double potential_closed_form(const PhysicalSystem& sys, double x) {
  if (sys.cls != SolutionClass::RestrictedFirst)
    throw UnsupportedError("closed x-space forms exist for the first restricted family only");
  const HeunParams& p = sys.heun;
  const double d = p.d;
  const double c = p.c;
  const double xi = sys.lambda * x;
  (void)y_of_x(sys.ccase, sys.lambda, x);  // domain check
  switch (sys.ccase.id) {
  case CaseId::HalfHalf: {
    const double up = p.B / (d - 1.0) + p.A / d;
    const double um = p.B / (d - 1.0) - p.A / d;
    const double cs = std::cos(xi);
    return 2.0 * (um + up * std::sin(xi)) / (cs * cs);
  }
  case CaseId::HalfOne: {
    const double sh = std::sinh(0.5 * xi);
    const double ch = std::cosh(0.5 * xi);
    return -(p.A / d) / (sh * sh) - 0.25 * c * (c + 1.0) / (ch * ch);
  }
  case CaseId::OneOne:
    return -1.0 / (std::exp(xi) + 1.0) * (sys.u[0] + 0.25 * c * (c + 2.0) / (1.0 + std::exp(-xi)));
  case CaseId::ZeroOne: {
    const double em1 = std::expm1(xi);
    const double cm1 = 2.0 * std::sinh(0.5 * xi) * std::sinh(0.5 * xi);  // cosh - 1
    return sys.u[0] / em1 - p.A / (2.0 * d * d) * (d - std::expm1(-xi)) / cm1;
  }
  default: break;
  }
  throw UnsupportedError("no closed form for this case");
}

/// Moves the energy parameter by delta while applying the case's parameter
/// redefinition, so that potential_generic is unchanged.
inline HeunParams shift_energy(const HeunParams& p, const CoordinateCase& cc, double delta) {
  HeunParams q = p;
  const double d = p.d;
  switch (cc.id) {
  case CaseId::HalfHalf:
    q.D = p.D - delta;
    q.E = p.E + d * (q.D - p.D);
    break;
  case CaseId::HalfOne:
    q.B = p.B - delta * (d - 1.0);
    q.E = p.E + (q.B - p.B) / (d - 1.0);
    break;
  case CaseId::OneOne:
    q.B = p.B - delta * (d - 1.0);
    q.A = p.A - (q.B - p.B) * d / (d - 1.0);
    break;
  case CaseId::ZeroOne:
    q.B = p.B - delta * (d - 1.0);
    q.D = p.D - (q.B - p.B) / (d - 1.0);
    q.E = p.E - (q.B - p.B);
    break;
  default:
    throw UnsupportedError("zero-energy cases have no energy parameter to shift");
  }
  return q;
}

} // namespace heun
