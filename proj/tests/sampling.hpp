#pragma once
// Random admissible table-row inputs shared by the tests and the acceptance
// binary.

#include <random>

#include "heun/potentials.hpp"

namespace heun::testing {

inline constexpr CaseId kEnergyCases[] = {CaseId::HalfHalf, CaseId::HalfOne, CaseId::OneOne, CaseId::ZeroOne};

inline SystemInputs random_inputs(SolutionClass cls, CaseId id, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const RowSpec rs = row_spec(cls, id);
  SystemInputs q;
  const double d = 1.2 + 3.0 * U(rng);
  q.d = d;
  if (cls == SolutionClass::General || cls == SolutionClass::Special) {
    q.c = 0.2 + 2.0 * U(rng);
    if (rs.A) q.A = -1.0 + U(rng);
    q.B = id == CaseId::HalfHalf ? 0.5 * U(rng) : (d - 1.0) * (0.2 + U(rng));
    if (rs.D) q.D = 0.5 * U(rng);
    q.u.assign(rs.n_u, 0.0);
    for (auto& v : q.u) v = U(rng) - 0.5;
    return q;
  }
  switch (id) {
  case CaseId::HalfHalf:
    q.c = 0.5 + 3.0 * U(rng);
    q.A = -U(rng);
    q.B = U(rng);
    break;
  case CaseId::HalfOne:
    q.c = 1.0 + 4.0 * U(rng);
    q.A = -d * U(rng);
    q.B = (d - 1.0) * (0.1 + U(rng));
    break;
  case CaseId::OneOne: {
    q.c = 1.0 + 4.0 * U(rng);
    q.B = (d - 1.0) * (0.1 + 2.0 * U(rng));
    q.u = {*q.B / (d - 1.0) - 0.1 - 2.0 * U(rng)};
    break;
  }
  case CaseId::ZeroOne: {
    const double c = 1.0 + 4.0 * U(rng);
    q.A = d * (0.24 - U(rng));
    q.B = (d - 1.0) * (0.1 + U(rng));
    q.u = {*q.B / (d - 1.0) + *q.A / (d * d) - 0.25 * c * c};
    break;
  }
  default: break;
  }
  return q;
}

/// Draws until build_system accepts the inputs.
inline PhysicalSystem random_system(SolutionClass cls, CaseId id, std::mt19937_64& rng, double lambda = 1.0) {
  for (int attempt = 0;; ++attempt) {
    try {
      return build_system(cls, id, random_inputs(cls, id, rng), lambda);
    } catch (const ConstraintError&) {
      if (attempt > 1000) throw;
    }
  }
}

} // namespace heun::testing
