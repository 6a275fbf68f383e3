#pragma once
//
// Gauss-Jacobi quadrature on [0,1] with weight y^nu (1-y)^mu.
//

#include <vector>

#include "heun/errors.hpp"
#include "heun/specfun.hpp"
#include "heun/tridiagonal.hpp"

namespace heun {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule exact for polynomials of degree 2n-1 against
/// y^nu (1-y)^mu on [0,1]. Nodes are eigenvalues of the orthonormal Jacobi
/// matrix; weights are Christoffel numbers 1 / sum_j q_j(y_k)^2.
inline QuadratureRule gauss_jacobi(int n, const JacobiIndex& idx) {
  idx.validate();
  if (n < 1) throw DomainError("gauss_jacobi: need at least one node");
  SymTridiag t;
  t.diag.resize(static_cast<std::size_t>(n));
  t.off.resize(static_cast<std::size_t>(n) - 1);
  for (int k = 0; k < n; ++k) t.diag[k] = jacobi_F(k, idx);
  for (int k = 0; k + 1 < n; ++k) t.off[k] = 2.0 * jacobi_G(k, idx);

  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double y = 0.5 * (eigenvalue(t, static_cast<std::size_t>(k)) + 1.0);
    const std::vector<double> q = jacobi_orthonormal(n - 1, idx, y);
    double s = 0.0;
    for (double v : q) s += v * v;
    rule.nodes[k] = y;
    rule.weights[k] = 1.0 / s;
  }
  return rule;
}

} // namespace heun
