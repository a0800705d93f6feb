#pragma once

#include <vector>

#include "kgx/hilbert.hpp"
#include "kgx/tridiagonal.hpp"

namespace kgx {

struct KrylovBasis {
  std::vector<Eigen::VectorXcd> vectors;  // vectors[0] = psi0
  FockSpace space;

  std::size_t size() const { return vectors.size(); }
  // max |<K_m|K_n> - delta_mn|
  double orthonormality_defect() const;
};

struct LanczosResult {
  KrylovBasis basis;
  TridiagonalData tri;
};

// Krylov basis and Lanczos coefficients of (H, psi0) with full
// re-orthogonalization (two passes of modified Gram-Schmidt against every
// previous vector each step). Stops at max_steps or when the next
// off-diagonal coefficient falls below breakdown_tol; a non-positive
// breakdown_tol selects 1e-12 * ||H||_F.
LanczosResult lanczos_iterate(const OperatorMatrix& H, const StateVector& psi0, int max_steps,
                              double breakdown_tol = -1.0);

// max |<K_m|H|K_n>| over |m - n| >= 2; small values certify the tridiagonal
// form of H in the computed basis.
double hessenberg_verify(const OperatorMatrix& H, const KrylovBasis& basis);

}  // namespace kgx
