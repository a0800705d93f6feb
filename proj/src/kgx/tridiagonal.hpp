#pragma once

#include <cstddef>
#include <vector>

namespace kgx {

// Lanczos coefficients of a Hamiltonian in its Krylov basis: the diagonal
// entries a[n] and off-diagonal entries b[n] of the tridiagonal form, with
// the convention b[0] = 0. `terminated` records that the iteration hit an
// invariant subspace (the next off-diagonal fell below the breakdown
// tolerance); `clipped` that the requested step count exceeded the space
// dimension and was reduced.
struct TridiagonalData {
  std::vector<double> a;
  std::vector<double> b;
  bool terminated = false;
  bool clipped = false;

  std::size_t length() const { return a.size(); }
};

}  // namespace kgx
