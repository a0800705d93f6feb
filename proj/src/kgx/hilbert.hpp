#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <utility>

#include "kgx/errors.hpp"
#include "kgx/family.hpp"

namespace kgx {

using Cx = std::complex<double>;

// Truncated Fock space: n_modes oscillators, each cut at dim_per_mode levels.
// Basis index convention: mode 0 varies fastest, so a product state with
// occupations (n_0, ..., n_{M-1}) sits at index sum_k n_k * dim^k.
struct FockSpace {
  int n_modes = 1;
  int dim_per_mode = 2;
  std::size_t total_dim = 2;

  FockSpace() = default;
  FockSpace(int modes, int dim) : n_modes(modes), dim_per_mode(dim) {
    if (modes < 1) throw_validation("mode count must be positive");
    if (dim < 2) throw_validation("truncation must keep at least two levels per mode");
    total_dim = 1;
    for (int k = 0; k < modes; ++k) total_dim *= static_cast<std::size_t>(dim);
  }

  int level(std::size_t index, int mode) const {
    std::size_t d = static_cast<std::size_t>(dim_per_mode);
    for (int k = 0; k < mode; ++k) index /= d;
    return static_cast<int>(index % d);
  }

  bool operator==(const FockSpace& o) const {
    return n_modes == o.n_modes && dim_per_mode == o.dim_per_mode;
  }
};

struct StateVector {
  Eigen::VectorXcd amps;
  FockSpace space;

  double norm() const { return amps.norm(); }
  void normalize();
};

struct OperatorMatrix {
  Eigen::SparseMatrix<Cx> entries;
  bool hermitian = false;
  FockSpace space;

  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(entries); }
  // max |H - H^dagger| entry relative to max |H| entry
  double hermitian_defect() const;
};

StateVector vacuum(const FockSpace& space);

// Annihilation / creation pair acting on one mode, identity on the others.
// The top level is truncated away: a_dagger |N-1> = 0.
std::pair<OperatorMatrix, OperatorMatrix> build_ladder(const FockSpace& space, int mode);

// Hermitian generator whose e^{-iHt} flow produces the family's states:
//   coherent  alpha (a^dag + a)              (one mode)
//   squeezed  eta (a^2 + a^dag^2) / 2        (one mode)
//   two_mode  i r (a b - a^dag b^dag)        (two modes)
// The displaced-squeezed family has no single time-independent generator of
// this kind and is rejected.
OperatorMatrix build_hamiltonian(const StateFamily& family, const FockSpace& space);

// Reference evolution e^{-iHt} psi0 by full eigendecomposition. Deliberately
// naive and therefore a trustworthy cross-check for the chain propagation.
StateVector evolve_oracle(const OperatorMatrix& H, const StateVector& psi0, double t);

// Occupation probability of the top fraction of levels (any mode); used to
// decide whether a truncated computation can be accepted.
double truncation_tail(const StateVector& psi, double top_fraction = 0.05);

void require_truncation_ok(const StateVector& psi, double tail_tol = 1e-8);

}  // namespace kgx
