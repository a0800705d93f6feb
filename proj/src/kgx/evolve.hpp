#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "kgx/family.hpp"
#include "kgx/tridiagonal.hpp"

namespace kgx {

using Cx = std::complex<double>;

// Krylov-chain amplitudes psi_n(t_j) with per-point tail diagnostics.
// tail_mass is the occupation of the last 5% of chain sites: the chain is a
// faithful stand-in for the infinite system only where this stays small.
struct AmplitudeSeries {
  std::vector<double> t_grid;
  Eigen::MatrixXcd psi;  // chain_len x |t_grid|
  std::vector<double> tail_mass;

  int chain_len() const { return static_cast<int>(psi.rows()); }
};

struct ComplexityCurve {
  std::vector<double> t_grid;
  std::vector<double> C;
  std::vector<double> C_partial;  // filled by partial_complexity users
  int partial_r = -1;
  std::vector<double> C_bound;
};

struct PropagateOptions {
  double tail_tol = 1e-8;
  bool enforce_tail = true;  // false: record tail_mass, let the caller filter
};

// psi_n(t) = (e^{-iTt})_{n,0} for the real symmetric tridiagonal T built from
// the first chain_len coefficients, computed by eigendecomposition (exact at
// every t, no step-size tuning).
AmplitudeSeries propagate(const TridiagonalData& tri, const std::vector<double>& t_grid,
                          int chain_len, const PropagateOptions& opts = {});

// Independent cross-check: classic fixed-step RK4 on the amplitude recursion
// i d/dt psi_n = a_n psi_n + b_n psi_{n-1} + b_{n+1} psi_{n+1}.
AmplitudeSeries propagate_rk4(const TridiagonalData& tri, const std::vector<double>& t_grid,
                              int chain_len, double dt = 1e-3);

// C(t) = sum_n n |psi_n(t)|^2, accumulated smallest terms first since the
// summands span many orders of magnitude.
std::vector<double> spread_complexity(const AmplitudeSeries& amps);

// Partial sum over n <= r only; monotone non-decreasing in r.
std::vector<double> partial_complexity(const AmplitudeSeries& amps, int r);

// Coefficient chains known in closed form (all a_n = 0):
//   coherent   b_n = alpha sqrt(n)
//   squeezed   b_n = (eta/2) sqrt(2n(2n-1))
//   two_mode   b_n = n r
TridiagonalData analytic_chain(const StateFamily& family, int length);

// Reference curves and, for the displaced-squeezed family, the explicit
// low-level amplitude profiles. psi2_sq uses the small-eta closed form and is
// exact only in that regime; C_K3 = psi1_sq + 2 psi2_sq is the three-level
// partial complexity built from these profiles.
struct ClosedForm {
  std::vector<double> t_grid;
  std::vector<double> C;        // empty for displaced_squeezed (not known in full)
  std::vector<double> C_bound;  // mean total excitation of the target state
  std::vector<double> psi0_sq, psi1_sq, psi2_sq, C_K3;
};

ClosedForm closed_form(const StateFamily& family, const std::vector<double>& t_grid);

std::vector<double> linear_grid(double t_min, double t_max, int steps);

}  // namespace kgx
