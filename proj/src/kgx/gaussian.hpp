#pragma once

#include <Eigen/Dense>
#include <complex>

#include "kgx/errors.hpp"
#include "kgx/family.hpp"

namespace kgx {

using Cx = std::complex<double>;

// Quadrature ordering of a 2n-dimensional covariance matrix. qqpp groups all
// positions first (symplectic form J = [[0, I], [-I, 0]]); qpqp interleaves
// mode by mode. Everything internal works in qqpp; qpqp exists only at the
// boundary, reachable through an explicit permutation. Silently mixing the
// two is the main transcription hazard in this formalism.
enum class Ordering { qqpp, qpqp };
enum class Statistics { boson, fermion };

Eigen::MatrixXd symplectic_form(int n_modes);         // J in qqpp ordering
Eigen::MatrixXd ordering_permutation(int n_modes);    // P with x_qqpp = P x_qpqp

struct BosonCovariance {
  Eigen::MatrixXd V;
  Ordering ordering = Ordering::qqpp;
  int n_modes = 1;

  BosonCovariance() = default;
  BosonCovariance(Eigen::MatrixXd v, int modes, Ordering ord = Ordering::qqpp);

  BosonCovariance with_ordering(Ordering target) const;
  double symmetry_defect() const;
  // min eigenvalue of V + (i/2) J; physical states keep this >= -1e-10
  double physicality_margin() const;
};

struct FermionCovariance {
  Eigen::MatrixXd omega;  // antisymmetric, Majorana qqpp ordering
  int n_modes = 1;

  double antisymmetry_defect() const;
  // ||omega omega^T - I||_max; zero for pure states
  double purity_defect() const;
};

struct LinearMap {
  enum class Kind { symplectic, orthogonal };
  Eigen::MatrixXd M;
  Kind kind = Kind::symplectic;
  int n_modes = 1;

  // ||M J M^T - J||_max resp. ||M M^T - I||_max
  double defect() const;
};

// The 2x2 Bogoliubov map with annihilator coefficients e^{i phi} cosh r and
// e^{i theta} sinh r, acting on (q, p).
LinearMap single_mode_bogoliubov(double r, double theta, double phi);

BosonCovariance transform_covariance(const LinearMap& map, const BosonCovariance& V);
FermionCovariance transform_covariance(const LinearMap& map, const FermionCovariance& omega);

// Delta = target * reference^{-1}; its spectrum carries all basis-independent
// relative information between the two states.
Eigen::MatrixXd relative_covariance(const Eigen::MatrixXd& target, const Eigen::MatrixXd& ref);

Eigen::VectorXcd covariance_spectrum(const Eigen::MatrixXd& delta);

// Mean total excitation of the target relative to the reference:
// -(1/4) Tr(I - Delta) for bosons, +(1/4) Tr(I - Delta) for fermions. Upper
// bound on the spread complexity of any evolution connecting the two states.
double fock_bound(const Eigen::MatrixXd& delta, Statistics stats);
double bound_from_spectrum(const Eigen::VectorXcd& eigs, Statistics stats);

// Excitation count including a displacement in dimensionless quadratures:
// (1/4) Tr(V - I) + (1/2) |d|^2 against the vacuum reference.
double mean_excitation(const BosonCovariance& V, const Eigen::Vector2d& displacement);

// Covariance of the pure Gaussian wave function ~ exp(-(a + i b) q^2 / 2).
BosonCovariance covariance_from_wavefunction(double a, double b);

struct TfdParams {
  double lambda = 1;
  double lambda_ref = 1;
  double alpha = 0;  // tanh(alpha) = Boltzmann weight of one quantum
  double omega = 1;
  double t = 0;
};

struct TfdCovariances {
  BosonCovariance reference;  // diag(1/lambda_ref, lambda_ref)
  BosonCovariance ground;     // diag(1/lambda, lambda)
  BosonCovariance tfd_plus;   // diag(e^{2a}/lambda, lambda e^{-2a})
  BosonCovariance tfd_minus;  // alpha -> -alpha
};

TfdCovariances tfd_covariances(const TfdParams& p);

// Covariance of the (+) diagonal mode after evolving for time t with the
// oscillator Hamiltonian; pass -alpha for the (-) mode.
BosonCovariance tfd_time_evolved(const TfdParams& p);

struct TfdBounds {
  double C_plus, C_minus, C_max, C_sigma;
  double dC_plus, dC_minus, dC_sigma;  // complexity of formation (vs alpha = 0)
};

TfdBounds tfd_bounds(const TfdParams& p);
// Same record evaluated on the time-evolved covariances.
TfdBounds tfd_bounds_time_evolved(const TfdParams& p);

struct GeometricComplexity {
  double plus, minus, total;
};

// Nielsen-geodesic reference values for the two diagonal modes (unit
// reference frequency ratio convention).
GeometricComplexity geometric_complexity(double lambda, double alpha);

// Geodesic length of the fermion-pair rotation, 2 theta on [0, pi].
double fermion_geodesic(double theta);

struct FermionPairResult {
  LinearMap map;                  // 4x4 orthogonal Bogoliubov map
  FermionCovariance omega_tilde;  // M Omega M^T
  Eigen::MatrixXd delta;
  Eigen::VectorXcd spectrum;  // e^{+-2i theta}, each twice
  double bound_per_fermion;   // sin^2 theta
  double bound_summed;        // 2 sin^2 theta
};

FermionPairResult fermion_pair(double theta, double phi);

struct DiracModeParams {
  double p = 0;       // momentum magnitude
  double m = 0;       // mass
  double cutoff = 1;  // hard cutoff for summed complexities
};

enum class DiracKind { ground, excited };

// Per-spin complexity of one momentum mode of the free Dirac field:
// sin^2(arctan(p/m)/2) for the ground state, cos^2 of the same angle for the
// pair-excited state. The massless point is the exact limit value 1/2, not an
// evaluation of arctan at infinity.
double dirac_mode(const DiracModeParams& p, DiracKind kind);

// Per-unit-volume complexity summed over momenta up to the cutoff and over
// both spins, by composite Simpson quadrature with n_grid intervals.
double dirac_summed(const DiracModeParams& p, DiracKind kind, int n_grid);

// Family-level excitation bound C_F(t) for the bosonic state families driven
// by module evolve (displacement included where the family has one).
double family_fock_bound(const StateFamily& family, double t);

}  // namespace kgx
