#include "kgx/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <vector>

namespace kgx {

void StateVector::normalize() {
  double n = amps.norm();
  if (n == 0) throw_numeric("cannot normalize the zero vector");
  amps /= n;
}

double OperatorMatrix::hermitian_defect() const {
  Eigen::SparseMatrix<Cx> diff = Eigen::SparseMatrix<Cx>(entries.adjoint()) - entries;
  double max_diff = 0, max_entry = 0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (Eigen::SparseMatrix<Cx>::InnerIterator it(diff, k); it; ++it)
      max_diff = std::max(max_diff, std::abs(it.value()));
  for (int k = 0; k < entries.outerSize(); ++k)
    for (Eigen::SparseMatrix<Cx>::InnerIterator it(entries, k); it; ++it)
      max_entry = std::max(max_entry, std::abs(it.value()));
  if (max_entry == 0) return 0;
  return max_diff / max_entry;
}

StateVector vacuum(const FockSpace& space) {
  StateVector v;
  v.space = space;
  v.amps = Eigen::VectorXcd::Zero(static_cast<long>(space.total_dim));
  v.amps(0) = 1.0;
  return v;
}

std::pair<OperatorMatrix, OperatorMatrix> build_ladder(const FockSpace& space, int mode) {
  if (mode < 0 || mode >= space.n_modes)
    throw_validation("mode index " + std::to_string(mode) + " out of range");

  std::size_t stride = 1;
  for (int k = 0; k < mode; ++k) stride *= static_cast<std::size_t>(space.dim_per_mode);

  std::vector<Eigen::Triplet<Cx>> trip_a;
  trip_a.reserve(space.total_dim);
  for (std::size_t idx = 0; idx < space.total_dim; ++idx) {
    int n = space.level(idx, mode);
    if (n >= 1) {
      // <n-1| a |n> = sqrt(n)
      trip_a.emplace_back(static_cast<int>(idx - stride), static_cast<int>(idx),
                          Cx(std::sqrt(double(n)), 0));
    }
  }

  OperatorMatrix a;
  a.space = space;
  a.hermitian = false;
  a.entries.resize(static_cast<long>(space.total_dim), static_cast<long>(space.total_dim));
  a.entries.setFromTriplets(trip_a.begin(), trip_a.end());

  OperatorMatrix a_dag = a;
  a_dag.entries = a.entries.adjoint();
  return {std::move(a), std::move(a_dag)};
}

OperatorMatrix build_hamiltonian(const StateFamily& family, const FockSpace& space) {
  OperatorMatrix H;
  H.space = space;
  H.hermitian = true;
  H.entries.resize(static_cast<long>(space.total_dim), static_cast<long>(space.total_dim));
  std::vector<Eigen::Triplet<Cx>> trip;

  switch (family.tag) {
    case StateFamily::Tag::coherent: {
      if (space.n_modes != 1) throw_validation("coherent generator needs one mode");
      double alpha = family.alpha.convert_to<double>();
      for (int n = 1; n < space.dim_per_mode; ++n) {
        double v = alpha * std::sqrt(double(n));
        trip.emplace_back(n - 1, n, Cx(v, 0));
        trip.emplace_back(n, n - 1, Cx(v, 0));
      }
      break;
    }
    case StateFamily::Tag::squeezed: {
      if (space.n_modes != 1) throw_validation("squeezing generator needs one mode");
      double eta = family.eta.convert_to<double>();
      for (int n = 2; n < space.dim_per_mode; ++n) {
        double v = 0.5 * eta * std::sqrt(double(n) * double(n - 1));
        trip.emplace_back(n - 2, n, Cx(v, 0));
        trip.emplace_back(n, n - 2, Cx(v, 0));
      }
      break;
    }
    case StateFamily::Tag::two_mode: {
      if (space.n_modes != 2) throw_validation("two-mode generator needs two modes");
      double r = family.r.convert_to<double>();
      int d = space.dim_per_mode;
      // H = i r (a b - a^dag b^dag): e^{-iHt}|0,0> is the two-mode squeezed
      // vacuum with real squeezing parameter r t.
      for (std::size_t idx = 0; idx < space.total_dim; ++idx) {
        int na = space.level(idx, 0);
        int nb = space.level(idx, 1);
        if (na >= 1 && nb >= 1) {
          double v = r * std::sqrt(double(na) * double(nb));
          std::size_t down = idx - 1 - static_cast<std::size_t>(d);
          trip.emplace_back(static_cast<int>(down), static_cast<int>(idx), Cx(0, v));
          trip.emplace_back(static_cast<int>(idx), static_cast<int>(down), Cx(0, -v));
        }
      }
      break;
    }
    default:
      throw_validation(std::string("no Hamiltonian builder for family ") + family.name());
  }

  H.entries.setFromTriplets(trip.begin(), trip.end());
  return H;
}

StateVector evolve_oracle(const OperatorMatrix& H, const StateVector& psi0, double t) {
  if (!(H.space == psi0.space)) throw_validation("operator and state live in different spaces");
  if (!std::isfinite(t)) throw_validation("evolution time must be finite");
  if (!H.hermitian || H.hermitian_defect() > 1e-12)
    throw_numeric("evolve_oracle requires a Hermitian generator");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense());
  if (es.info() != Eigen::Success) throw_numeric("eigendecomposition failed");

  const Eigen::MatrixXcd& U = es.eigenvectors();
  Eigen::VectorXcd coeffs = U.adjoint() * psi0.amps;
  for (long k = 0; k < coeffs.size(); ++k)
    coeffs(k) *= std::exp(Cx(0, -es.eigenvalues()(k) * t));

  StateVector out;
  out.space = psi0.space;
  out.amps = U * coeffs;
  if (std::abs(out.norm() - psi0.norm()) > 1e-10)
    throw_numeric("evolution failed to preserve the norm");
  return out;
}

double truncation_tail(const StateVector& psi, double top_fraction) {
  const FockSpace& s = psi.space;
  int cut = static_cast<int>(std::ceil((1.0 - top_fraction) * s.dim_per_mode));
  cut = std::min(cut, s.dim_per_mode - 1);
  double tail = 0;
  for (std::size_t idx = 0; idx < s.total_dim; ++idx) {
    for (int m = 0; m < s.n_modes; ++m) {
      if (s.level(idx, m) >= cut) {
        tail += std::norm(psi.amps(static_cast<long>(idx)));
        break;
      }
    }
  }
  return tail;
}

void require_truncation_ok(const StateVector& psi, double tail_tol) {
  double tail = truncation_tail(psi);
  if (tail > tail_tol) {
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "truncation insufficient: top-level occupation %.3e exceeds %.3e", tail,
                  tail_tol);
    throw_numeric(buf);
  }
}

}  // namespace kgx
