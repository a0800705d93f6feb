#include "kgx/lanczos.hpp"

#include <cmath>

namespace kgx {

double KrylovBasis::orthonormality_defect() const {
  double worst = 0;
  for (std::size_t m = 0; m < vectors.size(); ++m)
    for (std::size_t n = m; n < vectors.size(); ++n) {
      Cx ip = vectors[m].dot(vectors[n]);
      double expect = (m == n) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(ip - Cx(expect, 0)));
    }
  return worst;
}

LanczosResult lanczos_iterate(const OperatorMatrix& H, const StateVector& psi0, int max_steps,
                              double breakdown_tol) {
  if (!(H.space == psi0.space)) throw_validation("operator and state live in different spaces");
  if (max_steps < 1) throw_validation("max_steps must be at least 1");
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    throw_numeric("Lanczos iteration requires a normalized initial state");
  if (!H.hermitian || H.hermitian_defect() > 1e-12)
    throw_numeric("Lanczos iteration requires a Hermitian generator");

  const double scale = H.entries.norm();
  if (breakdown_tol <= 0) breakdown_tol = 1e-12 * std::max(scale, 1.0);

  LanczosResult out;
  out.basis.space = H.space;
  const long dim = static_cast<long>(H.space.total_dim);
  if (max_steps > dim) {
    max_steps = static_cast<int>(dim);
    out.tri.clipped = true;
  }

  std::vector<Eigen::VectorXcd>& basis = out.basis.vectors;
  basis.push_back(psi0.amps);

  double b_prev = 0;
  for (int n = 0; n < max_steps; ++n) {
    Eigen::VectorXcd w = H.entries * basis[static_cast<std::size_t>(n)];

    Cx diag = basis[static_cast<std::size_t>(n)].dot(w);
    if (std::abs(diag.imag()) > 1e-10 * std::max(scale, 1.0))
      throw_numeric("diagonal Lanczos coefficient has a non-negligible imaginary part");
    double a_n = diag.real();

    w -= a_n * basis[static_cast<std::size_t>(n)];
    if (n > 0) w -= b_prev * basis[static_cast<std::size_t>(n) - 1];

    // Full re-orthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass)
      for (const Eigen::VectorXcd& v : basis) w -= v.dot(w) * v;

    out.tri.a.push_back(a_n);
    out.tri.b.push_back(b_prev);

    double b_next = w.norm();
    if (b_next <= breakdown_tol) {
      out.tri.terminated = true;
      break;
    }
    if (n + 1 < max_steps) {
      basis.push_back(w / b_next);
      b_prev = b_next;
    }
  }
  return out;
}

double hessenberg_verify(const OperatorMatrix& H, const KrylovBasis& basis) {
  const std::size_t L = basis.size();
  if (L == 0) throw_validation("empty Krylov basis");

  std::vector<Eigen::VectorXcd> images;
  images.reserve(L);
  for (const Eigen::VectorXcd& v : basis.vectors) images.push_back(H.entries * v);

  double worst = 0;
  for (std::size_t m = 0; m < L; ++m)
    for (std::size_t n = 0; n < L; ++n) {
      if (m >= n ? (m - n) < 2 : (n - m) < 2) continue;
      worst = std::max(worst, std::abs(basis.vectors[m].dot(images[n])));
    }
  return worst;
}

}  // namespace kgx
