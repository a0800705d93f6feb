#include "kgx/evolve.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kgx/errors.hpp"

namespace kgx {

namespace {

void fill_tail(AmplitudeSeries& amps) {
  const int L = amps.chain_len();
  const int cut = std::min(L - 1, static_cast<int>(std::ceil(0.95 * L)));
  amps.tail_mass.resize(amps.t_grid.size());
  for (std::size_t j = 0; j < amps.t_grid.size(); ++j) {
    double tail = 0;
    for (int n = cut; n < L; ++n) tail += std::norm(amps.psi(n, static_cast<long>(j)));
    amps.tail_mass[j] = tail;
  }
}

std::string sci3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

void enforce_tail(const AmplitudeSeries& amps, double tol) {
  for (std::size_t j = 0; j < amps.t_grid.size(); ++j)
    if (amps.tail_mass[j] > tol)
      throw_numeric("truncation insufficient: chain tail mass " + sci3(amps.tail_mass[j]) +
                    " exceeds " + sci3(tol) + " at t = " + std::to_string(amps.t_grid[j]) +
                    "; extend the chain or shorten the grid");
}

void check_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw_validation("empty time grid");
  for (std::size_t j = 1; j < t_grid.size(); ++j)
    if (!(t_grid[j] > t_grid[j - 1])) throw_validation("time grid must be strictly increasing");
}

}  // namespace

std::vector<double> linear_grid(double t_min, double t_max, int steps) {
  if (steps < 2) throw_validation("grid needs at least 2 points");
  if (!(t_max > t_min)) throw_validation("grid upper end must exceed lower end");
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int j = 0; j < steps; ++j)
    g[static_cast<std::size_t>(j)] = t_min + (t_max - t_min) * double(j) / double(steps - 1);
  return g;
}

AmplitudeSeries propagate(const TridiagonalData& tri, const std::vector<double>& t_grid,
                          int chain_len, const PropagateOptions& opts) {
  check_grid(t_grid);
  if (chain_len < 1) throw_validation("chain length must be positive");
  if (static_cast<std::size_t>(chain_len) > tri.length())
    throw_validation("chain length " + std::to_string(chain_len) +
                     " exceeds the available " + std::to_string(tri.length()) +
                     " coefficients");

  Eigen::VectorXd diag(chain_len), sub(std::max(chain_len - 1, 0));
  for (int n = 0; n < chain_len; ++n) diag(n) = tri.a[static_cast<std::size_t>(n)];
  for (int n = 1; n < chain_len; ++n) {
    double b = tri.b[static_cast<std::size_t>(n)];
    if (!(b > 0)) throw_validation("off-diagonal coefficients must be positive inside the chain");
    sub(n - 1) = b;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw_numeric("tridiagonal eigendecomposition failed");
  const Eigen::MatrixXd& U = es.eigenvectors();
  const Eigen::VectorXd& lam = es.eigenvalues();

  AmplitudeSeries out;
  out.t_grid = t_grid;
  out.psi.resize(chain_len, static_cast<long>(t_grid.size()));
  Eigen::VectorXd u0 = U.row(0).transpose();
  Eigen::VectorXcd phase(chain_len);
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    for (int k = 0; k < chain_len; ++k)
      phase(k) = std::exp(Cx(0, -lam(k) * t_grid[j])) * u0(k);
    out.psi.col(static_cast<long>(j)) = U * phase;
  }

  fill_tail(out);
  if (opts.enforce_tail) enforce_tail(out, opts.tail_tol);
  return out;
}

AmplitudeSeries propagate_rk4(const TridiagonalData& tri, const std::vector<double>& t_grid,
                              int chain_len, double dt) {
  check_grid(t_grid);
  if (t_grid.front() < 0) throw_validation("RK4 cross-check integrates forward from t = 0");
  if (static_cast<std::size_t>(chain_len) > tri.length() || chain_len < 1)
    throw_validation("bad chain length");

  auto rhs = [&](const Eigen::VectorXcd& psi) {
    Eigen::VectorXcd d(chain_len);
    for (int n = 0; n < chain_len; ++n) {
      Cx acc = tri.a[static_cast<std::size_t>(n)] * psi(n);
      if (n > 0) acc += tri.b[static_cast<std::size_t>(n)] * psi(n - 1);
      if (n + 1 < chain_len) acc += tri.b[static_cast<std::size_t>(n) + 1] * psi(n + 1);
      d(n) = Cx(0, -1) * acc;
    }
    return d;
  };

  AmplitudeSeries out;
  out.t_grid = t_grid;
  out.psi.resize(chain_len, static_cast<long>(t_grid.size()));

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(chain_len);
  psi(0) = 1.0;
  double t = 0;
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    while (t < t_grid[j] - 1e-15) {
      double h = std::min(dt, t_grid[j] - t);
      Eigen::VectorXcd k1 = rhs(psi);
      Eigen::VectorXcd k2 = rhs(psi + 0.5 * h * k1);
      Eigen::VectorXcd k3 = rhs(psi + 0.5 * h * k2);
      Eigen::VectorXcd k4 = rhs(psi + h * k3);
      psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
    }
    out.psi.col(static_cast<long>(j)) = psi;
  }
  fill_tail(out);
  return out;
}

std::vector<double> spread_complexity(const AmplitudeSeries& amps) {
  const int L = amps.chain_len();
  std::vector<double> C(amps.t_grid.size());
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(L));
  for (std::size_t j = 0; j < amps.t_grid.size(); ++j) {
    terms.clear();
    for (int n = 1; n < L; ++n)
      terms.push_back(double(n) * std::norm(amps.psi(n, static_cast<long>(j))));
    std::sort(terms.begin(), terms.end());
    double acc = 0;
    for (double v : terms) acc += v;
    C[j] = acc;
  }
  return C;
}

std::vector<double> partial_complexity(const AmplitudeSeries& amps, int r) {
  if (r < 0 || r >= amps.chain_len())
    throw_validation("partial sum level must lie inside the chain");
  std::vector<double> C(amps.t_grid.size());
  std::vector<double> terms;
  for (std::size_t j = 0; j < amps.t_grid.size(); ++j) {
    terms.clear();
    for (int n = 1; n <= r; ++n)
      terms.push_back(double(n) * std::norm(amps.psi(n, static_cast<long>(j))));
    std::sort(terms.begin(), terms.end());
    double acc = 0;
    for (double v : terms) acc += v;
    C[j] = acc;
  }
  return C;
}

TridiagonalData analytic_chain(const StateFamily& family, int length) {
  if (length < 1) throw_validation("chain length must be positive");
  TridiagonalData tri;
  tri.a.assign(static_cast<std::size_t>(length), 0.0);
  tri.b.resize(static_cast<std::size_t>(length), 0.0);
  switch (family.tag) {
    case StateFamily::Tag::coherent: {
      double alpha = family.alpha.convert_to<double>();
      if (!(alpha > 0)) throw_validation("coherent chain needs alpha > 0");
      for (int n = 1; n < length; ++n)
        tri.b[static_cast<std::size_t>(n)] = alpha * std::sqrt(double(n));
      break;
    }
    case StateFamily::Tag::squeezed: {
      double eta = family.eta.convert_to<double>();
      if (!(eta > 0)) throw_validation("squeezed chain needs eta > 0");
      for (int n = 1; n < length; ++n)
        tri.b[static_cast<std::size_t>(n)] =
            0.5 * eta * std::sqrt(2.0 * n * (2.0 * n - 1.0));
      break;
    }
    case StateFamily::Tag::two_mode: {
      double r = family.r.convert_to<double>();
      if (!(r > 0)) throw_validation("two-mode chain needs r > 0");
      for (int n = 1; n < length; ++n) tri.b[static_cast<std::size_t>(n)] = double(n) * r;
      break;
    }
    default:
      throw_validation(std::string("no closed-form chain for family ") + family.name());
  }
  return tri;
}

ClosedForm closed_form(const StateFamily& family, const std::vector<double>& t_grid) {
  check_grid(t_grid);
  ClosedForm out;
  out.t_grid = t_grid;
  const std::size_t T = t_grid.size();

  switch (family.tag) {
    case StateFamily::Tag::coherent: {
      double alpha = family.alpha.convert_to<double>();
      out.C.resize(T);
      out.C_bound.resize(T);
      for (std::size_t j = 0; j < T; ++j) {
        double v = alpha * alpha * t_grid[j] * t_grid[j];
        out.C[j] = v;
        out.C_bound[j] = v;
      }
      break;
    }
    case StateFamily::Tag::squeezed: {
      // The Krylov basis steps through even levels only, so the chain-index
      // spread is half the mean excitation: C = sinh^2(eta t)/2 while the
      // excitation bound C_F = sinh^2(eta t). The bound is not saturated.
      double eta = family.eta.convert_to<double>();
      out.C.resize(T);
      out.C_bound.resize(T);
      for (std::size_t j = 0; j < T; ++j) {
        double s = std::sinh(eta * t_grid[j]);
        out.C[j] = 0.5 * s * s;
        out.C_bound[j] = s * s;
      }
      break;
    }
    case StateFamily::Tag::two_mode: {
      double r = family.r.convert_to<double>();
      out.C.resize(T);
      out.C_bound.resize(T);
      for (std::size_t j = 0; j < T; ++j) {
        double s = std::sinh(r * t_grid[j]);
        out.C[j] = s * s;
        out.C_bound[j] = s * s;  // per-mode excitation; both modes agree
      }
      break;
    }
    case StateFamily::Tag::displaced_squeezed: {
      double alpha = family.alpha.convert_to<double>();
      double eta = family.eta.convert_to<double>();
      out.C_bound.resize(T);
      out.psi0_sq.resize(T);
      out.psi1_sq.resize(T);
      out.psi2_sq.resize(T);
      out.C_K3.resize(T);
      for (std::size_t j = 0; j < T; ++j) {
        double t = t_grid[j];
        double a2 = alpha * alpha, a2t2 = a2 * t * t;
        double ch = std::cosh(eta * t), sh = std::sinh(eta * t), th = std::tanh(eta * t);
        double shr = std::sinh(eta * t);
        out.C_bound[j] = a2t2 + shr * shr;

        out.psi0_sq[j] = std::exp(a2t2 * (th - 1.0)) / ch;

        double inner = a2 * t * (eta * t / ch + 2.0 * sh - 2.0 * ch) - eta * sh;
        out.psi1_sq[j] = inner * inner * std::exp(a2t2 * (th - 1.0)) /
                         ((4.0 * a2 + 2.0 * eta * eta) * ch * ch * ch);

        // small-eta profile for the third level
        double q = 3.0 * eta * t - 2.0;
        double inner2 = a2 * t * q * q - 6.0 * eta * q + 12.0 * eta;
        out.psi2_sq[j] = a2t2 * inner2 * inner2 * std::exp(a2t2 * (eta * t - 1.0)) /
                         (16.0 * (2.0 * a2 + 9.0 * eta * eta));

        out.C_K3[j] = out.psi1_sq[j] + 2.0 * out.psi2_sq[j];
      }
      break;
    }
    default:
      throw_validation(std::string("no closed-form curve for family ") + family.name());
  }
  return out;
}

}  // namespace kgx
