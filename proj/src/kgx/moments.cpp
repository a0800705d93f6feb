#include "kgx/moments.hpp"

namespace kgx {

MomentSequence<double> moments_from_lanczos(const TridiagonalData& tri, int n_max) {
  std::vector<double> b2(tri.b.size(), 0.0);
  for (std::size_t k = 1; k < tri.b.size(); ++k) b2[k] = tri.b[k] * tri.b[k];
  return moments_from_chain<double>(tri.a, b2, n_max);
}

std::uint64_t contributing_path_count(int n, int chain_length) {
  if (n < 0 || chain_length < 1) throw_validation("bad path-count arguments");
  std::vector<std::uint64_t> x(static_cast<std::size_t>(chain_length), 0), next(x);
  x[0] = 1;
  for (int step = 0; step < n; ++step) {
    for (int k = 0; k < chain_length; ++k) {
      std::uint64_t acc = 0;
      if (k > 0) acc += x[static_cast<std::size_t>(k) - 1];
      if (k + 1 < chain_length) acc += x[static_cast<std::size_t>(k) + 1];
      next[static_cast<std::size_t>(k)] = acc;
    }
    std::swap(x, next);
  }
  return x[0];
}

}  // namespace kgx
