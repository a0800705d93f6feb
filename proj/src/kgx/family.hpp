#pragma once

#include <string>

#include "kgx/scalars.hpp"

namespace kgx {

// Tagged parameter record for one Gaussian-state family. Strength parameters
// that feed the exact (rational) pipelines are stored as rationals; phases,
// frequencies and field-mode parameters are plain doubles since only the
// covariance machinery consumes them.
struct StateFamily {
  enum class Tag {
    coherent,
    squeezed,
    displaced_squeezed,
    two_mode,
    single_mode,
    tfd,
    fermion_pair,
    dirac,
  };
  enum class DiracKind { ground, excited };

  Tag tag = Tag::coherent;

  Rational alpha{0};       // coherent / displaced-squeezed displacement rate
  Rational eta{0};         // squeezing rate
  Rational r{0};           // two-mode squeezing rate, single-mode squeeze value
  Rational lambda{1};      // frequency ratio of the target oscillator
  Rational lambda_ref{1};  // frequency ratio of the reference oscillator
  int tfd_sign = +1;       // +1 selects the (+) diagonal mode, -1 the (-) mode

  double theta = 0;  // Bogoliubov mixing angle
  double phi = 0;    // Bogoliubov phase
  double omega = 0;  // oscillator frequency (time-evolved bounds)
  double p = 0;      // momentum magnitude
  double mass = 0;
  double cutoff = 0;  // hard momentum cutoff for summed complexities
  DiracKind kind = DiracKind::ground;

  static StateFamily make_coherent(Rational alpha) {
    StateFamily f;
    f.tag = Tag::coherent;
    f.alpha = std::move(alpha);
    return f;
  }
  static StateFamily make_squeezed(Rational eta) {
    StateFamily f;
    f.tag = Tag::squeezed;
    f.eta = std::move(eta);
    return f;
  }
  static StateFamily make_displaced_squeezed(Rational alpha, Rational eta) {
    StateFamily f;
    f.tag = Tag::displaced_squeezed;
    f.alpha = std::move(alpha);
    f.eta = std::move(eta);
    return f;
  }
  static StateFamily make_two_mode(Rational r) {
    StateFamily f;
    f.tag = Tag::two_mode;
    f.r = std::move(r);
    return f;
  }
  static StateFamily make_tfd(Rational lambda, Rational lambda_ref, int sign = +1) {
    StateFamily f;
    f.tag = Tag::tfd;
    f.lambda = std::move(lambda);
    f.lambda_ref = std::move(lambda_ref);
    f.tfd_sign = sign;
    return f;
  }

  const char* name() const {
    switch (tag) {
      case Tag::coherent: return "coherent";
      case Tag::squeezed: return "squeezed";
      case Tag::displaced_squeezed: return "displaced_squeezed";
      case Tag::two_mode: return "two_mode";
      case Tag::single_mode: return "single_mode";
      case Tag::tfd: return "tfd";
      case Tag::fermion_pair: return "fermion_pair";
      case Tag::dirac: return "dirac";
    }
    return "unknown";
  }
};

}  // namespace kgx
