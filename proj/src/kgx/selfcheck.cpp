#include "kgx/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "kgx/evolve.hpp"
#include "kgx/gaussian.hpp"
#include "kgx/hilbert.hpp"
#include "kgx/lanczos.hpp"
#include "kgx/moments.hpp"

namespace kgx {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

struct Battery {
  SelfCheckOptions opts;
  std::vector<CheckResult> results;

  // shared between criteria: curves of the first two checks feed the bound chain
  AmplitudeSeries coherent_amps;
  std::vector<double> coherent_grid, coherent_C;
  AmplitudeSeries squeezed_amps;
  std::vector<double> squeezed_grid, squeezed_C;

  void run(const std::string& name, bool exact_arithmetic,
           const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    if (opts.fast && exact_arithmetic) {
      r.skipped = true;
      r.pass = true;
      r.detail = "skipped in fast mode";
      results.push_back(std::move(r));
      return;
    }
    auto start = std::chrono::steady_clock::now();
    try {
      r.detail = body();
      r.pass = true;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << secs;
    r.detail += " [" + os.str() + " s]";
    results.push_back(std::move(r));
  }
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw_numeric(msg);
}

double max_rel_where(const std::vector<double>& got, const std::vector<double>& want,
                     double floor_value) {
  double worst = 0;
  for (std::size_t j = 0; j < got.size(); ++j) {
    if (want[j] < floor_value) continue;
    worst = std::max(worst, std::abs(got[j] - want[j]) / want[j]);
  }
  return worst;
}

void require_runtime(double seconds, double limit) {
  require(seconds < limit, "runtime " + sci(seconds) + " s exceeded the " + sci(limit) +
                               " s budget");
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --------------------------------------------------------------------------

std::string check_coherent_closed_form(Battery& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  StateFamily fam = StateFamily::make_coherent(Rational(1));
  FockSpace space(1, 256);
  OperatorMatrix H = build_hamiltonian(fam, space);
  LanczosResult lan = lanczos_iterate(H, vacuum(space), 256);

  ctx.coherent_grid = linear_grid(0.0, 3.0, 200);
  ctx.coherent_amps = propagate(lan.tri, ctx.coherent_grid, static_cast<int>(lan.tri.length()));
  ctx.coherent_C = spread_complexity(ctx.coherent_amps);

  std::vector<double> want(ctx.coherent_grid.size());
  for (std::size_t j = 0; j < want.size(); ++j)
    want[j] = ctx.coherent_grid[j] * ctx.coherent_grid[j];
  double worst = max_rel_where(ctx.coherent_C, want, 1e-3);
  require(worst <= 1e-6, "max relative error " + sci(worst) + " > 1e-06 against alpha^2 t^2");
  require_runtime(seconds_since(t0), 5.0);
  return "max_rel " + sci(worst) + " <= 1e-06";
}

std::string check_squeezed_closed_form(Battery& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  StateFamily fam = StateFamily::make_squeezed(Rational(1));
  TridiagonalData tri = analytic_chain(fam, 800);

  ctx.squeezed_grid = linear_grid(0.0, 2.5, 200);
  ctx.squeezed_amps = propagate(tri, ctx.squeezed_grid, 800);
  ctx.squeezed_C = spread_complexity(ctx.squeezed_amps);

  std::vector<double> asserted(ctx.squeezed_grid.size()), derived(ctx.squeezed_grid.size());
  for (std::size_t j = 0; j < asserted.size(); ++j) {
    double s = std::sinh(ctx.squeezed_grid[j]);
    asserted[j] = s * s;        // the claimed closed form (mean excitation)
    derived[j] = 0.5 * s * s;   // what summing n |psi_n|^2 over the chain gives
  }
  double worst = max_rel_where(ctx.squeezed_C, asserted, 1e-3);
  double worst_derived = max_rel_where(ctx.squeezed_C, derived, 1e-3);
  require_runtime(seconds_since(t0), 10.0);
  require(worst <= 1e-6,
          "propagated C(t) deviates from the asserted sinh^2(eta t) by " + sci(worst) +
              "; it matches sinh^2(eta t)/2 to " + sci(worst_derived) +
              " because the Krylov basis K_n = |2n> halves the chain-index sum relative "
              "to the mean excitation (the asserted value equals the bound C_F, which "
              "this family does not saturate)");
  return "max_rel " + sci(worst) + " <= 1e-06";
}

std::string check_two_mode_exact_moments() {
  auto t0 = std::chrono::steady_clock::now();
  StateFamily fam = StateFamily::make_two_mode(Rational(1));
  Jet<Rational> jet = survival_jet<Rational>(fam, 8);
  MomentSequence<Rational> mu = moments_from_jet(jet);
  require(mu.mu[2].re == Rational(-1), "mu_2 != -1");
  require(mu.mu[4].re == Rational(5), "mu_4 != 5");
  require(mu.mu[6].re == Rational(-61), "mu_6 != -61");
  RecoveredChain<Rational> rec = lanczos_from_moments(mu, 3);
  require(rec.b2[1] == Rational(1) && rec.b2[2] == Rational(4) && rec.b2[3] == Rational(9),
          "recovered b^2 != (1, 4, 9)");
  require(rec.a[0] == 0 && rec.a[1] == 0 && rec.a[2] == 0, "recovered a != 0");
  require_runtime(seconds_since(t0), 1.0);
  return "mu = (-1, 5, -61) and b^2 = (1, 4, 9), exact";
}

std::string check_squeezed_exact_moments() {
  StateFamily sq = StateFamily::make_squeezed(Rational(1));
  Jet<Rational> jet = survival_jet<Rational>(sq, 8);
  MomentSequence<Rational> mu = moments_from_jet(jet);
  require(mu.mu[8].re == Rational(87568, 256), "mu_8 != 87568 / 2^8 at eta = 1");

  StateFamily ds = StateFamily::make_displaced_squeezed(Rational(0), Rational(1));
  Jet<Rational> djet = survival_jet<Rational>(ds, 6);
  MomentSequence<Rational> dmu = moments_from_jet(djet);
  for (int n = 0; n <= 6; ++n)
    require(dmu.mu[n].re == mu.mu[n].re,
            "displaced-squeezed moment " + std::to_string(n) +
                " at alpha = 0 differs from the squeezed moment");
  return "mu_8 = 87568/256 exact; alpha = 0 reduction holds through order 6";
}

std::string check_route_agreement(const SelfCheckOptions& opts) {
  const int levels = 12;
  std::ostringstream note;
  for (StateFamily fam : {StateFamily::make_coherent(Rational(1)),
                          StateFamily::make_squeezed(Rational(1)),
                          StateFamily::make_two_mode(Rational(1))}) {
    const bool two_mode = fam.tag == StateFamily::Tag::two_mode;
    FockSpace space(two_mode ? 2 : 1, two_mode ? 64 : 256);
    OperatorMatrix H = build_hamiltonian(fam, space);
    LanczosResult lan = lanczos_iterate(H, vacuum(space), space.dim_per_mode);

    Jet<Rational> jet = survival_jet<Rational>(fam, 2 * levels);
    RecoveredChain<Rational> rec = lanczos_from_moments(moments_from_jet(jet), levels);
    TridiagonalData mchain = rec.chain();
    if (opts.b2_perturbation != 0 && mchain.b.size() > 2)
      mchain.b[2] *= 1.0 + opts.b2_perturbation;

    double worst_b = 0, worst_a = 0;
    for (int n = 0; n < levels; ++n) {
      double a_m = ScalarTraits<Rational>::to_double(rec.a[n]);
      worst_a = std::max(worst_a, std::abs(lan.tri.a[n] - a_m) / std::max(1.0, std::abs(a_m)));
      double b_m = n < static_cast<int>(mchain.b.size()) && n > 0 ? mchain.b[n] : rec.b[n];
      if (n > 0)
        worst_b = std::max(worst_b, std::abs(lan.tri.b[n] - b_m) / b_m);
    }
    worst_b = std::max(worst_b, std::abs(lan.tri.b[levels] - rec.b[levels]) / rec.b[levels]);
    require(worst_b <= 1e-8 && worst_a <= 1e-8,
            std::string(fam.name()) + ": coefficient routes differ by " +
                sci(std::max(worst_a, worst_b)) + " > 1e-08 (route mismatch)");

    // curves from both routes against the closed form, on a grid where the
    // short moments chain still holds its tail
    std::vector<double> grid = linear_grid(0.05, 0.40, 50);
    ClosedForm cf = closed_form(fam, grid);

    AmplitudeSeries amps1 = propagate(lan.tri, grid, static_cast<int>(lan.tri.length()));
    double worst1 = max_rel_where(spread_complexity(amps1), cf.C, 1e-3);

    AmplitudeSeries amps2 = propagate(mchain, grid, levels);
    double worst2 = max_rel_where(spread_complexity(amps2), cf.C, 1e-3);

    require(worst1 <= 1e-6, std::string(fam.name()) + ": Lanczos-route curve off by " +
                                sci(worst1) + " > 1e-06 (route mismatch)");
    require(worst2 <= 1e-6, std::string(fam.name()) + ": moments-route curve off by " +
                                sci(worst2) + " > 1e-06 (route mismatch)");
    note << fam.name() << " " << sci(std::max({worst_a, worst_b, worst1, worst2})) << "; ";
  }
  return "worst deviations: " + note.str();
}

std::string check_bound_chain(Battery& ctx) {
  require(!ctx.coherent_C.empty() && !ctx.squeezed_C.empty(),
          "bound chain needs the curves of the closed-form checks");
  struct Case {
    const AmplitudeSeries* amps;
    const std::vector<double>* C;
    const std::vector<double>* grid;
    StateFamily fam;
  };
  std::vector<Case> cases = {
      {&ctx.coherent_amps, &ctx.coherent_C, &ctx.coherent_grid,
       StateFamily::make_coherent(Rational(1))},
      {&ctx.squeezed_amps, &ctx.squeezed_C, &ctx.squeezed_grid,
       StateFamily::make_squeezed(Rational(1))},
  };
  double worst_gap = 0;
  for (const Case& c : cases) {
    const int L = c.amps->chain_len();
    std::vector<int> ranks = {0, 1, 2, 4, 8, 16, L - 1};
    std::vector<std::vector<double>> partials;
    for (int r : ranks) partials.push_back(partial_complexity(*c.amps, r));
    for (std::size_t j = 0; j < c.grid->size(); ++j) {
      double bound = family_fock_bound(c.fam, (*c.grid)[j]);
      for (std::size_t k = 0; k < ranks.size(); ++k) {
        double pr = partials[k][j];
        require(pr >= 0, "partial sum went negative");
        require(pr <= (*c.C)[j] + 1e-12, "partial sum exceeded the full complexity");
        if (k > 0)
          require(partials[k - 1][j] <= pr + 1e-15, "partial sums are not monotone in r");
      }
      require((*c.C)[j] <= bound + 1e-9,
              std::string(c.fam.name()) + ": C(t) exceeded the excitation bound at t = " +
                  std::to_string((*c.grid)[j]));
      worst_gap = std::max(worst_gap, (*c.C)[j] - bound);
    }
  }
  return "0 <= C^r <= C <= C_F + 1e-09 on all grid points; worst C - C_F = " + sci(worst_gap);
}

std::string check_displaced_partial_bound() {
  StateFamily fam = StateFamily::make_displaced_squeezed(Rational(100), Rational(3));
  std::vector<double> grid = linear_grid(0.05 / 500, 0.05, 500);
  ClosedForm cf = closed_form(fam, grid);
  double worst = -1e300, last_violation = 0;
  int violations = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double gap = cf.C_K3[j] - cf.C_bound[j];
    worst = std::max(worst, gap);
    if (gap > 0) {
      ++violations;
      last_violation = grid[j];
    }
  }
  require(violations == 0,
          "C_K3 exceeds alpha^2 t^2 + sinh^2(eta t) at " + std::to_string(violations) +
              " of 500 grid points (all with t <= " + std::to_string(last_violation) +
              ", max excess " + sci(worst) +
              "): the small-eta form of |psi_2|^2 carries an O(eta^2 t^2) error that "
              "dominates the exact O(t^4) behaviour near t = 0 at eta = 3, so the "
              "approximate three-level sum overshoots there; exact partial sums obey "
              "C^r <= C <= C_F by construction");
  return "C_K3 <= bound pointwise on (0, 0.05]; max C_K3 - bound = " + sci(worst);
}

std::string check_single_mode_covariance() {
  std::mt19937 rng(0x51c0ffee);
  std::uniform_real_distribution<double> rdist(0.05, 2.5), pdist(0.0, 2.0 * kPi);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    double r = rdist(rng), theta = pdist(rng), phi = pdist(rng);
    LinearMap map = single_mode_bogoliubov(r, theta, phi);
    require(map.defect() <= 1e-12, "symplectic defect above 1e-12");
    BosonCovariance v =
        transform_covariance(map, BosonCovariance(Eigen::MatrixXd::Identity(2, 2), 1));
    Eigen::MatrixXd delta = relative_covariance(v.V, Eigen::MatrixXd::Identity(2, 2));

    double sh = std::sinh(r);
    double bound = fock_bound(delta, Statistics::boson);
    worst = std::max(worst, std::abs(bound - sh * sh) / std::max(1.0, sh * sh));

    Eigen::VectorXcd eigs = covariance_spectrum(delta);
    double hi = std::max(eigs(0).real(), eigs(1).real());
    double lo = std::min(eigs(0).real(), eigs(1).real());
    worst = std::max(worst, std::abs(hi - std::exp(2 * r)) / std::exp(2 * r));
    worst = std::max(worst, std::abs(lo - std::exp(-2 * r)) / std::exp(-2 * r));
    worst = std::max(worst, std::abs(eigs(0).imag()) + std::abs(eigs(1).imag()));

    double via_spectrum = bound_from_spectrum(eigs, Statistics::boson);
    worst = std::max(worst, std::abs(via_spectrum - bound) / std::max(1.0, bound));
  }
  require(worst <= 1e-10, "single-mode covariance identities off by " + sci(worst));
  return "20 random (r, theta, phi): bound = sinh^2 r and spectrum = e^{+-2r} within " + sci(worst);
}

std::string check_tfd() {
  double worst = 0;
  for (double alpha : {0.25, 1.0, 3.0}) {
    TfdParams p{1.0, 1.0, alpha, 1.0, 0.0};
    TfdBounds b = tfd_bounds(p);
    double sh2 = std::sinh(alpha) * std::sinh(alpha);
    worst = std::max(worst, std::abs(b.C_max - sh2) / std::max(1.0, sh2));
    worst = std::max(worst, std::abs(b.C_sigma - 2 * sh2) / std::max(1.0, 2 * sh2));
    worst = std::max(worst, std::abs(b.dC_plus - sh2) / std::max(1.0, sh2));
    worst = std::max(worst, std::abs(b.dC_minus - sh2) / std::max(1.0, sh2));
  }
  require(worst <= 1e-12, "equal-frequency TFD identities off by " + sci(worst));

  // equal frequency ratios: the evolved bound must not move in time
  TfdParams p{2.0, 2.0, 1.0, 1.0, 0.0};
  double base = tfd_bounds_time_evolved(p).C_plus;
  double dev = 0;
  for (int j = 0; j <= 100; ++j) {
    p.t = 2.0 * kPi * double(j) / 100.0;
    TfdBounds b = tfd_bounds_time_evolved(p);
    dev = std::max(dev, std::abs(b.C_plus - base));
    dev = std::max(dev, std::abs(b.C_sigma - 2 * base));
  }
  require(dev <= 1e-10, "time-evolved bound drifted by " + sci(dev) + " at lambda = lambda_R");
  return "C_max = sinh^2, C_sigma = 2 sinh^2, formation = sinh^2 (" + sci(worst) +
         "); evolved bound constant to " + sci(dev);
}

std::string check_fermion_pair() {
  double worst_bound = 0;
  double peak = -1, peak_theta = -1;
  for (int j = 0; j <= 180; ++j) {
    double theta = kPi * double(j) / 180.0;
    FermionPairResult fp = fermion_pair(theta, 0.37);
    double want = std::sin(theta) * std::sin(theta);
    worst_bound = std::max(worst_bound, std::abs(fp.bound_per_fermion - want));
    if (fp.bound_per_fermion > peak) {
      peak = fp.bound_per_fermion;
      peak_theta = theta;
    }
  }
  require(worst_bound <= 1e-12, "fermion bound deviates from sin^2 theta by " + sci(worst_bound));
  require(std::abs(peak_theta - kPi / 2) < 1e-12 && std::abs(peak - 1.0) <= 1e-12,
          "fermion bound does not peak at theta = pi/2");

  std::mt19937 rng(0xfe55a);
  std::uniform_real_distribution<double> pdist(0.0, 2.0 * kPi);
  double worst_eig = 0, worst_phi = 0;
  for (int k = 0; k < 20; ++k) {
    double theta = 0.3 + 0.1 * k;
    double phi = pdist(rng);
    FermionPairResult fp = fermion_pair(theta, phi);
    FermionPairResult fp0 = fermion_pair(theta, 0.0);
    worst_phi = std::max(worst_phi, std::abs(fp.bound_per_fermion - fp0.bound_per_fermion));
    require(fp.map.defect() <= 1e-10, "orthogonality defect above 1e-10");

    // spectrum must be e^{+2i theta} twice and e^{-2i theta} twice
    std::vector<std::complex<double>> eigs(fp.spectrum.data(),
                                           fp.spectrum.data() + fp.spectrum.size());
    std::sort(eigs.begin(), eigs.end(),
              [](auto a, auto b) { return a.imag() < b.imag(); });
    std::complex<double> lo = std::polar(1.0, -2.0 * theta);
    std::complex<double> hi = std::polar(1.0, 2.0 * theta);
    if (lo.imag() > hi.imag()) std::swap(lo, hi);
    worst_eig = std::max({worst_eig, std::abs(eigs[0] - lo), std::abs(eigs[1] - lo),
                          std::abs(eigs[2] - hi), std::abs(eigs[3] - hi)});
  }
  require(worst_phi <= 1e-12, "fermion bound depends on phi by " + sci(worst_phi));
  require(worst_eig <= 1e-10, "fermion spectrum deviates from e^{+-2i theta} by " + sci(worst_eig));
  return "sin^2 sweep within " + sci(worst_bound) + ", spectrum within " + sci(worst_eig) +
         ", phi-independent within " + sci(worst_phi);
}

std::string check_dirac() {
  double c = dirac_mode({1e6, 1.0, 1.0}, DiracKind::ground);
  require(std::abs(c - 0.5) <= 1e-5, "ground complexity at p/m = 1e6 is " + sci(c));

  double worst_sum = 0;
  for (double m : {0.5, 1.0, 2.0})
    for (int j = 0; j <= 50; ++j) {
      double p = 0.2 * j;
      double g = dirac_mode({p, m, 1.0}, DiracKind::ground);
      double e = dirac_mode({p, m, 1.0}, DiracKind::excited);
      worst_sum = std::max(worst_sum, std::abs(g + e - 1.0));
    }
  require(worst_sum <= 1e-15, "excited + ground deviates from 1 by " + sci(worst_sum));

  DiracModeParams massless{0.0, 0.0, 10.0};
  double summed = dirac_summed(massless, DiracKind::ground, 256);
  double analytic = std::pow(10.0, 3) / (6.0 * kPi * kPi);
  double rel = std::abs(summed - analytic) / analytic;
  require(rel <= 1e-8, "massless summed integral off by relative " + sci(rel));
  return "limit 1/2 within 1e-05; ground + excited = 1; cutoff integral within " + sci(rel);
}

std::string check_catalan() {
  const std::uint64_t want[] = {1, 2, 5, 14, 42, 132};
  for (int k = 0; k < 6; ++k) {
    int n = 2 * (k + 1);
    std::uint64_t got = contributing_path_count(n, 16);
    require(got == want[k], "path count at order " + std::to_string(n) + " is " +
                                std::to_string(got) + ", expected " + std::to_string(want[k]));
  }
  return "path counts for n = 2..12 equal 1, 2, 5, 14, 42, 132";
}

}  // namespace

std::vector<CheckResult> run_acceptance(const SelfCheckOptions& opts) {
  Battery ctx;
  ctx.opts = opts;

  ctx.run("coherent closed form", false, [&] { return check_coherent_closed_form(ctx); });
  ctx.run("squeezed closed form", false, [&] { return check_squeezed_closed_form(ctx); });
  ctx.run("two-mode exact moment pipeline", true, [] { return check_two_mode_exact_moments(); });
  ctx.run("squeezed exact moments", true, [] { return check_squeezed_exact_moments(); });
  ctx.run("route agreement", false, [&] { return check_route_agreement(opts); });
  ctx.run("bound chain", false, [&] { return check_bound_chain(ctx); });
  ctx.run("displaced-squeezed partial bound", false, [] { return check_displaced_partial_bound(); });
  ctx.run("single-mode boson covariance", false, [] { return check_single_mode_covariance(); });
  ctx.run("thermofield double bounds", false, [] { return check_tfd(); });
  ctx.run("fermion pair bounds", false, [] { return check_fermion_pair(); });
  ctx.run("dirac modes", false, [] { return check_dirac(); });
  ctx.run("catalan path diagnostic", false, [] { return check_catalan(); });

  return ctx.results;
}

std::string format_report(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  int idx = 0, failures = 0;
  for (const CheckResult& r : results) {
    ++idx;
    const char* tag = r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
    if (!r.pass) ++failures;
    os << "[" << (idx < 10 ? " " : "") << idx << "/" << results.size() << "] " << tag << "  "
       << r.name << ": " << r.detail << "\n";
  }
  os << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria FAILED")
     << "\n";
  return os.str();
}

}  // namespace kgx
