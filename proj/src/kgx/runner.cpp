#include "kgx/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kgx/evolve.hpp"
#include "kgx/gaussian.hpp"
#include "kgx/hilbert.hpp"
#include "kgx/lanczos.hpp"
#include "kgx/moments.hpp"
#include "kgx/selfcheck.hpp"

namespace kgx {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRouteTol = 1e-6;      // relative, where C >= kRouteFloor
constexpr double kRouteFloor = 1e-3;
constexpr double kTailTol = 1e-8;

StateFamily::Tag parse_family(const std::string& name) {
  if (name == "coherent") return StateFamily::Tag::coherent;
  if (name == "squeezed") return StateFamily::Tag::squeezed;
  if (name == "displaced_squeezed" || name == "displaced-squeezed")
    return StateFamily::Tag::displaced_squeezed;
  if (name == "two_mode" || name == "two-mode") return StateFamily::Tag::two_mode;
  if (name == "single_mode" || name == "single-mode") return StateFamily::Tag::single_mode;
  if (name == "tfd") return StateFamily::Tag::tfd;
  if (name == "fermion_pair" || name == "fermion-pair") return StateFamily::Tag::fermion_pair;
  if (name == "dirac") return StateFamily::Tag::dirac;
  throw_validation("unknown family '" + name + "'");
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw_validation("value for '" + key + "' is not an integer: '" + value + "'");
  }
}

double parse_float(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw_validation("value for '" + key + "' is not a finite number: '" + value + "'");
  }
}

}  // namespace

PrecisionMode parse_precision(const std::string& text) {
  if (text == "exact") return PrecisionMode::exact;
  if (text == "float" || text == "float:128") return PrecisionMode::float128;
  if (text == "float:256") return PrecisionMode::float256;
  if (text.rfind("float:", 0) == 0) {
    int bits = parse_int("precision", text.substr(6));
    if (bits <= 128) return PrecisionMode::float128;
    if (bits <= 256) return PrecisionMode::float256;
    throw_validation("float precision beyond 256 mantissa bits is not built in; use exact");
  }
  throw_validation("precision must be 'exact' or 'float:BITS'");
}

void RunConfig::set(const std::string& key, const std::string& value) {
  static const std::map<std::string, int> kNumeric = {
      {"alpha", 0}, {"eta", 0},  {"r", 0},     {"theta", 0},  {"phi", 0},   {"lambda", 0},
      {"lambda_r", 0}, {"omega", 0}, {"p", 0}, {"mass", 0},   {"cutoff", 0}};
  if (key == "family") {
    family = parse_family(value);
  } else if (kNumeric.count(key)) {
    parse_float(key, value);  // reject garbage early; exact literal kept
    values[key] = value;
  } else if (key == "kind") {
    if (value != "ground" && value != "excited")
      throw_validation("kind must be 'ground' or 'excited'");
    values[key] = value;
  } else if (key == "tmax") {
    tmax = parse_float(key, value);
    if (!(tmax > 0)) throw_validation("tmax must be positive");
  } else if (key == "steps") {
    steps = parse_int(key, value);
    if (steps < 2) throw_validation("steps must be at least 2");
  } else if (key == "dim") {
    dim = parse_int(key, value);
    if (dim < 2) throw_validation("dim must be at least 2");
  } else if (key == "order") {
    order = parse_int(key, value);
    if (order < 2) throw_validation("order must be at least 2");
  } else if (key == "precision") {
    precision = parse_precision(value);
  } else if (key == "output") {
    output = value;
  } else if (key == "format") {
    if (value != "csv" && value != "svg") throw_validation("format must be csv or svg");
    format = value;
  } else if (key == "input") {
    input = value;
  } else if (key == "fast") {
    fast = (value == "1" || value == "true" || value == "yes");
  } else {
    throw_validation("unknown configuration key '" + key + "'");
  }
}

RunConfig RunConfig::from_pairs(const std::map<std::string, std::string>& pairs) {
  RunConfig cfg;
  for (const auto& [k, v] : pairs) cfg.set(k, v);
  return cfg;
}

double RunConfig::value_or(const std::string& key, double fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  return parse_float(key, it->second);
}

Rational RunConfig::rational_or(const std::string& key, const Rational& fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  return rational_from_string(it->second);
}

StateFamily RunConfig::build_family() const {
  if (!family) throw_validation("no family selected; pass --family");
  StateFamily f;
  f.tag = *family;
  f.alpha = rational_or("alpha", Rational(0));
  f.eta = rational_or("eta", Rational(0));
  f.r = rational_or("r", Rational(0));
  f.lambda = rational_or("lambda", Rational(1));
  f.lambda_ref = rational_or("lambda_r", Rational(1));
  f.theta = value_or("theta", 0.0);
  f.phi = value_or("phi", 0.0);
  f.omega = value_or("omega", 0.0);
  f.p = value_or("p", 0.0);
  f.mass = value_or("mass", 0.0);
  f.cutoff = value_or("cutoff", 0.0);
  if (auto it = values.find("kind"); it != values.end())
    f.kind = it->second == "excited" ? StateFamily::DiracKind::excited
                                     : StateFamily::DiracKind::ground;
  return f;
}

std::map<std::string, std::string> load_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open config file '" + path + "'");
  std::map<std::string, std::string> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto strip = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string stripped = strip(line);
    if (stripped.empty()) continue;
    auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw_validation(path + ":" + std::to_string(lineno) + ": expected key=value");
    pairs[strip(stripped.substr(0, eq))] = strip(stripped.substr(eq + 1));
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// complexity
// ---------------------------------------------------------------------------

namespace {

struct MomentsRoute {
  TridiagonalData chain;
  bool degraded_skipped = false;
};

template <class F>
MomentsRoute moments_route(const StateFamily& family, int order) {
  Jet<F> jet = survival_jet<F>(family, order);
  MomentSequence<F> mu = moments_from_jet(jet);
  RecoveredChain<F> rec = lanczos_from_moments(mu, order / 2);
  return {rec.chain(), false};
}

MomentsRoute moments_route_dispatch(const StateFamily& family, int order, PrecisionMode mode) {
  switch (mode) {
    case PrecisionMode::exact: return moments_route<Rational>(family, order);
    case PrecisionMode::float128: return moments_route<Tracked<128>>(family, order);
    case PrecisionMode::float256: return moments_route<Tracked<256>>(family, order);
  }
  throw_validation("bad precision mode");
}

void check_route_agreement(const char* what, const std::vector<double>& got,
                           const std::vector<double>& want, const std::vector<double>& t,
                           const std::vector<bool>* mask = nullptr) {
  for (std::size_t j = 0; j < got.size(); ++j) {
    if (mask && !(*mask)[j]) continue;
    if (want[j] < kRouteFloor) continue;
    double rel = std::abs(got[j] - want[j]) / want[j];
    if (rel > kRouteTol)
      throw_numeric(std::string("route mismatch: ") + what + " differs by relative " +
                    std::to_string(rel) + " at t = " + std::to_string(t[j]));
  }
}

int default_dim(const StateFamily& family, int requested) {
  if (requested > 0) return requested;
  return family.tag == StateFamily::Tag::two_mode ? 64 : 256;
}

}  // namespace

Table run_complexity(const RunConfig& cfg) {
  StateFamily family = cfg.build_family();
  if (family.tag != StateFamily::Tag::coherent && family.tag != StateFamily::Tag::squeezed &&
      family.tag != StateFamily::Tag::two_mode)
    throw_validation("complexity supports the coherent, squeezed and two_mode families");

  const int dim = default_dim(family, cfg.dim);
  const std::vector<double> grid = linear_grid(0.0, cfg.tmax, cfg.steps);

  // Route 1: Lanczos iteration on the truncated Fock space, then chain
  // propagation. This is the curve that gets emitted.
  FockSpace space(family.tag == StateFamily::Tag::two_mode ? 2 : 1, dim);
  OperatorMatrix H = build_hamiltonian(family, space);
  LanczosResult lan = lanczos_iterate(H, vacuum(space), dim);
  AmplitudeSeries amps =
      propagate(lan.tri, grid, static_cast<int>(lan.tri.length()), {kTailTol, true});
  std::vector<double> C = spread_complexity(amps);

  // Route 3: closed form on the same grid.
  ClosedForm cf = closed_form(family, grid);
  check_route_agreement("Lanczos route vs closed form", C, cf.C, grid);

  // Route 2: moments of the survival amplitude -> coefficients -> chain. Its
  // short chain is only valid while the tail stays inside tolerance, so the
  // comparison is masked accordingly.
  MomentsRoute mr = moments_route_dispatch(family, cfg.order, cfg.precision);
  AmplitudeSeries m_amps =
      propagate(mr.chain, grid, static_cast<int>(mr.chain.length()), {kTailTol, false});
  std::vector<double> m_C = spread_complexity(m_amps);
  std::vector<bool> mask(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) mask[j] = m_amps.tail_mass[j] <= kTailTol;
  check_route_agreement("moments route vs closed form", m_C, cf.C, grid, &mask);

  Table t({"t", "C", "C_F", "tail_mass"});
  for (std::size_t j = 0; j < grid.size(); ++j)
    t.add_row({cell_number(grid[j]), cell_number(C[j]),
               cell_number(family_fock_bound(family, grid[j])),
               cell_number(amps.tail_mass[j])});
  t.require_increasing_first_column();
  return t;
}

// ---------------------------------------------------------------------------
// bound
// ---------------------------------------------------------------------------

namespace {

Table bound_single_mode(const RunConfig& cfg, const StateFamily& family) {
  double r_max = family.r.convert_to<double>();
  if (!(r_max > 0)) r_max = 3.0;
  Table t({"r", "C_F", "eig_plus", "eig_minus"});
  for (int j = 0; j < cfg.steps; ++j) {
    double r = r_max * double(j + 1) / double(cfg.steps);
    LinearMap map = single_mode_bogoliubov(r, family.theta, family.phi);
    BosonCovariance v =
        transform_covariance(map, BosonCovariance(Eigen::MatrixXd::Identity(2, 2), 1));
    Eigen::MatrixXd delta = relative_covariance(v.V, Eigen::MatrixXd::Identity(2, 2));
    Eigen::VectorXcd eigs = covariance_spectrum(delta);
    double hi = std::max(eigs(0).real(), eigs(1).real());
    double lo = std::min(eigs(0).real(), eigs(1).real());
    t.add_row({cell_number(r), cell_number(fock_bound(delta, Statistics::boson)),
               cell_number(hi), cell_number(lo)});
  }
  t.require_increasing_first_column();
  return t;
}

Table bound_tfd(const RunConfig& cfg, const StateFamily& family) {
  TfdParams p;
  p.lambda = family.lambda.convert_to<double>();
  p.lambda_ref = family.lambda_ref.convert_to<double>();
  p.omega = family.omega;

  double alpha_max = family.alpha.convert_to<double>();
  if (!(alpha_max > 0)) alpha_max = 3.0;

  if (family.omega > 0) {
    // time sweep of the evolved bound at fixed alpha
    p.alpha = alpha_max;
    Table t({"t", "C_plus", "C_minus", "C_max", "C_sigma"});
    std::vector<double> grid = linear_grid(0.0, cfg.tmax, cfg.steps);
    for (double time : grid) {
      p.t = time;
      TfdBounds b = tfd_bounds_time_evolved(p);
      t.add_row({cell_number(time), cell_number(b.C_plus), cell_number(b.C_minus),
                 cell_number(b.C_max), cell_number(b.C_sigma)});
    }
    t.require_increasing_first_column();
    return t;
  }

  Table t({"alpha", "C_plus", "C_minus", "C_max", "C_sigma", "formation_plus",
           "formation_minus", "formation_sigma", "geom_plus", "geom_minus", "geom_total"});
  for (int j = 0; j < cfg.steps; ++j) {
    p.alpha = alpha_max * double(j) / double(cfg.steps - 1);
    TfdBounds b = tfd_bounds(p);
    GeometricComplexity g = geometric_complexity(p.lambda, p.alpha);
    t.add_row({cell_number(p.alpha), cell_number(b.C_plus), cell_number(b.C_minus),
               cell_number(b.C_max), cell_number(b.C_sigma), cell_number(b.dC_plus),
               cell_number(b.dC_minus), cell_number(b.dC_sigma), cell_number(g.plus),
               cell_number(g.minus), cell_number(g.total)});
  }
  t.require_increasing_first_column();
  return t;
}

Table bound_fermion(const RunConfig& cfg, const StateFamily& family) {
  double theta_max = family.theta > 0 ? family.theta : kPi;
  Table t({"theta", "bound_per_fermion", "bound_summed", "geodesic"});
  for (int j = 0; j < cfg.steps; ++j) {
    double th = theta_max * double(j) / double(cfg.steps - 1);
    FermionPairResult fp = fermion_pair(th, family.phi);
    t.add_row({cell_number(th), cell_number(fp.bound_per_fermion),
               cell_number(fp.bound_summed), cell_number(fermion_geodesic(th))});
  }
  t.require_increasing_first_column();
  return t;
}

Table bound_dirac(const RunConfig& cfg, const StateFamily& family) {
  double p_max = family.cutoff > 0 ? family.cutoff : (family.p > 0 ? family.p : 10.0);
  DiracKind kind = family.kind == StateFamily::DiracKind::excited ? DiracKind::excited
                                                                  : DiracKind::ground;
  // the massless mode is undefined exactly at p = 0; start one step in
  const int start = family.mass == 0 ? 1 : 0;
  Table t({"p", "complexity_per_spin", "summed_per_volume"});
  for (int j = 0; j < cfg.steps; ++j) {
    double p = p_max * double(j + start) / double(cfg.steps - 1 + start);
    DiracModeParams mode{p, family.mass, p > 0 ? p : 1.0};
    double per_spin = dirac_mode(mode, kind);
    double summed = p > 0 ? dirac_summed(mode, kind, 256) : 0.0;
    t.add_row({cell_number(p), cell_number(per_spin), cell_number(summed)});
  }
  t.require_increasing_first_column();
  return t;
}

}  // namespace

Table run_bound(const RunConfig& cfg) {
  StateFamily family = cfg.build_family();
  switch (family.tag) {
    case StateFamily::Tag::single_mode: return bound_single_mode(cfg, family);
    case StateFamily::Tag::tfd: return bound_tfd(cfg, family);
    case StateFamily::Tag::fermion_pair: return bound_fermion(cfg, family);
    case StateFamily::Tag::dirac: return bound_dirac(cfg, family);
    default:
      throw_validation(
          "bound supports the single_mode, tfd, fermion_pair and dirac families");
  }
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

namespace {

template <class F>
MomentsRun moments_table(const StateFamily& family, int order) {
  using T = ScalarTraits<F>;
  Jet<F> jet = survival_jet<F>(family, order);
  MomentSequence<F> mu = moments_from_jet(jet);

  int count = order / 2;
  std::string warning;
  if (mu.convention_violation) {
    // Coefficients are recoverable only below the first violating moment;
    // a[1] would come out imaginary beyond it.
    count = std::min(count, (*mu.convention_violation - 1) / 2);
    warning = "moment " + std::to_string(*mu.convention_violation) +
              " violates the Hermitian parity convention; emitting coefficients only "
              "through level " +
              std::to_string(count);
  }

  RecoveredChain<F> rec;
  if (count >= 1) rec = lanczos_from_moments(mu, count);

  Table t({"n", "mu_n", "a_n", "b_n", "b_n_squared"});
  for (int n = 0; n <= order; ++n) {
    std::vector<Cell> row;
    row.push_back(cell_exact(Rational(n)));
    // moments of these families are real; parity decides which component is
    // populated and the convention marker records any violation
    const auto& m = mu.mu[static_cast<std::size_t>(n)];
    if constexpr (T::is_exact) {
      row.push_back(cell_exact(m.re));
    } else {
      row.push_back(cell_number(T::to_double(m.re)));
    }
    if (n < static_cast<int>(rec.a.size())) {
      if constexpr (T::is_exact)
        row.push_back(cell_exact(rec.a[static_cast<std::size_t>(n)]));
      else
        row.push_back(cell_number(T::to_double(rec.a[static_cast<std::size_t>(n)])));
    } else {
      row.push_back(cell_empty());
    }
    if (n >= 1 && n < static_cast<int>(rec.b2.size())) {
      row.push_back(cell_number(rec.b[static_cast<std::size_t>(n)]));
      if constexpr (T::is_exact)
        row.push_back(cell_exact(rec.b2[static_cast<std::size_t>(n)]));
      else
        row.push_back(cell_number(T::to_double(rec.b2[static_cast<std::size_t>(n)])));
    } else {
      row.push_back(cell_empty());
      row.push_back(cell_empty());
    }
    t.add_row(std::move(row));
  }
  t.require_increasing_first_column();
  return {std::move(t), std::move(warning)};
}

}  // namespace

MomentsRun run_moments(const RunConfig& cfg) {
  StateFamily family = cfg.build_family();
  int max_order = cfg.precision == PrecisionMode::exact ? 128 : 64;
  if (cfg.order > max_order)
    throw_validation("order " + std::to_string(cfg.order) + " exceeds the maximum " +
                     std::to_string(max_order) + " for this precision mode");
  switch (cfg.precision) {
    case PrecisionMode::exact: return moments_table<Rational>(family, cfg.order);
    case PrecisionMode::float128: return moments_table<Tracked<128>>(family, cfg.order);
    case PrecisionMode::float256: return moments_table<Tracked<256>>(family, cfg.order);
  }
  throw_validation("bad precision mode");
}

// ---------------------------------------------------------------------------
// sweep / profiles / plot
// ---------------------------------------------------------------------------

Table run_sweep(const RunConfig& cfg) {
  StateFamily family = cfg.build_family();
  const char* param_name = nullptr;
  double param_max = 0;
  switch (family.tag) {
    case StateFamily::Tag::coherent:
      param_name = "alpha";
      param_max = family.alpha.convert_to<double>();
      break;
    case StateFamily::Tag::squeezed:
      param_name = "eta";
      param_max = family.eta.convert_to<double>();
      break;
    case StateFamily::Tag::two_mode:
      param_name = "r";
      param_max = family.r.convert_to<double>();
      break;
    default:
      throw_validation("sweep supports the coherent, squeezed and two_mode families");
  }
  if (!(param_max > 0)) throw_validation("sweep needs a positive strength parameter");

  const Rational param_rat = rational_from_string(cfg.values.at(param_name));
  Table t({param_name, "C", "C_F"});
  for (int j = 0; j < cfg.steps; ++j) {
    StateFamily f = family;
    Rational rv = Rational(j + 1) * param_rat / Rational(cfg.steps);
    if (family.tag == StateFamily::Tag::coherent) f.alpha = rv;
    if (family.tag == StateFamily::Tag::squeezed) f.eta = rv;
    if (family.tag == StateFamily::Tag::two_mode) f.r = rv;
    ClosedForm cf = closed_form(f, {cfg.tmax});
    t.add_row({cell_number(rv.convert_to<double>()), cell_number(cf.C[0]),
               cell_number(cf.C_bound[0])});
  }
  t.require_increasing_first_column();
  return t;
}

Table run_profiles(const RunConfig& cfg) {
  StateFamily family = cfg.build_family();
  if (family.tag != StateFamily::Tag::displaced_squeezed)
    throw_validation("profiles are defined for the displaced_squeezed family");
  std::vector<double> grid = linear_grid(cfg.tmax / cfg.steps, cfg.tmax, cfg.steps);
  ClosedForm cf = closed_form(family, grid);
  Table t({"t", "psi0_sq", "psi1_sq", "psi2_sq", "C_K3", "C_F"});
  for (std::size_t j = 0; j < grid.size(); ++j)
    t.add_row({cell_number(grid[j]), cell_number(cf.psi0_sq[j]), cell_number(cf.psi1_sq[j]),
               cell_number(cf.psi2_sq[j]), cell_number(cf.C_K3[j]),
               cell_number(cf.C_bound[j])});
  t.require_increasing_first_column();
  return t;
}

Table run_for_plot(const RunConfig& cfg) {
  if (!cfg.input.empty()) return Table::read_csv_file(cfg.input);
  if (!cfg.family) throw_validation("plot needs --input CSV or a family to compute inline");
  switch (*cfg.family) {
    case StateFamily::Tag::coherent:
    case StateFamily::Tag::squeezed:
    case StateFamily::Tag::two_mode:
      return run_complexity(cfg);
    case StateFamily::Tag::displaced_squeezed:
      return run_profiles(cfg);
    default:
      return run_bound(cfg);
  }
}

Table run_command(const std::string& command, const RunConfig& cfg, std::string* warning) {
  if (warning) warning->clear();
  if (command == "complexity") return run_complexity(cfg);
  if (command == "bound") return run_bound(cfg);
  if (command == "moments") {
    MomentsRun mr = run_moments(cfg);
    if (warning) *warning = mr.warning;
    return std::move(mr.table);
  }
  if (command == "sweep") return run_sweep(cfg);
  if (command == "plot") return run_for_plot(cfg);
  throw_validation("unknown command '" + command + "'");
}

int run_verify(const RunConfig& cfg, std::string* report) {
  SelfCheckOptions opts;
  opts.fast = cfg.fast;
  std::vector<CheckResult> results = run_acceptance(opts);
  if (report) *report = format_report(results);
  int failures = 0;
  for (const CheckResult& r : results)
    if (!r.pass) ++failures;
  return failures;
}

}  // namespace kgx
