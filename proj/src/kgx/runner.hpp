#pragma once

#include <map>
#include <optional>
#include <string>

#include "kgx/family.hpp"
#include "kgx/table.hpp"

namespace kgx {

enum class PrecisionMode { exact, float128, float256 };

PrecisionMode parse_precision(const std::string& text);

// One run of the tool: a command plus every knob it may need. Populated from
// key=value pairs (config file) and/or flags; flags win because they are
// applied last.
struct RunConfig {
  std::optional<StateFamily::Tag> family;

  // raw strength parameters; kept as strings until the family is built so
  // exact mode sees the literal the user typed
  std::map<std::string, std::string> values;

  double tmax = 1.0;
  int steps = 200;
  int dim = 0;  // 0: per-family default (256 single mode, 64 per mode for two)
  int order = 24;
  PrecisionMode precision = PrecisionMode::float128;
  std::string output;
  std::string format = "csv";
  std::string input;  // prior CSV for plot
  bool fast = false;  // verify

  void set(const std::string& key, const std::string& value);
  static RunConfig from_pairs(const std::map<std::string, std::string>& pairs);

  StateFamily build_family() const;
  double value_or(const std::string& key, double fallback) const;
  Rational rational_or(const std::string& key, const Rational& fallback) const;
};

std::map<std::string, std::string> load_key_value_file(const std::string& path);

struct MomentsRun {
  Table table;
  std::string warning;  // set when coefficient recovery stopped early
};

// complexity: t, C, C_F, tail_mass; all three routes are computed and must
// agree before the propagated one is emitted.
Table run_complexity(const RunConfig& cfg);

// bound: family-specific sweep of excitation bounds.
Table run_bound(const RunConfig& cfg);

// moments: n, mu_n, a_n, b_n, b_n_squared.
MomentsRun run_moments(const RunConfig& cfg);

// sweep: closed-form C and C_F against the family strength at fixed t.
Table run_sweep(const RunConfig& cfg);

// displaced-squeezed amplitude profiles (plot backing table).
Table run_profiles(const RunConfig& cfg);

// Inline table for `plot` when no prior CSV is given.
Table run_for_plot(const RunConfig& cfg);

Table run_command(const std::string& command, const RunConfig& cfg, std::string* warning);

// verify: acceptance report; returns the number of failed criteria.
int run_verify(const RunConfig& cfg, std::string* report);

}  // namespace kgx
