// krylov-gauss: command-line front end. Talks to the core exclusively through
// the C API in krylov_gauss.h; all numerics live behind the shared library.

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "krylov_gauss.h"

namespace {

const char* status_prefix(int status) {
  switch (status) {
    case KG_ERR_VALIDATION: return "KG_ERR_VALIDATION";
    case KG_ERR_NUMERIC: return "KG_ERR_NUMERIC";
    case KG_ERR_IO: return "KG_ERR_IO";
    default: return "KG_ERR";
  }
}

int fail(int status) {
  std::cerr << status_prefix(status) << ": " << kg_last_error() << "\n";
  return status ? status : 1;
}

struct Options {
  std::map<std::string, std::string> values;  // flag-provided key=value pairs
  std::string config_path;
  bool fast = false;
};

void add_common_options(CLI::App* cmd, Options& opt) {
  auto bind = [&opt, cmd](const std::string& flag, const std::string& key,
                          const std::string& help) {
    cmd->add_option_function<std::string>(
           flag, [&opt, key](const std::string& v) { opt.values[key] = v; }, help)
        ->expected(1);
  };
  bind("--family", "family",
       "state family: coherent | squeezed | displaced_squeezed | two_mode | "
       "single_mode | tfd | fermion_pair | dirac");
  bind("--alpha", "alpha", "displacement rate / TFD entangling parameter");
  bind("--eta", "eta", "squeezing rate");
  bind("--r", "r", "two-mode squeezing rate or single-mode squeeze value");
  bind("--theta", "theta", "Bogoliubov mixing angle (fermion sweeps: upper end)");
  bind("--phi", "phi", "Bogoliubov phase");
  bind("--lambda", "lambda", "target frequency ratio (TFD)");
  bind("--lambda-r", "lambda_r", "reference frequency ratio (TFD)");
  bind("--omega", "omega", "oscillator frequency; nonzero selects the TFD time sweep");
  bind("--p", "p", "momentum magnitude (dirac)");
  bind("--mass", "mass", "mass (dirac)");
  bind("--cutoff", "cutoff", "hard momentum cutoff (dirac sweeps)");
  bind("--kind", "kind", "dirac state: ground | excited");
  bind("--tmax", "tmax", "upper end of the time grid");
  bind("--steps", "steps", "number of grid points / sweep rows");
  bind("--dim", "dim", "Fock truncation per mode");
  bind("--order", "order", "survival-series order (moments pipeline)");
  bind("--precision", "precision", "exact | float:128 | float:256");
  bind("--output", "output", "output path (default: stdout)");
  bind("--format", "format", "csv | svg");
  cmd->add_option("--config", opt.config_path, "key=value file; flags override it");
}

int emit(kg_table* table, const Options& opt) {
  std::unique_ptr<kg_table, decltype(&kg_table_free)> guard(table, &kg_table_free);

  std::string format = "csv";
  if (auto it = opt.values.find("format"); it != opt.values.end()) format = it->second;
  std::string output;
  if (auto it = opt.values.find("output"); it != opt.values.end()) output = it->second;

  if (!output.empty()) {
    int rc = format == "svg" ? kg_table_write_svg(table, output.c_str())
                             : kg_table_write_csv(table, output.c_str());
    if (rc != KG_OK) return fail(rc);
    return 0;
  }

  if (format == "svg") {
    // SVG to stdout goes through a temp rendering into memory-backed file
    std::cerr << "KG_ERR_VALIDATION: svg output requires --output PATH\n";
    return KG_ERR_VALIDATION;
  }
  for (size_t c = 0; c < kg_table_cols(table); ++c)
    std::cout << (c ? "," : "") << kg_table_column_name(table, c);
  std::cout << "\n";
  for (size_t r = 0; r < kg_table_rows(table); ++r) {
    for (size_t c = 0; c < kg_table_cols(table); ++c)
      std::cout << (c ? "," : "") << kg_table_cell(table, r, c);
    std::cout << "\n";
  }
  return 0;
}

int run_table_command(const std::string& command, const Options& opt) {
  std::unique_ptr<kg_config, decltype(&kg_config_free)> cfg(kg_config_new(), &kg_config_free);
  if (!opt.config_path.empty()) {
    // flags were recorded first, so the file cannot override them
    for (const auto& [k, v] : opt.values)
      if (int rc = kg_config_set(cfg.get(), k.c_str(), v.c_str()); rc != KG_OK) return fail(rc);
    if (int rc = kg_config_load_file(cfg.get(), opt.config_path.c_str()); rc != KG_OK)
      return fail(rc);
  } else {
    for (const auto& [k, v] : opt.values)
      if (int rc = kg_config_set(cfg.get(), k.c_str(), v.c_str()); rc != KG_OK) return fail(rc);
  }

  kg_table* table = nullptr;
  if (int rc = kg_run(cfg.get(), command.c_str(), &table); rc != KG_OK) return fail(rc);
  if (const char* warn = kg_last_warning(); warn && *warn)
    std::cerr << "warning: " << warn << "\n";
  return emit(table, opt);
}

int run_verify_command(const Options& opt) {
  std::unique_ptr<kg_config, decltype(&kg_config_free)> cfg(kg_config_new(), &kg_config_free);
  for (const auto& [k, v] : opt.values)
    if (int rc = kg_config_set(cfg.get(), k.c_str(), v.c_str()); rc != KG_OK) return fail(rc);

  char* report = nullptr;
  int failures = 0;
  int rc = kg_verify(cfg.get(), opt.fast ? 1 : 0, &report, &failures);
  if (rc != KG_OK) return fail(rc);
  if (report) {
    std::cout << report;
    kg_string_free(report);
  }
  return failures == 0 ? 0 : KG_ERR_NUMERIC;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krylov spread complexity of Gaussian states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kg_version());

  Options opt;
  std::string plot_input;

  CLI::App* complexity = app.add_subcommand(
      "complexity", "time curve C(t) with its excitation bound (coherent, squeezed, two_mode)");
  CLI::App* bound =
      app.add_subcommand("bound", "covariance bounds (single_mode, tfd, fermion_pair, dirac)");
  CLI::App* moments =
      app.add_subcommand("moments", "survival-amplitude moments and Lanczos coefficients");
  CLI::App* sweep = app.add_subcommand("sweep", "closed-form C against the family strength");
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance battery");
  CLI::App* plot = app.add_subcommand("plot", "deterministic SVG from a CSV or inline run");

  for (CLI::App* cmd : {complexity, bound, moments, sweep, plot}) add_common_options(cmd, opt);
  plot->add_option("--input", plot_input, "prior CSV to plot instead of computing inline");
  verify->add_flag("--fast", opt.fast, "skip the exact-arithmetic checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "KG_ERR_VALIDATION: " << e.what() << "\n";
    return KG_ERR_VALIDATION;
  }

  if (!plot_input.empty()) opt.values["input"] = plot_input;

  if (app.got_subcommand(verify)) return run_verify_command(opt);
  for (CLI::App* cmd : {complexity, bound, moments, sweep})
    if (app.got_subcommand(cmd)) return run_table_command(cmd->get_name(), opt);
  if (app.got_subcommand(plot)) {
    if (opt.values.find("format") == opt.values.end()) opt.values["format"] = "svg";
    return run_table_command("plot", opt);
  }
  return 1;
}
