#include "krylov_gauss.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <map>
#include <string>

#include "kgx/errors.hpp"
#include "kgx/runner.hpp"
#include "kgx/table.hpp"

namespace {

thread_local std::string g_last_error = "no error";
thread_local std::string g_last_warning;

int set_error(const kgx::Error& e) {
  g_last_error = e.what();
  return static_cast<int>(e.kind());
}

int set_error(const std::exception& e) {
  g_last_error = e.what();
  return KG_ERR_NUMERIC;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return KG_OK;
  } catch (const kgx::Error& e) {
    return set_error(e);
  } catch (const std::exception& e) {
    return set_error(e);
  }
}

}  // namespace

struct kg_config {
  std::map<std::string, std::string> pairs;
};

struct kg_table {
  kgx::Table table;
};

extern "C" {

const char* kg_version(void) { return "1.0.0"; }

const char* kg_last_error(void) { return g_last_error.c_str(); }

const char* kg_last_warning(void) { return g_last_warning.c_str(); }

kg_config* kg_config_new(void) { return new kg_config(); }

void kg_config_free(kg_config* cfg) { delete cfg; }

int kg_config_set(kg_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) {
    g_last_error = "null argument";
    return KG_ERR_VALIDATION;
  }
  return guarded([&] {
    kgx::RunConfig probe = kgx::RunConfig::from_pairs(cfg->pairs);
    probe.set(key, value);  // validate before committing
    cfg->pairs[key] = value;
  });
}

int kg_config_load_file(kg_config* cfg, const char* path) {
  if (!cfg || !path) {
    g_last_error = "null argument";
    return KG_ERR_VALIDATION;
  }
  return guarded([&] {
    auto pairs = kgx::load_key_value_file(path);
    kgx::RunConfig probe = kgx::RunConfig::from_pairs(cfg->pairs);
    for (const auto& [k, v] : pairs) probe.set(k, v);
    // file values must not override settings applied explicitly before
    for (const auto& [k, v] : pairs)
      if (!cfg->pairs.count(k)) cfg->pairs[k] = v;
  });
}

int kg_run(kg_config* cfg, const char* command, kg_table** out) {
  if (!cfg || !command || !out) {
    g_last_error = "null argument";
    return KG_ERR_VALIDATION;
  }
  *out = nullptr;
  return guarded([&] {
    kgx::RunConfig rc = kgx::RunConfig::from_pairs(cfg->pairs);
    std::string warning;
    kgx::Table t = kgx::run_command(command, rc, &warning);
    g_last_warning = warning;
    *out = new kg_table{std::move(t)};
  });
}

int kg_verify(kg_config* cfg, int fast, char** report, int* failures) {
  if (!cfg || !failures) {
    g_last_error = "null argument";
    return KG_ERR_VALIDATION;
  }
  return guarded([&] {
    kgx::RunConfig rc = kgx::RunConfig::from_pairs(cfg->pairs);
    rc.fast = fast != 0 || rc.fast;
    std::string text;
    *failures = kgx::run_verify(rc, &text);
    if (report) {
      *report = static_cast<char*>(std::malloc(text.size() + 1));
      if (*report) std::memcpy(*report, text.c_str(), text.size() + 1);
    }
  });
}

void kg_string_free(char* text) { std::free(text); }

size_t kg_table_rows(const kg_table* t) { return t ? t->table.rows() : 0; }

size_t kg_table_cols(const kg_table* t) { return t ? t->table.cols() : 0; }

const char* kg_table_column_name(const kg_table* t, size_t col) {
  if (!t || col >= t->table.cols()) return nullptr;
  return t->table.column_name(col).c_str();
}

const char* kg_table_cell(const kg_table* t, size_t row, size_t col) {
  if (!t || row >= t->table.rows() || col >= t->table.cols()) return nullptr;
  return t->table.cell(row, col).text.c_str();
}

double kg_table_value(const kg_table* t, size_t row, size_t col) {
  if (!t || row >= t->table.rows() || col >= t->table.cols())
    return std::numeric_limits<double>::quiet_NaN();
  return t->table.cell(row, col).value;
}

int kg_table_write_csv(const kg_table* t, const char* path) {
  if (!t || !path) {
    g_last_error = "null argument";
    return KG_ERR_VALIDATION;
  }
  return guarded([&] { t->table.write_csv_file(path); });
}

int kg_table_write_svg(const kg_table* t, const char* path) {
  if (!t || !path) {
    g_last_error = "null argument";
    return KG_ERR_VALIDATION;
  }
  return guarded([&] { t->table.write_svg_file(path); });
}

int kg_table_read_csv(const char* path, kg_table** out) {
  if (!path || !out) {
    g_last_error = "null argument";
    return KG_ERR_VALIDATION;
  }
  *out = nullptr;
  return guarded([&] { *out = new kg_table{kgx::Table::read_csv_file(path)}; });
}

void kg_table_free(kg_table* t) { delete t; }

}  // extern "C"
