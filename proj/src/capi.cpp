#include "lefbench/lefbench.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "lefbench/rank_calculus.hpp"
#include "lefbench/scenario.hpp"
#include "lefbench/workbench.hpp"

struct lefbench_scenario {
  lefbench::scenario::Model model;
};

namespace {

thread_local std::string last_error;

lefbench_status status_of(lefbench::ErrorCode code) {
  return static_cast<lefbench_status>(static_cast<int>(code) + 1);
}

char* copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
lefbench_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return LEFBENCH_OK;
  } catch (const lefbench::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = std::string("Internal: ") + e.what();
    return LEFBENCH_INTERNAL;
  }
}

std::optional<int> resolution_of(int r) { return r > 0 ? std::optional<int>(r) : std::nullopt; }

}  // namespace

extern "C" {

const char* lefbench_version(void) { return "0.1.0"; }

const char* lefbench_last_error(void) { return last_error.c_str(); }

int lefbench_exit_code(lefbench_status status) {
  if (status == LEFBENCH_OK) return 0;
  return lefbench::workbench::exit_code_for(static_cast<lefbench::ErrorCode>(static_cast<int>(status) - 1));
}

lefbench_status lefbench_scenario_load(const char* path, int resolution, lefbench_scenario** out) {
  return guarded([&] {
    if (!path || !out) lefbench::fail(lefbench::ErrorCode::InvalidInput, "null argument");
    auto config = lefbench::scenario::load(path);
    *out = new lefbench_scenario{lefbench::scenario::build(config, path, resolution_of(resolution))};
  });
}

lefbench_status lefbench_scenario_parse(const char* text, const char* origin, int resolution,
                                        lefbench_scenario** out) {
  return guarded([&] {
    if (!text || !out) lefbench::fail(lefbench::ErrorCode::InvalidInput, "null argument");
    std::string name = origin ? origin : "<config>";
    auto config = lefbench::scenario::parse(text, name);
    *out = new lefbench_scenario{lefbench::scenario::build(config, name, resolution_of(resolution))};
  });
}

void lefbench_scenario_free(lefbench_scenario* scenario) { delete scenario; }

lefbench_status lefbench_run(const lefbench_scenario* scenario, const char* command, const char* svg_dir,
                             char** report, int* exit_code) {
  return guarded([&] {
    if (!scenario || !command || !report || !exit_code)
      lefbench::fail(lefbench::ErrorCode::InvalidInput, "null argument");
    auto cmd = lefbench::workbench::parse_command(command);
    if (!cmd) lefbench::fail(lefbench::ErrorCode::InvalidInput, std::string("unknown command '") + command + "'");
    lefbench::workbench::Options options;
    if (svg_dir) options.svg_dir = svg_dir;
    auto outcome = lefbench::workbench::run(scenario->model, *cmd, options);
    *report = copy(outcome.report);
    *exit_code = outcome.exit_code;
  });
}

lefbench_status lefbench_scenario_emit(const lefbench_scenario* scenario, char** text) {
  return guarded([&] {
    if (!scenario || !text) lefbench::fail(lefbench::ErrorCode::InvalidInput, "null argument");
    *text = copy(lefbench::scenario::emit(scenario->model.config));
  });
}

void lefbench_string_free(char* s) { std::free(s); }

lefbench_status lefbench_triangle_rank(long k, long l, long f, unsigned long* out) {
  return guarded([&] {
    if (!out) lefbench::fail(lefbench::ErrorCode::InvalidInput, "null argument");
    *out = lefbench::rank::triangle_rank(k, l, f);
  });
}

lefbench_status lefbench_unit_fate(long rank_total, long rank_quotient, int* dies) {
  return guarded([&] {
    if (!dies) lefbench::fail(lefbench::ErrorCode::InvalidInput, "null argument");
    *dies = lefbench::rank::unit_fate(rank_total, rank_quotient) == lefbench::rank::Fate::Dies ? 1 : 0;
  });
}

}  // extern "C"
