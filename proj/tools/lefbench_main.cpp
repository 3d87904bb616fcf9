// lefbench <command> <config> [--out report.txt] [--svg dir] [--resolution N]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lefbench/lefbench.h"

int main(int argc, char** argv) {
  CLI::App app{"Lefschetz fibration workbench"};
  std::string command, config, out, svg;
  int resolution = 0;
  app.add_option("command", command, "validate | homology | floer-ranks | hw | render | all")
      ->required()
      ->check(CLI::IsMember({"validate", "homology", "floer-ranks", "hw", "render", "all"}));
  app.add_option("config", config, "scenario file")->required();
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--svg", svg, "directory for SVG drawings");
  app.add_option("--resolution", resolution, "override every disc resolution")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  lefbench_scenario* scenario = nullptr;
  lefbench_status status = lefbench_scenario_load(config.c_str(), resolution, &scenario);
  if (status != LEFBENCH_OK) {
    std::cerr << "error: " << lefbench_last_error() << "\n";
    return lefbench_exit_code(status);
  }

  char* report = nullptr;
  int exit_code = 0;
  status = lefbench_run(scenario, command.c_str(), svg.empty() ? nullptr : svg.c_str(), &report, &exit_code);
  lefbench_scenario_free(scenario);
  if (status != LEFBENCH_OK) {
    std::cerr << "error: " << lefbench_last_error() << "\n";
    return lefbench_exit_code(status);
  }

  if (out.empty()) {
    std::cout << report;
  } else {
    std::ofstream file(out);
    if (!file) {
      std::cerr << "error: cannot write " << out << "\n";
      lefbench_string_free(report);
      return 1;
    }
    file << report;
  }
  lefbench_string_free(report);
  return exit_code;
}
