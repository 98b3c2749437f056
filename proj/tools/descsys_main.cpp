#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "descsys/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of singular discrete-time descriptor systems F x+ = G x + B v"};
  app.require_subcommand(1);

  bool verbose = false;
  std::string output;
  std::string path;
  app.add_flag("-v,--verbose", verbose, "Print a human-readable summary to stderr");
  app.add_option("-o,--output", output, "Write the JSON report to this file instead of stdout");

  const std::pair<const char*, const char*> commands[] = {
      {"check", "Test regularity of the pencil sF - G"},
      {"decompose", "Quasi-Weierstrass decomposition (P, Q, A_p, N, B_p, B_q)"},
      {"simulate", "Solve the two-point boundary problem on 0..M"},
      {"reach", "Reachable set from zero; witness inputs for an optional target"},
      {"control", "Controllability rank test"},
      {"synthesize", "Inputs driving the state to the target at k1"},
      {"initreach", "Initial reachable set for a fixed terminal fast state"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", path, "System file (JSON)")->required();
    sub->add_flag("-v,--verbose", verbose, "Print a human-readable summary to stderr");
    sub->add_option("-o,--output", output, "Write the JSON report to this file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : descsys::cli::kParse;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const descsys::cli::Outcome outcome = descsys::cli::run_command(command, path);

  const std::string text = outcome.report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return descsys::cli::kParse;
    }
    out << text;
  }
  if (verbose || outcome.exit_code != descsys::cli::kOk) std::cerr << outcome.summary << "\n";
  return outcome.exit_code;
}
