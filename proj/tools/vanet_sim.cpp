// Command-line entry point.
//
//   vanet_sim run --scenario <file> --out <logfile>
//   vanet_sim validate --scenario <file>
//   vanet_sim summarize --log <logfile>
//
// Exit codes: 0 success, 1 invalid input (bad arguments, scenario or log),
// 2 runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vanet/error.hpp"
#include "vanet/event_log.hpp"
#include "vanet/runner.hpp"
#include "vanet/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vanet::Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_validate(const std::string& scenario_path) {
  const auto scenario = vanet::load_scenario(scenario_path);
  const auto base = std::filesystem::path(scenario_path).parent_path();
  const auto registry = vanet::build_registry(scenario, base);
  std::cout << "ok: " << scenario.name << " (" << scenario.vehicles.size() << " vehicles, "
            << scenario.duration_ticks << " ticks, " << registry.size() << " responders)\n";
  return kOk;
}

int cmd_run(const std::string& scenario_path, const std::string& out_path) {
  const auto scenario = vanet::load_scenario(scenario_path);
  const auto base = std::filesystem::path(scenario_path).parent_path();
  const auto registry = vanet::build_registry(scenario, base);
  const auto log = vanet::run(scenario, registry);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw vanet::Error("cannot write '" + out_path + "'");
  out << vanet::format_event_log(log);
  if (!out.flush()) throw vanet::Error("write failed for '" + out_path + "'");
  std::cout << "wrote " << log.records.size() << " records to " << out_path << "\n";
  return kOk;
}

int cmd_summarize(const std::string& log_path) {
  const auto log = vanet::parse_event_log(read_file(log_path));
  std::cout << vanet::format_summary(vanet::summarize(log));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic V2V collision alert simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string log_path;

  auto* run = app.add_subcommand("run", "Run a scenario and write its event log");
  run->add_option("--scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_path, "Event log output file")->required();

  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
  validate->add_option("--scenario", scenario_path, "Scenario file")->required();

  auto* summarize = app.add_subcommand("summarize", "Summarize an event log");
  summarize->add_option("--log", log_path, "Event log file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*run) return cmd_run(scenario_path, out_path);
    if (*validate) return cmd_validate(scenario_path);
    return cmd_summarize(log_path);
  } catch (const vanet::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const vanet::ValidationError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kRuntime;
  }
}
