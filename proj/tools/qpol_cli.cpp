// Command-line front end: one subcommand per scenario kind.
//
// Exit codes: 0 success, 1 unexpected error, 2 invalid config or input,
// 3 numerical gate failure, 4 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpol/scenario.hpp"

namespace {

enum ExitCode : int { kOk = 0, kOther = 1, kInvalid = 2, kGate = 3, kIo = 4 };

struct CliArgs {
  std::string config = "-";
  std::string output;
  std::string format = "json";
  std::optional<double> hbar;
  std::optional<double> tolerance;
  bool degrees = false;
  std::optional<std::uint64_t> seed;
};

std::string read_config(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qpol::IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw qpol::IoError("cannot open output file '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw qpol::IoError("failed writing output file '" + path + "'");
}

int execute(qpol::ScenarioKind kind, const CliArgs& args) {
  const qpol::RunOptions opts{args.hbar, args.tolerance, args.degrees, args.seed};
  const std::string text = read_config(args.config);
  qpol::ordered_json root;
  try {
    root = qpol::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw qpol::SchemaError(std::string("config is not valid JSON: ") + e.what());
  }

  const bool batch = root.is_array();
  std::vector<qpol::ScenarioConfig> configs;
  if (batch) {
    if (root.empty()) throw qpol::SchemaError("config: batch array is empty");
    for (std::size_t i = 0; i < root.size(); ++i) {
      try {
        configs.push_back(qpol::parse_config(root[i], kind, opts));
      } catch (const qpol::SchemaError& e) {
        throw qpol::SchemaError("[" + std::to_string(i) + "] " + e.what());
      }
    }
  } else {
    configs.push_back(qpol::parse_config(root, kind, opts));
  }
  const auto results = qpol::run_batch(configs);
  write_output(args.output, qpol::render(results, batch, args.format == "csv"));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-optimal qubit evolutions and optimal polarization coherence"};
  app.set_version_flag("--version", std::string(qpol::kVersion));
  app.require_subcommand(1);

  CliArgs args;
  std::optional<qpol::ScenarioKind> chosen;
  const std::vector<std::pair<qpol::ScenarioKind, std::string>> commands{
      {qpol::ScenarioKind::Evolve, "Synthesize an optimal Hamiltonian and sample the trajectory"},
      {qpol::ScenarioKind::OptimizeCoherence, "Rotate a coherency matrix to maximal degree of coherence"},
      {qpol::ScenarioKind::Mueller, "Lift a Jones matrix or rotator and classify the Mueller matrix"},
      {qpol::ScenarioKind::Interference, "Sweep the two-beam interference law over analyzer angles"},
      {qpol::ScenarioKind::Correspondence, "Compare a qubit scenario with an optical scenario row by row"}};

  for (const auto& [kind, help] : commands) {
    CLI::App* sub = app.add_subcommand(qpol::to_string(kind), help);
    sub->add_option("--config", args.config, "Scenario JSON file, or - for standard input")->capture_default_str();
    sub->add_option("--output", args.output, "Output file (standard output when omitted)");
    sub->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--hbar", args.hbar, "Reduced Planck constant (overrides the config)");
    sub->add_option("--tolerance", args.tolerance, "Declared endpoint tolerance (overrides the config)");
    sub->add_flag("--degrees", args.degrees, "Interpret config angles as degrees");
    sub->add_option("--seed", args.seed, "Seed for Mueller classification probes");
    const qpol::ScenarioKind k = kind;
    sub->callback([&chosen, k] { chosen = k; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    return execute(*chosen, args);
  } catch (const qpol::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const qpol::NumericalGateFailure& e) {
    std::cerr << "numerical gate failure: " << e.what() << "\n";
    return kGate;
  } catch (const qpol::SchemaError& e) {
    std::cerr << "schema violation: " << e.what() << "\n";
    return kInvalid;
  } catch (const qpol::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}
