#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tcqsim/cli.hpp"
#include "tcqsim/error.hpp"
#include "tcqsim/version.hpp"

namespace {

constexpr const char* kUsage = R"(usage: tcqsim <command> --config <path> [--out <path>] [--threads N]

commands:
  spectrum           labeled eigenenergies of the coupled device
  chi                longitudinal couplings of both qubit modes
  zz-sweep           static ZZ vs detuning for the TCQ pair
  transmon-baseline  static ZZ vs detuning for a transmon pair
  calibrate          tune junction energy to the chi/2 target
  rip                echoed resonator-induced-phase accumulation
  ramsey             echoed-RIP Ramsey trace over pulse durations

options:
  --config <path>    run configuration file (required)
  --out <path>       output CSV path ('-' = stdout; default <command>.csv)
  --threads <N>      sweep worker threads (default: TCQSIM_THREADS or all)
  --version          print version and exit
  --help             this text
)";

}  // namespace

int main(int argc, char** argv) {
  std::string command_arg, config_path, out_path;
  int threads = 0;

  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&](const char* what) -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "error: cli: missing value for " << what << "\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--help" || arg == "-h") {
      std::cout << kUsage;
      return 0;
    } else if (arg == "--version") {
      std::cout << "tcqsim " << tcqsim::version << "\n";
      return 0;
    } else if (arg == "--config") {
      config_path = next("--config");
    } else if (arg == "--out") {
      out_path = next("--out");
    } else if (arg == "--threads") {
      threads = std::atoi(next("--threads").c_str());
      if (threads <= 0) {
        std::cerr << "error: cli: --threads expects a positive integer\n";
        return 2;
      }
    } else if (!arg.empty() && arg[0] == '-') {
      std::cerr << "error: cli: unknown option " << arg << "\n" << kUsage;
      return 2;
    } else if (command_arg.empty()) {
      command_arg = arg;
    } else {
      std::cerr << "error: cli: unexpected argument " << arg << "\n";
      return 2;
    }
  }

  if (command_arg.empty()) {
    std::cerr << kUsage;
    return 2;
  }
  if (config_path.empty()) {
    std::cerr << "error: cli: --config is required\n";
    return 2;
  }

  try {
    const auto command = tcqsim::config::parse_command(command_arg);
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cli: cannot read config file '" << config_path
                << "'\n";
      return 2;
    }
    std::ostringstream text;
    text << in.rdbuf();
    auto cfg = tcqsim::config::parse_config(text.str(), command);
    if (!out_path.empty()) cfg.output_path = out_path;
    return tcqsim::cli::run(cfg, threads);
  } catch (const tcqsim::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const tcqsim::Error& e) {
    std::cerr << "error: run: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
}
