// aqsl: command-line runner for OU dephasing dynamics, speed-limit sweeps
// and the property verification suites.

#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "aqsl/experiment.hpp"
#include "aqsl/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitIo = 3;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  aqsl::write_text_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace aqsl;

  CLI::App app{"Affinity discord, OU dephasing and quantum speed limits"};
  app.set_config("--config", "", "flat key=value file; flags given on the command line win");

  ExperimentConfig cfg;
  std::string command;
  bool inject_fault = false;

  app.add_option("command", command, "dynamics | qsl | verify")
      ->required()
      ->check(CLI::IsMember({"dynamics", "qsl", "verify"}));
  app.add_option("--c1", cfg.initial_c.c1, "initial <sigma_x sigma_x>")->capture_default_str();
  app.add_option("--c2", cfg.initial_c.c2, "initial <sigma_y sigma_y>")->capture_default_str();
  app.add_option("--c3", cfg.initial_c.c3, "initial <sigma_z sigma_z>")->capture_default_str();
  app.add_option("--big-gamma", cfg.big_gamma, "OU coupling strength Gamma")->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "OU noise bandwidth gamma")->capture_default_str();
  app.add_option("--t-max", cfg.t_max, "final time (dynamics, time sweep) or fixed tau (coupling sweep)")
      ->capture_default_str();
  app.add_option("--steps", cfg.steps, "time grid intervals")->capture_default_str();
  app.add_option("--sweep", cfg.sweep, "qsl sweep variable")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Sweep>{{"time", Sweep::Time},
                                                                       {"coupling", Sweep::Coupling}}))
      ->default_str("time");
  app.add_option("--coupling-lo", cfg.coupling_lo, "lowest Gamma in a coupling sweep")->capture_default_str();
  app.add_option("--coupling-hi", cfg.coupling_hi, "highest Gamma in a coupling sweep")->capture_default_str();
  app.add_option("--coupling-n", cfg.coupling_n, "number of Gamma values")->capture_default_str();
  app.add_option("--mode", cfg.mode, "decay | creation | both")
      ->transform(CLI::CheckedTransformer(std::map<std::string, ModeSelection>{
          {"decay", ModeSelection::Decay}, {"creation", ModeSelection::Creation}, {"both", ModeSelection::Both}}))
      ->default_str("decay");
  app.add_option("--seed", cfg.seed, "seed for the verification suites")->capture_default_str();
  app.add_option("--out", cfg.out_path, "output file (stdout when omitted)");
  app.add_flag("--svg", cfg.emit_svg, "also write an SVG chart next to --out");
  app.add_flag("--inject-fault", inject_fault, "verify: use the unnormalized closed formula")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  try {
    if (command == "verify") {
      cfg.command = Command::Verify;
      const VerifyReport report = run_verification(VerifyOptions{cfg.seed, inject_fault});
      const std::string text = report.summary();
      if (!cfg.out_path.empty()) emit(text, cfg.out_path);
      std::cout << text;
      return report.all_passed() ? kExitOk : kExitVerifyFailed;
    }

    cfg.command = command == "dynamics" ? Command::Dynamics : Command::Qsl;
    cfg.validate();
    CsvTable table = cfg.command == Command::Dynamics ? run_dynamics(cfg) : run_qsl(cfg);
    std::ostringstream csv;
    table.write(csv);
    emit(csv.str(), cfg.out_path);

    if (cfg.emit_svg) {
      std::string svg;
      if (cfg.command == Command::Dynamics) {
        svg = table_svg(table, "OU dephasing dynamics", "t", {"concurrence", "affinity_discord", "hs_discord"});
      } else {
        const std::string x = cfg.sweep == Sweep::Time ? "tau" : "Gamma";
        svg = table_svg(table, "QSL time under OU dephasing", x, {"tau_qc", "delta_q"});
      }
      write_text_file(svg_path_for(cfg.out_path), svg);
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "aqsl: " << e.what() << "\n";
    return e.kind() == ErrorKind::IoFailure ? kExitIo : kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "aqsl: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
}
