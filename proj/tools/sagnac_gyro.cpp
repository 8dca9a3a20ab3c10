// sagnac-gyro: command-line front end.
//
//   sagnac-gyro <command> [--config FILE] [--out FILE] [--format csv|json] [--grid N] ...
//
// Exit status: 0 success, 1 invalid input, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <locale>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sagnac/commands.hpp"
#include "sagnac/config.hpp"
#include "sagnac/errors.hpp"
#include "sagnac/lambda_bloch.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string case_name;
  std::string profile_path;
  std::string generator_path;
  int grid = 0;
};

using Command = sagnac::CommandOutput (*)(const sagnac::RunConfig&);

nlohmann::json read_config_json(const Options& o) {
  if (o.config_path.empty()) return nlohmann::json::object();
  std::ifstream in(o.config_path);
  if (!in) throw sagnac::ConfigError("config: cannot open '" + o.config_path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw sagnac::ConfigError("config: " + o.config_path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sagnac::ConfigError("--out: cannot write '" + path + "'");
  out << text;
}

std::string results_csv(const nlohmann::json& results) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "quantity,value,unit\n";
  for (const auto& [key, q] : results.items()) {
    if (!q.is_object() || !q.contains("value") || !q["value"].is_number()) continue;
    os << key << ',' << sagnac::format_double(q["value"].get<double>()) << ','
       << q["unit"].get<std::string>() << '\n';
  }
  return os.str();
}

int run(const std::string& name, Command command, const Options& o) {
  nlohmann::json j = read_config_json(o);
  if (o.grid > 0) j["grid.n_points"] = o.grid;
  if (!o.case_name.empty()) j["case.name"] = o.case_name;
  const sagnac::RunConfig cfg = sagnac::load_config(j);

  if (!o.generator_path.empty()) {
    std::ofstream gen_out(o.generator_path);
    if (!gen_out) throw sagnac::ConfigError("--dump-generator: cannot write '" + o.generator_path + "'");
    gen_out.imbue(std::locale::classic());
    sagnac::write_generator_csv(
        gen_out, sagnac::build_generator(sagnac::bloch_params(cfg.atom, cfg.fields, cfg.geometry)));
  }

  const sagnac::CommandOutput result = command(cfg);

  std::string format = o.format;
  if (format.empty()) format = (name == "snr-sweep" || name == "optimize") ? "csv" : "json";

  if (format == "json") {
    write_text(o.out_path, result.envelope.dump(2) + "\n");
    if (!o.profile_path.empty() && result.table) {
      std::ostringstream os;
      os.imbue(std::locale::classic());
      sagnac::write_csv(os, *result.table);
      write_text(o.profile_path, os.str());
    }
  } else {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    if (result.table) {
      sagnac::write_csv(os, *result.table);
    } else {
      os << results_csv(result.envelope["results"]);
    }
    write_text(o.out_path, os.str());
    for (const auto& w : result.envelope["warnings"]) {
      std::cerr << "warning: " << w.get<std::string>() << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slow-light / matter-wave hybrid Sagnac gyroscope calculator", "sagnac-gyro"};
  app.set_version_flag("--version", SAGNAC_VERSION);
  app.require_subcommand(1);

  Options opts;
  const std::map<std::string, std::pair<Command, std::string>> commands = {
      {"steady-state", {&sagnac::cmd_steady_state, "Steady-state density matrix of the Lambda system"}},
      {"propagate", {&sagnac::cmd_propagate, "Propagate the probe in both directions"}},
      {"phase", {&sagnac::cmd_phase, "Saturated Sagnac signal phase"}},
      {"snr-sweep", {&sagnac::cmd_snr_sweep, "SNR versus probe Rabi frequency"}},
      {"optimize", {&sagnac::cmd_optimize, "Optimum (s, xi) for a list of loss parameters"}},
      {"omega-min", {&sagnac::cmd_omega_min, "Minimum detectable rotation rate"}},
  };

  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.second);
    sub->add_option("--config", opts.config_path, "JSON configuration file")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_path, "Output file (default: stdout)");
    sub->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--grid", opts.grid, "Number of grid points (>= 64)");
    if (name == "omega-min") {
      sub->add_option("--case", opts.case_name, "Named geometry: gupta or arnold")
          ->check(CLI::IsMember({"gupta", "arnold"}));
    }
    if (name == "phase" || name == "propagate") {
      sub->add_option("--profile", opts.profile_path, "Write the per-x profile CSV here");
    }
    if (name == "steady-state") {
      sub->add_option("--dump-generator", opts.generator_path, "Write M and D as CSV here");
    }
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) return run(name, commands.at(name).first, opts);
    }
  } catch (const sagnac::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const sagnac::Error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
