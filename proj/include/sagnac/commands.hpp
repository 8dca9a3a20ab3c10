#pragma once

// Command implementations behind the sagnac-gyro tool. Each returns a JSON
// envelope and, where the command is tabular, a CSV-ready table.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sagnac/config.hpp"

namespace sagnac {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct CommandOutput {
  nlohmann::json envelope;
  std::optional<Table> table;
};

/// Locale-independent CSV: header first, shortest round-trip doubles, '\n' rows.
void write_csv(std::ostream& out, const Table& table);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

CommandOutput cmd_steady_state(const RunConfig& cfg);
CommandOutput cmd_propagate(const RunConfig& cfg);
CommandOutput cmd_phase(const RunConfig& cfg);
CommandOutput cmd_snr_sweep(const RunConfig& cfg);
CommandOutput cmd_optimize(const RunConfig& cfg);
/// Uses cfg.case_study when a case name is set, otherwise the explicit geometry.
CommandOutput cmd_omega_min(const RunConfig& cfg);

}  // namespace sagnac
