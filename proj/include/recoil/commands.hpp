#pragma once

// Subcommand bodies shared by the recoilsim executable and the tests.

#include <ostream>
#include <string_view>

#include "recoil/config.hpp"

namespace recoil {

enum class OracleKind { amplitudes, quadrature, rate };

OracleKind parse_oracle_kind(std::string_view name);

/// Writes decoherence_factor.csv.
void cmd_decoherence_factor(const RunConfig& cfg, std::ostream& log);

/// Writes rho_t<gamma t>_emission_<on|off>.csv per run and summary.json.
/// Every run is computed and validated before anything is written.
void cmd_evolve(const RunConfig& cfg, std::ostream& log);

/// Writes oracle_<which>.csv (metric,value,limit,status) plus the raw data
/// of the comparison, then throws ToleranceError naming the first failing
/// gated metric.
void cmd_oracle(const RunConfig& cfg, OracleKind which, std::ostream& log);

/// Exit code for an exception escaping a command: 1 config/IO/domain,
/// 2 validity gate, 3 tolerance or integrator accuracy.
int exit_code_for(const std::exception& e);

}  // namespace recoil
