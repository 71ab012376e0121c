#pragma once

#include <string>

#include "ptspec/errors.hpp"
#include "ptspec/potential.hpp"

namespace ptspec {

/// Everything a subcommand run needs; mirrors the command-line flags and the
/// key=value config-file format one to one.
struct RunConfig {
    std::string potential;   // builtin name ("paper", "zero") or expression text
    double kmin = 0.1;
    double kmax = 6.1;
    int n_scan = 601;        // --n
    double tol = 1e-10;
    int n_nodes = 4097;      // --nodes
    std::string out_dir = ".";  // --out
    bool write_json = false;    // --json
    bool write_csv = false;     // --csv
};

/// key=value lines, one per field; the potential value is quoted so expression
/// text survives round-trips byte for byte.
std::string to_config_text(const RunConfig& cfg);
RunConfig parse_config_text(const std::string& text);

/// Selecting neither --json nor --csv means both.
void finalize_formats(RunConfig& cfg);

/// Builtin name lookup first, then expression parsing.
PotentialExpr resolve_potential(const std::string& text);

/// Exit-code policy: 2 usage or config, 3 numeric failure, 4 structural
/// anomaly in the spectral data.
int exit_code_for(const Error& err);

int run_scan(const RunConfig& cfg);
int run_spectrum(const RunConfig& cfg);
int run_modes(const RunConfig& cfg);
int run_basis(const RunConfig& cfg);
int run_completeness(const RunConfig& cfg);
int run_report(const RunConfig& cfg);

/// cmd is one of scan|spectrum|modes|basis|completeness|report.
int dispatch(const std::string& cmd, const RunConfig& cfg);

}  // namespace ptspec
