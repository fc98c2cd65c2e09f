#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eit/params.hpp"
#include "eit/spectra.hpp"

namespace eit {

// Run configuration: physical parameters plus scan grid and output
// options. Config files are flat `key = value` text with # comments;
// values are in Gamma units (Gamma1 + Gamma2 = 1 after normalization).
struct RunConfig {
    PhysicalParams params;
    double scan_min = -2.0;  // probe detuning grid, units of Gamma
    double scan_max = 2.0;
    int scan_points = 401;
    double omega = 0.05305164769729845;  // analysis frequency, Gamma/(6 pi)
    std::string out = "scan.csv";
    std::string format = "csv";  // csv | json
    bool include_diagnostics = false;
    bool force_zero_coherence = false;
    std::uint64_t seed = 1;

    std::vector<double> grid() const;
    void validate() const;  // throws ConfigError
};

// Parses config text; unknown or duplicate keys raise ConfigError with
// the key name. `overrides` (from --set key=value) are applied last and
// may repeat.
RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides = {});

// Bundled configurations: "fig1a", "fig1b", "empty_cavity".
const std::map<std::string, std::string>& builtin_configs();

// Loads either a builtin name or a file path.
RunConfig load_config(const std::string& name_or_path,
                      const std::vector<std::string>& overrides = {});

// Serializes the full config as `key = value` lines (17 significant
// digits); parsing them back reproduces the config exactly.
std::string config_to_text(const RunConfig& cfg);

// Per-point diagnostics written when include_diagnostics is on.
struct ScanPointDiagnostics {
    Mat12 A;
    Mat12 D_corr;
    Mat12 Sigma;  // solution of A Sigma + Sigma A^+ = D_corr
};

struct ScanOutput {
    std::vector<SpectrumRecord> records;
    std::vector<ScanPointDiagnostics> diagnostics;  // empty unless requested
};

// Runs the scan described by the config and writes the output file
// (plus `<out>.diag.json` when diagnostics are requested with csv
// format). Deterministic: identical configs give identical bytes.
ScanOutput run_scan(const RunConfig& cfg, int n_threads = 1);

// In-memory variants used by tests and run_scan itself.
ScanOutput execute_scan(const RunConfig& cfg, int n_threads = 1);
std::string render_csv(const RunConfig& cfg, const std::vector<SpectrumRecord>& records);
std::string render_json(const RunConfig& cfg, const ScanOutput& output);

// Extracts the `# key = value` metadata header of a CSV produced by
// render_csv back into a config (the re-run round trip).
RunConfig parse_csv_metadata(const std::string& csv_text);

}  // namespace eit
