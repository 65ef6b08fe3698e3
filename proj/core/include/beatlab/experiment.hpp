#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "beatlab/config.hpp"
#include "beatlab/core.hpp"
#include "beatlab/spectral.hpp"

namespace beatlab {

// Outcome of one run, independent of where (or whether) artifacts are written.
struct RunResult {
  std::string name;
  std::uint64_t seed = 0;
  Analysis analysis = Analysis::Pipeline;
  std::optional<SlopeFit> fit;
  std::optional<spectral::Verdict> verdict;
  // The quantity judged: fitted slope, max relative deviation (inflection) or
  // peak frequency (two-wave).
  double measured = 0.0;
  std::string measured_kind = "slope";
  bool has_expectation = false;
  bool passed = true;
  std::vector<std::string> failures;  // one line per violated expectation
  double runtime_s = 0.0;
};

// In-memory products of a run.
struct RunOutput {
  RunResult result;
  std::optional<TimeSeries> series;  // signal fed to the periodogram
  Psd psd;                           // raw periodogram
  Psd binned;                        // log-binned points that were fitted
  std::vector<std::string> curve_columns;
  std::vector<std::vector<double>> curve_rows;
  std::string curve_comment;  // extra header lines for curve.csv
};

// Runs the configured analysis without touching the filesystem.
RunOutput execute(const RunConfig& cfg);

// Writes series.csv, psd.csv, psd_binned.csv, curve.csv and fit.json (as
// applicable) into dir, each file replaced atomically.
void write_artifacts(const std::filesystem::path& dir, const RunConfig& cfg,
                     const RunOutput& out);

// execute + write_artifacts into out_dir/<name>.
RunResult run_preset(const std::string& name, std::optional<std::uint64_t> seed,
                     const std::filesystem::path& out_dir);
RunResult custom_run(const std::string& config_path, const std::filesystem::path& out_dir);

// Runs every preset with its canonical seed and writes summary.csv (fully
// deterministic) plus timing.csv (wall-clock seconds) into out_dir.
std::vector<RunResult> run_all(const std::filesystem::path& out_dir);

// Deterministic summary table for a set of results.
std::string summary_csv(const std::vector<RunResult>& results);

// BEATLAB_OUT when set and non-empty, otherwise `fallback`.
std::filesystem::path default_out_dir(const std::filesystem::path& fallback = "beatlab-out");

}  // namespace beatlab
