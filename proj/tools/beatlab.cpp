// beatlab: batch runner for the wave-beat pink-noise experiments.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "beatlab/experiment.hpp"
#include "beatlab/presets.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kExpectationFailed = 1;
constexpr int kError = 2;

void report(const beatlab::RunResult& r) {
  std::cout << r.name << " (seed " << r.seed << "): " << r.measured_kind << " = " << r.measured;
  if (r.fit) std::cout << ", R^2 = " << r.fit->r_squared << ", decades = " << r.fit->decades;
  if (r.verdict) std::cout << ", " << (r.verdict->pink ? "pink" : "not pink");
  std::cout << (r.has_expectation ? (r.passed ? "  [pass]" : "  [FAIL]") : "") << '\n';
  for (const auto& f : r.failures) std::cout << "  - " << f << '\n';
}

int status_of(const beatlab::RunResult& r) {
  return r.has_expectation && !r.passed ? kExpectationFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-beat pink noise: synthesis, demodulation and PSD slope fits"};
  app.require_subcommand(1);

  std::string out_opt;
  auto out_dir = [&] {
    return out_opt.empty() ? beatlab::default_out_dir() : std::filesystem::path(out_opt);
  };

  auto* run = app.add_subcommand("run", "Run one named preset");
  std::string preset;
  std::optional<std::uint64_t> seed;
  run->add_option("preset", preset, "Preset name (see `beatlab list`)")->required();
  run->add_option("--seed", seed, "Override the canonical seed");
  run->add_option("--out", out_opt, "Output directory (default: $BEATLAB_OUT or ./beatlab-out)");

  auto* all = app.add_subcommand("run-all", "Run every preset and write summary.csv");
  all->add_option("--out", out_opt, "Output directory (default: $BEATLAB_OUT or ./beatlab-out)");

  auto* custom = app.add_subcommand("custom", "Run a pipeline described by a config file");
  std::string config;
  custom->add_option("--config", config, "key = value configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  custom->add_option("--out", out_opt, "Output directory (default: $BEATLAB_OUT or ./beatlab-out)");

  auto* list = app.add_subcommand("list", "List presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (list->parsed()) {
      for (const auto& name : beatlab::preset_names()) {
        const auto cfg = beatlab::make_preset(name);
        std::cout << name << "\t" << cfg.description << '\n';
      }
      return kOk;
    }
    if (run->parsed()) {
      if (!beatlab::is_preset(preset)) {
        std::cerr << "beatlab: unknown preset '" << preset << "' (try `beatlab list`)\n";
        return kError;
      }
      const auto r = beatlab::run_preset(preset, seed, out_dir());
      report(r);
      return status_of(r);
    }
    if (all->parsed()) {
      const auto dir = out_dir();
      const auto results = beatlab::run_all(dir);
      int status = kOk;
      for (const auto& r : results) {
        report(r);
        if (status_of(r) != kOk) status = kExpectationFailed;
      }
      std::cout << "summary written to " << (dir / "summary.csv").string() << '\n';
      return status;
    }
    if (custom->parsed()) {
      const auto r = beatlab::custom_run(config, out_dir());
      report(r);
      return status_of(r);
    }
  } catch (const std::exception& e) {
    std::cerr << "beatlab: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
