#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "randkit/battery.hpp"
#include "randkit/descriptor.hpp"
#include "randkit/montecarlo.hpp"

namespace randkit::cli {

// Effective settings for one command invocation: config-file values with
// flag overrides already applied. Serializes into sidecar metadata so any
// run can be replayed from its sidecar alone.
struct RunConfig {
  std::string command;

  std::string out;            // primary output path ("" = stdout for reports)
  std::string input;          // test: stream file; replay: sidecar file
  StreamFormat stream_format = StreamFormat::raw;  // generate out / test in
  std::string report_format = "json";              // json | csv
  std::optional<uint64_t> bits;  // generate length (default 4096) / test read limit (default all)
  uint64_t count = 100;       // dice symbols
  uint64_t samples = 50000;   // demo-mc sample count
  double significance = 0.0001;

  std::optional<GeneratorDescriptor> generator;
  std::vector<GeneratorDescriptor> generators;  // demo-mc comparison list
  battery::BatteryConfig battery;
  mc::McTask task;

  // pending flag overrides, applied by apply_overrides()
  std::optional<uint64_t> seed;
  std::optional<std::string> preset;
  std::optional<uint32_t> q;
  std::optional<MixRate> mix_rate;

  // Folds --seed/--preset/--q/--mix-rate into the descriptors.
  void apply_overrides();
};

// Config-file / sidecar (de)serialization. from_json only touches keys
// present in the document, so flag defaults survive partial configs.
void config_from_json(RunConfig& cfg, const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);

// Default generator pipelines (pinned seeds recorded in sidecars).
GeneratorDescriptor default_generate_pipeline(uint64_t seed);
GeneratorDescriptor default_dice_pipeline(uint64_t seed, uint32_t q);

}  // namespace randkit::cli
