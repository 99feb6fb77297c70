#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "randkit/error.hpp"

using randkit::cli::RunConfig;

namespace {

// Shared flag surface; each subcommand picks the subset it understands.
struct FlagBag {
  std::string config_path, out, format;
  uint64_t bits = 0, count = 0, samples = 0;
  double significance = -1.0;
  std::string seed_text, preset, mix_rate, q_text;
  std::string task, integrand;
  uint64_t walk_steps = 0;
};

void add_common(CLI::App* cmd, FlagBag& f) {
  cmd->add_option("--config", f.config_path, "JSON configuration file");
  cmd->add_option("--out", f.out, "primary output path");
  cmd->add_option("--format", f.format, "raw|ascii (streams) or json|csv (reports)");
  cmd->add_option("--seed", f.seed_text, "generator seed override");
  cmd->add_option("--preset", f.preset, "generator preset (randu, minstd, xorshift64, mix64)");
  cmd->add_option("--q", f.q_text, "modulus / symbol alphabet size");
  cmd->add_option("--mix-rate", f.mix_rate, "entropy per output, as P/K in (0,1]");
  cmd->add_option("--significance", f.significance, "test significance level");
}

RunConfig build_config(const FlagBag& f, const std::string& command) {
  RunConfig cfg;
  if (!f.config_path.empty()) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(randkit::read_text_file(f.config_path));
    } catch (const nlohmann::json::exception& e) {
      randkit::raise(randkit::errc::config_error,
                     "config file is not valid JSON: " + std::string(e.what()));
    }
    randkit::cli::config_from_json(cfg, doc);
  }
  cfg.command = command;

  if (!f.out.empty()) cfg.out = f.out;
  if (f.bits > 0) cfg.bits = f.bits;
  if (f.count > 0) cfg.count = f.count;
  if (f.samples > 0) cfg.samples = f.samples;
  if (f.significance >= 0.0) cfg.significance = f.significance;
  if (!f.seed_text.empty()) cfg.seed = std::stoull(f.seed_text);
  if (!f.preset.empty()) cfg.preset = f.preset;
  if (!f.q_text.empty()) cfg.q = static_cast<uint32_t>(std::stoul(f.q_text));
  if (!f.mix_rate.empty()) cfg.mix_rate = randkit::MixRate::parse(f.mix_rate);
  if (!f.format.empty()) {
    if (f.format == "raw" || f.format == "ascii") {
      cfg.stream_format = randkit::parse_format(f.format);
    } else if (f.format == "json" || f.format == "csv") {
      cfg.report_format = f.format;
    } else {
      randkit::raise(randkit::errc::config_error,
                     "--format must be raw, ascii, json, or csv");
    }
  }
  if (!f.task.empty()) cfg.task.kind = randkit::mc::parse_mc_kind(f.task);
  if (!f.integrand.empty()) cfg.task.integrand = f.integrand;
  if (f.walk_steps > 0) cfg.task.walk_steps = f.walk_steps;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid randomness toolkit: generation, testing, and demos"};
  app.require_subcommand(1);

  FlagBag f;
  std::string input_path;

  CLI::App* generate = app.add_subcommand("generate", "emit a bitstream file");
  add_common(generate, f);
  generate->add_option("--bits", f.bits, "bits to emit");

  CLI::App* test = app.add_subcommand("test", "run the statistical battery on a stream file");
  test->add_option("input", input_path, "bitstream file to test")->required();
  add_common(test, f);
  test->add_option("--bits", f.bits, "read at most this many bits");

  CLI::App* dice = app.add_subcommand("dice", "emit digital-dice symbols");
  add_common(dice, f);
  dice->add_option("--count", f.count, "symbols to emit");

  CLI::App* demo_defect =
      app.add_subcommand("demo-defect", "defective vs sound vs repaired generator table");
  add_common(demo_defect, f);

  CLI::App* demo_mc = app.add_subcommand("demo-mc", "Monte Carlo generator comparison");
  add_common(demo_mc, f);
  demo_mc->add_option("--samples", f.samples, "samples per generator");
  demo_mc->add_option("--task", f.task, "pi-estimate | integrate-1d | walk-return");
  demo_mc->add_option("--integrand", f.integrand, "x^2 | sin(pi x) | step");
  demo_mc->add_option("--walk-steps", f.walk_steps, "walk length (even)");

  CLI::App* replay = app.add_subcommand("replay", "re-run a command from its sidecar");
  replay->add_option("sidecar", input_path, "sidecar metadata file")->required();
  replay->add_option("--out", f.out, "redirect the replayed primary output");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = build_config(f, app.get_subcommands().front()->get_name());
    if (cfg.command == "test" || cfg.command == "replay") cfg.input = input_path;
    return randkit::cli::dispatch(std::move(cfg));
  } catch (const randkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
