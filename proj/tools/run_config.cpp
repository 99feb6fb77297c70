#include "run_config.hpp"

#include "randkit/error.hpp"

namespace randkit::cli {

using nlohmann::json;

GeneratorDescriptor default_generate_pipeline(uint64_t seed) {
  GeneratorDescriptor g;
  g.kind = GeneratorDescriptor::Kind::hybrid;
  g.hybrid.mode = CombinerMode::xor_mode;
  g.hybrid.q = 2;
  g.hybrid.mix_rate = MixRate{1, 1};
  g.hybrid.rs = EntropySourceDescriptor::os();
  g.hybrid.ss = PrngDescriptor::xorshift(seed);
  return g;
}

GeneratorDescriptor default_dice_pipeline(uint64_t seed, uint32_t q) {
  GeneratorDescriptor g;
  g.kind = GeneratorDescriptor::Kind::hybrid;
  g.hybrid.mode = CombinerMode::digital_dice;
  g.hybrid.q = q;
  g.hybrid.mix_rate = MixRate{1, 1};
  g.hybrid.rs = EntropySourceDescriptor::os();
  g.hybrid.ss = PrngDescriptor::xorshift(seed);
  return g;
}

void RunConfig::apply_overrides() {
  if (preset) {
    if (generator && generator->kind == GeneratorDescriptor::Kind::hybrid) {
      generator->hybrid.ss = PrngDescriptor::preset(*preset, seed.value_or(1));
    } else {
      GeneratorDescriptor g;
      g.kind = GeneratorDescriptor::Kind::prng;
      g.prng = PrngDescriptor::preset(*preset, seed.value_or(1));
      generator = g;
    }
  }
  if (seed && generator) {
    switch (generator->kind) {
      case GeneratorDescriptor::Kind::prng:
        generator->prng.seed = *seed;
        generator->prng.validate();
        break;
      case GeneratorDescriptor::Kind::hybrid:
        generator->hybrid.ss.seed = *seed;
        generator->hybrid.ss.validate();
        break;
      case GeneratorDescriptor::Kind::entropy:
        raise(errc::config_error, "--seed has no effect on a pure entropy source");
    }
  }
  if (q) {
    battery.q = *q;
    if (generator && generator->kind == GeneratorDescriptor::Kind::hybrid) {
      generator->hybrid.q = *q;
    }
  }
  if (mix_rate && generator) {
    if (generator->kind != GeneratorDescriptor::Kind::hybrid) {
      raise(errc::config_error, "--mix-rate applies only to hybrid pipelines");
    }
    generator->hybrid.mix_rate = *mix_rate;
  }
}

void config_from_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) raise(errc::config_error, "config root must be a JSON object");
  const auto str = [&](const char* key) { return j.at(key).get<std::string>(); };
  try {
    if (j.contains("command")) cfg.command = str("command");
    if (j.contains("out")) cfg.out = str("out");
    if (j.contains("input")) cfg.input = str("input");
    if (j.contains("stream_format")) cfg.stream_format = parse_format(str("stream_format"));
    if (j.contains("report_format")) cfg.report_format = str("report_format");
    if (j.contains("bits")) cfg.bits = j.at("bits").get<uint64_t>();
    if (j.contains("count")) cfg.count = j.at("count").get<uint64_t>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<uint64_t>();
    if (j.contains("significance")) cfg.significance = j.at("significance").get<double>();
    if (j.contains("generator")) cfg.generator = generator_from_json(j.at("generator"));
    if (j.contains("generators")) {
      cfg.generators.clear();
      for (const auto& g : j.at("generators")) cfg.generators.push_back(generator_from_json(g));
    }
    if (j.contains("battery")) {
      const auto& b = j.at("battery");
      if (b.contains("q")) cfg.battery.q = b.at("q").get<uint32_t>();
      if (b.contains("tests")) cfg.battery.tests = b.at("tests").get<std::vector<std::string>>();
      if (b.contains("serial_dims"))
        cfg.battery.serial_dims = b.at("serial_dims").get<std::vector<unsigned>>();
      if (b.contains("lags")) cfg.battery.lags = b.at("lags").get<std::vector<uint64_t>>();
      if (b.contains("apen_m")) cfg.battery.apen_m = b.at("apen_m").get<unsigned>();
    }
    if (j.contains("task")) {
      const auto& t = j.at("task");
      if (t.contains("kind")) cfg.task.kind = mc::parse_mc_kind(t.at("kind").get<std::string>());
      if (t.contains("integrand")) cfg.task.integrand = t.at("integrand").get<std::string>();
      if (t.contains("walk_steps")) cfg.task.walk_steps = t.at("walk_steps").get<uint64_t>();
    }
  } catch (const json::exception& e) {
    raise(errc::config_error, std::string("malformed config: ") + e.what());
  }
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  if (!cfg.out.empty()) j["out"] = cfg.out;
  if (!cfg.input.empty()) j["input"] = cfg.input;
  j["stream_format"] = format_name(cfg.stream_format);
  j["report_format"] = cfg.report_format;
  if (cfg.bits) j["bits"] = *cfg.bits;
  j["count"] = cfg.count;
  j["samples"] = cfg.samples;
  j["significance"] = cfg.significance;
  if (cfg.generator) j["generator"] = to_json(*cfg.generator);
  if (!cfg.generators.empty()) {
    j["generators"] = json::array();
    for (const auto& g : cfg.generators) j["generators"].push_back(to_json(g));
  }
  j["battery"] = {{"q", cfg.battery.q},
                  {"tests", cfg.battery.tests},
                  {"serial_dims", cfg.battery.serial_dims},
                  {"lags", cfg.battery.lags},
                  {"apen_m", cfg.battery.apen_m}};
  j["task"] = {{"kind", mc::mc_kind_name(cfg.task.kind)},
               {"integrand", cfg.task.integrand},
               {"walk_steps", cfg.task.walk_steps}};
  return j;
}

}  // namespace randkit::cli
