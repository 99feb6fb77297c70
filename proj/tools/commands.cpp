#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "randkit/error.hpp"
#include "randkit/hybrid.hpp"
#include "randkit/stream_io.hpp"

namespace randkit::cli {

using nlohmann::json;

namespace {

// All primary outputs land via .partial + rename, so an interrupted run
// never leaves a truncated file under the requested name.
void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string partial = path + ".partial";
  write_text_file(partial, content);
  std::error_code ec;
  std::filesystem::rename(partial, path, ec);
  if (ec) raise(errc::io_error, "cannot move '" + partial + "' into place: " + ec.message());
}

std::string render_bitstream(const BitStream& bits, StreamFormat fmt) {
  if (fmt == StreamFormat::ascii) {
    std::string text;
    text.reserve(bits.size());
    for (uint8_t b : bits.bits) text.push_back(b ? '1' : '0');
    return text;
  }
  std::string packed;
  packed.reserve((bits.size() + 7) / 8);
  uint8_t acc = 0;
  int filled = 0;
  for (uint8_t b : bits.bits) {
    acc = static_cast<uint8_t>((acc << 1) | b);
    if (++filled == 8) {
      packed.push_back(static_cast<char>(acc));
      acc = 0;
      filled = 0;
    }
  }
  if (filled > 0) packed.push_back(static_cast<char>(acc << (8 - filled)));
  return packed;
}

bool uses_live_entropy(const EntropySourceDescriptor& d) {
  return d.kind == EntropyKind::os_entropy || d.kind == EntropyKind::timing_jitter;
}

// Deterministic pseudo-noise block for the pinned-seed demo pipelines.
std::vector<uint8_t> demo_noise(uint64_t seed, std::size_t bytes) {
  std::vector<uint8_t> out;
  out.reserve(bytes);
  PrngState s = PrngState::from(PrngDescriptor::mix(seed));
  while (out.size() < bytes) {
    auto [next, word] = mix64_next(s);
    s = next;
    for (int i = 56; i >= 0 && out.size() < bytes; i -= 8) {
      out.push_back(static_cast<uint8_t>(word >> i));
    }
  }
  return out;
}

// Output of one generator run plus everything a sidecar needs to replay it.
struct ProducedStream {
  BitStream bits;              // bit-mode output (generate)
  SymbolStream symbols;        // symbol-mode output (dice)
  GeneratorDescriptor replay;  // descriptor with live entropy swapped for the capture file
  std::optional<BitStream> capture;
  std::string capture_path;
  json accounting;
};

// Runs a generator pipeline for either n bits or n symbols, recording live
// entropy so the sidecar can replay the run bit-exactly.
ProducedStream produce(const GeneratorDescriptor& gen, uint64_t n, bool want_symbols,
                       const std::string& out_path) {
  ProducedStream p;
  p.replay = gen;
  p.capture_path = out_path + ".entropy.bin";

  switch (gen.kind) {
    case GeneratorDescriptor::Kind::prng: {
      if (want_symbols) raise(errc::config_error, "dice needs a hybrid or entropy pipeline");
      PrngState s = PrngState::from(gen.prng);
      p.bits = prng_bits(s, n);
      p.accounting = {{"rs_bits_consumed", 0}};
      return p;
    }
    case GeneratorDescriptor::Kind::entropy: {
      if (want_symbols) raise(errc::config_error, "dice needs a hybrid pipeline");
      const bool live = uses_live_entropy(gen.entropy);
      RecordingEntropySource rec(open_source(gen.entropy));
      p.bits = rec.next_bits(n);
      if (live) {
        p.capture = rec.captured();
        p.replay.entropy = EntropySourceDescriptor::replay(p.capture_path, StreamFormat::raw);
      }
      p.accounting = {{"rs_bits_consumed", rec.captured().size()}};
      return p;
    }
    case GeneratorDescriptor::Kind::hybrid: {
      const bool live = uses_live_entropy(gen.hybrid.rs);
      auto rec = std::make_unique<RecordingEntropySource>(open_source(gen.hybrid.rs));
      const RecordingEntropySource* rec_view = rec.get();
      HybridGenerator hg(gen.hybrid, std::move(rec));
      if (want_symbols) {
        p.symbols = hg.next_symbols(n);
      } else {
        p.bits = hg.next_bits(n);
      }
      if (live) {
        p.capture = rec_view->captured();
        p.replay.hybrid.rs = EntropySourceDescriptor::replay(p.capture_path, StreamFormat::raw);
      }
      p.accounting = {{"rs_bits_consumed", hg.rs_bits_consumed()},
                      {"rs_offsets_drawn", hg.rs_offsets_drawn()},
                      {"rs_rejected_groups", hg.rs_rejected_groups()}};
      return p;
    }
  }
  raise(errc::config_error, "unknown generator kind");
}

void write_sidecar(const RunConfig& effective, const ProducedStream& p,
                   const std::string& primary_path) {
  json side;
  side["command"] = effective.command;
  RunConfig replay_cfg = effective;
  replay_cfg.generator = p.replay;
  side["config"] = config_to_json(replay_cfg);
  side["accounting"] = p.accounting;
  side["outputs"]["primary"] = primary_path;
  if (p.capture) {
    side["outputs"]["entropy_capture"] = p.capture_path;
    write_file_atomic(p.capture_path, render_bitstream(*p.capture, StreamFormat::raw));
  }
  write_file_atomic(sidecar_path(primary_path), side.dump(2) + "\n");
}

void write_report_sidecar(const RunConfig& effective, const std::string& primary_path,
                          const json& extra) {
  json side;
  side["command"] = effective.command;
  side["config"] = config_to_json(effective);
  if (!extra.is_null()) side["accounting"] = extra;
  side["outputs"]["primary"] = primary_path;
  write_file_atomic(sidecar_path(primary_path), side.dump(2) + "\n");
}

}  // namespace

int cmd_generate(RunConfig cfg) {
  cfg.command = "generate";
  // --preset alone means a pure pseudo-generator stream; the hybrid default
  // only kicks in when nothing else names a pipeline.
  if (!cfg.generator && !cfg.preset) {
    cfg.generator = default_generate_pipeline(cfg.seed.value_or(1));
  }
  if (!cfg.bits) cfg.bits = 4096;  // pinned into the sidecar for replay
  cfg.apply_overrides();
  if (cfg.out.empty()) cfg.out = "stream.bin";

  ProducedStream p = produce(*cfg.generator, *cfg.bits, false, cfg.out);
  write_file_atomic(cfg.out, render_bitstream(p.bits, cfg.stream_format));
  write_sidecar(cfg, p, cfg.out);
  std::cout << "wrote " << p.bits.size() << " bits to " << cfg.out << "\n";
  return 0;
}

int cmd_dice(RunConfig cfg) {
  cfg.command = "dice";
  const uint32_t q = cfg.q.value_or(6);
  if (!cfg.generator) cfg.generator = default_dice_pipeline(cfg.seed.value_or(1), q);
  cfg.apply_overrides();
  if (cfg.generator->kind != GeneratorDescriptor::Kind::hybrid) {
    raise(errc::config_error, "dice needs a hybrid pipeline");
  }
  cfg.generator->hybrid.mode = CombinerMode::digital_dice;
  if (cfg.out.empty()) cfg.out = "dice.txt";

  ProducedStream p = produce(*cfg.generator, cfg.count, true, cfg.out);
  std::string text;
  for (uint32_t s : p.symbols.symbols) {
    text += std::to_string(s);
    text += '\n';
  }
  write_file_atomic(cfg.out, text);
  write_sidecar(cfg, p, cfg.out);
  std::cout << "wrote " << p.symbols.size() << " symbols (q=" << p.symbols.q << ") to "
            << cfg.out << "\n";
  return 0;
}

int cmd_test(RunConfig cfg) {
  cfg.command = "test";
  cfg.apply_overrides();
  if (cfg.input.empty()) raise(errc::config_error, "test needs an input stream file");

  BitStream bits = read_bitstream_file(cfg.input, cfg.stream_format, cfg.bits);
  cfg.battery.significance = cfg.significance;
  const battery::BatteryReport report = battery::run_battery(bits, cfg.battery);

  const std::string rendered = cfg.report_format == "csv"
                                   ? battery::report_to_csv(report)
                                   : battery::report_to_json(report).dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << rendered;
  } else {
    write_file_atomic(cfg.out, rendered);
    write_report_sidecar(cfg, cfg.out, nullptr);
  }

  for (const auto& r : report.results) {
    std::cerr << r.test_name << ": "
              << (r.not_applicable ? "not-applicable" : (r.pass ? "pass" : "FAIL"))
              << " (p=" << r.p_value << ")\n";
  }
  if (report.failed > 0) return 1;
  if (report.not_applicable > 0) return 2;
  return 0;
}

int cmd_demo_defect(RunConfig cfg) {
  cfg.command = "demo-defect";
  cfg.apply_overrides();
  if (cfg.out.empty()) cfg.out = "defect-report.json";
  const uint32_t q = 16;
  const uint64_t n_symbols = 250000;  // 1e6 bits at 4 bits per symbol

  // Pinned pipelines: the defective generator, a sound one, and the
  // defective one repaired by entropy mixing. The mix noise is a pinned
  // deterministic block so repeated runs emit identical tables.
  GeneratorDescriptor randu;
  randu.kind = GeneratorDescriptor::Kind::prng;
  randu.prng = PrngDescriptor::preset("randu", 1);

  GeneratorDescriptor mix;
  mix.kind = GeneratorDescriptor::Kind::prng;
  mix.prng = PrngDescriptor::mix(1);

  GeneratorDescriptor hybrid;
  hybrid.kind = GeneratorDescriptor::Kind::hybrid;
  hybrid.hybrid.mode = CombinerMode::digital_dice;
  hybrid.hybrid.q = q;
  hybrid.hybrid.mix_rate = MixRate{1, 1};
  hybrid.hybrid.rs =
      EntropySourceDescriptor::test_pattern(demo_noise(0xD1CE, n_symbols * 4 / 8));
  hybrid.hybrid.ss = PrngDescriptor::preset("randu", 1);

  json table = json::array();
  const auto add_rows = [&](const GeneratorDescriptor& g) {
    SymbolStream symbols;
    BitStream bits;
    if (g.kind == GeneratorDescriptor::Kind::prng) {
      PrngState s = PrngState::from(g.prng);
      bits = prng_bits(s, n_symbols * 4);
      symbols = bits_to_symbols(bits, q);
    } else {
      HybridGenerator hg(g.hybrid);
      symbols = hg.next_symbols(n_symbols);
      bits = symbols_to_bits(symbols);
    }
    for (const auto& r : {battery::serial_test(symbols, 3, cfg.significance),
                          battery::autocorrelation(bits, 1, cfg.significance)}) {
      table.push_back({{"generator", g.display_name()},
                       {"test", r.test_name},
                       {"statistic", r.statistic},
                       {"p_value", r.p_value},
                       {"pass", r.pass}});
    }
  };
  add_rows(randu);
  add_rows(mix);
  add_rows(hybrid);

  std::string rendered;
  if (cfg.report_format == "csv") {
    std::string csv = "generator,test,statistic,p_value,pass\n";
    for (const auto& row : table) {
      csv += row.at("generator").get<std::string>() + "," +
             row.at("test").get<std::string>() + "," +
             std::to_string(row.at("statistic").get<double>()) + "," +
             std::to_string(row.at("p_value").get<double>()) + "," +
             (row.at("pass").get<bool>() ? "true" : "false") + "\n";
    }
    rendered = csv;
  } else {
    rendered = json{{"rows", table}}.dump(2) + "\n";
  }
  write_file_atomic(cfg.out, rendered);
  write_report_sidecar(cfg, cfg.out, nullptr);
  std::cout << "wrote defect comparison (" << table.size() << " rows) to " << cfg.out << "\n";
  return 0;
}

int cmd_demo_mc(RunConfig cfg) {
  cfg.command = "demo-mc";
  cfg.apply_overrides();
  if (cfg.out.empty()) cfg.out = "mc-report.json";

  if (cfg.generators.empty()) {
    GeneratorDescriptor sound;
    sound.kind = GeneratorDescriptor::Kind::prng;
    sound.prng = PrngDescriptor::mix(42);

    GeneratorDescriptor tiny;
    tiny.kind = GeneratorDescriptor::Kind::prng;
    tiny.prng = PrngDescriptor::lcg_params(5, 1, 16, 1);
    tiny.label = "lcg-16-state";

    // Repaired pipeline: defective SS, pinned pseudo-noise RS at a low mix
    // rate (1 fresh entropy bit per 64 output bits).
    GeneratorDescriptor repaired;
    repaired.kind = GeneratorDescriptor::Kind::hybrid;
    repaired.hybrid.mode = CombinerMode::xor_mode;
    repaired.hybrid.q = 2;
    repaired.hybrid.mix_rate = MixRate{1, 64};
    const uint64_t draws =
        cfg.task.kind == mc::McKind::pi_estimate
            ? 2 * cfg.samples
            : (cfg.task.kind == mc::McKind::walk_return ? cfg.samples * cfg.task.walk_steps
                                                        : cfg.samples);
    const uint64_t rs_bits = (draws * 32) / 64 + 64;
    repaired.hybrid.rs = EntropySourceDescriptor::test_pattern(demo_noise(0xCAFE, (rs_bits + 7) / 8));
    repaired.hybrid.ss = PrngDescriptor::preset("randu", 1);

    cfg.generators = {sound, tiny, repaired};
  }

  const mc::McComparison cmp = mc::compare_generators(cfg.task, cfg.generators, cfg.samples);
  const std::string rendered = cfg.report_format == "csv"
                                   ? mc::comparison_to_csv(cmp)
                                   : mc::comparison_to_json(cmp).dump(2) + "\n";
  write_file_atomic(cfg.out, rendered);
  write_report_sidecar(cfg, cfg.out, nullptr);
  std::cout << "wrote " << cmp.rows.size() << "-row comparison to " << cfg.out << "\n";
  return 0;
}

int cmd_replay(RunConfig cfg) {
  if (cfg.input.empty()) raise(errc::config_error, "replay needs a sidecar file");
  json side;
  try {
    side = json::parse(read_text_file(cfg.input));
  } catch (const json::exception& e) {
    raise(errc::parse_error, std::string("sidecar is not valid JSON: ") + e.what());
  }
  if (!side.contains("command") || !side.contains("config")) {
    raise(errc::config_error, "sidecar lacks command/config fields");
  }
  RunConfig replayed;
  config_from_json(replayed, side.at("config"));
  replayed.command = side.at("command").get<std::string>();
  if (!cfg.out.empty()) replayed.out = cfg.out;  // --out redirects the replayed output
  if (replayed.command == "replay") raise(errc::config_error, "refusing nested replay");
  return dispatch(std::move(replayed));
}

int dispatch(RunConfig cfg) {
  if (cfg.command == "generate") return cmd_generate(std::move(cfg));
  if (cfg.command == "test") return cmd_test(std::move(cfg));
  if (cfg.command == "dice") return cmd_dice(std::move(cfg));
  if (cfg.command == "demo-defect") return cmd_demo_defect(std::move(cfg));
  if (cfg.command == "demo-mc") return cmd_demo_mc(std::move(cfg));
  if (cfg.command == "replay") return cmd_replay(std::move(cfg));
  raise(errc::config_error, "unknown command '" + cfg.command + "'");
}

}  // namespace randkit::cli
