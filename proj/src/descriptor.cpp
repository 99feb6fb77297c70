#include "randkit/descriptor.hpp"

#include "randkit/error.hpp"

namespace randkit {

using nlohmann::json;

namespace {

uint64_t get_u64(const json& j, const char* key, std::optional<uint64_t> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    raise(errc::config_error, std::string("missing field '") + key + "'");
  }
  const auto& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer() && v.get<int64_t>() >= 0) {
    return static_cast<uint64_t>(v.get<int64_t>());
  }
  raise(errc::config_error, std::string("field '") + key + "' must be a non-negative integer");
}

std::string get_str(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    raise(errc::config_error, std::string("missing or non-string field '") + key + "'");
  }
  return j.at(key).get<std::string>();
}

}  // namespace

json to_json(const PrngDescriptor& d) {
  json j;
  j["family"] = prng_family_name(d.family);
  if (d.family == PrngFamily::lcg) {
    j["a"] = d.a;
    j["c"] = d.c;
    j["modulus"] = d.modulus;
  }
  j["seed"] = d.seed;
  return j;
}

PrngDescriptor prng_from_json(const json& j) {
  if (!j.is_object()) raise(errc::config_error, "generator descriptor must be an object");
  const uint64_t seed = get_u64(j, "seed", 1);
  if (j.contains("preset")) return PrngDescriptor::preset(get_str(j, "preset"), seed);
  const PrngFamily family = parse_prng_family(get_str(j, "family"));
  switch (family) {
    case PrngFamily::lcg:
      return PrngDescriptor::lcg_params(get_u64(j, "a"), get_u64(j, "c"),
                                        get_u64(j, "modulus"), seed);
    case PrngFamily::xorshift64: return PrngDescriptor::xorshift(seed);
    case PrngFamily::mix64: return PrngDescriptor::mix(seed);
  }
  raise(errc::config_error, "unknown generator family");
}

json to_json(const EntropySourceDescriptor& d) {
  json j;
  j["kind"] = entropy_kind_name(d.kind);
  switch (d.kind) {
    case EntropyKind::os_entropy: break;
    case EntropyKind::timing_jitter:
      j["probe_count"] = d.probe_count;
      j["resolution_ns"] = d.resolution_ns;
      break;
    case EntropyKind::file_replay:
      j["path"] = d.path;
      j["format"] = format_name(d.format);
      break;
    case EntropyKind::deterministic_test:
      // Small patterns stay readable as byte arrays; long ones (demo noise
      // blocks) pack into hex to keep sidecars manageable.
      if (d.pattern.size() <= 16) {
        j["pattern"] = d.pattern;
      } else {
        static const char* hex = "0123456789abcdef";
        std::string s;
        s.reserve(d.pattern.size() * 2);
        for (uint8_t b : d.pattern) {
          s.push_back(hex[b >> 4]);
          s.push_back(hex[b & 15]);
        }
        j["pattern_hex"] = s;
      }
      break;
  }
  return j;
}

EntropySourceDescriptor entropy_from_json(const json& j) {
  if (!j.is_object()) raise(errc::config_error, "entropy descriptor must be an object");
  EntropySourceDescriptor d;
  d.kind = parse_entropy_kind(get_str(j, "kind"));
  switch (d.kind) {
    case EntropyKind::os_entropy: break;
    case EntropyKind::timing_jitter:
      d.probe_count = get_u64(j, "probe_count", 4096);
      d.resolution_ns = get_u64(j, "resolution_ns", 1);
      break;
    case EntropyKind::file_replay:
      d.path = get_str(j, "path");
      d.format = j.contains("format") ? parse_format(get_str(j, "format")) : StreamFormat::raw;
      break;
    case EntropyKind::deterministic_test: {
      if (j.contains("pattern_hex") && j.at("pattern_hex").is_string()) {
        const std::string s = j.at("pattern_hex").get<std::string>();
        if (s.size() % 2 != 0) raise(errc::config_error, "pattern_hex needs even length");
        const auto nib = [](char c) -> int {
          if (c >= '0' && c <= '9') return c - '0';
          if (c >= 'a' && c <= 'f') return c - 'a' + 10;
          if (c >= 'A' && c <= 'F') return c - 'A' + 10;
          raise(errc::config_error, "pattern_hex holds a non-hex character");
        };
        for (std::size_t i = 0; i < s.size(); i += 2) {
          d.pattern.push_back(static_cast<uint8_t>(nib(s[i]) * 16 + nib(s[i + 1])));
        }
        break;
      }
      if (!j.contains("pattern") || !j.at("pattern").is_array()) {
        raise(errc::config_error,
              "deterministic-test needs a 'pattern' byte array or 'pattern_hex' string");
      }
      for (const auto& b : j.at("pattern")) {
        if (!b.is_number_unsigned() || b.get<uint64_t>() > 255) {
          raise(errc::config_error, "pattern entries must be bytes (0..255)");
        }
        d.pattern.push_back(static_cast<uint8_t>(b.get<uint64_t>()));
      }
      break;
    }
  }
  return d;
}

json to_json(const CombinerDescriptor& d) {
  json j;
  j["mode"] = combiner_mode_name(d.mode);
  j["q"] = d.q;
  j["mix_rate"] = d.mix_rate.to_string();
  j["rs"] = to_json(d.rs);
  j["ss"] = to_json(d.ss);
  return j;
}

CombinerDescriptor combiner_from_json(const json& j) {
  if (!j.is_object()) raise(errc::config_error, "combiner descriptor must be an object");
  CombinerDescriptor d;
  d.mode = parse_combiner_mode(get_str(j, "mode"));
  d.q = static_cast<uint32_t>(get_u64(j, "q", 2));
  if (j.contains("mix_rate")) {
    const auto& mr = j.at("mix_rate");
    d.mix_rate = mr.is_string() ? MixRate::parse(mr.get<std::string>())
                                : MixRate{mr.get<uint64_t>(), 1};
  }
  if (!j.contains("rs") || !j.contains("ss")) {
    raise(errc::config_error, "combiner needs both 'rs' and 'ss' descriptors");
  }
  d.rs = entropy_from_json(j.at("rs"));
  d.ss = prng_from_json(j.at("ss"));
  d.validate();
  return d;
}

std::string prng_display_name(const PrngDescriptor& d) {
  switch (d.family) {
    case PrngFamily::xorshift64: return "xorshift64";
    case PrngFamily::mix64: return "mix64";
    case PrngFamily::lcg:
      if (d.a == 65539 && d.c == 0 && d.modulus == (1ull << 31)) return "randu";
      if (d.a == 16807 && d.c == 0 && d.modulus == (1ull << 31) - 1) return "minstd";
      return "lcg(" + std::to_string(d.a) + "," + std::to_string(d.c) + "," +
             std::to_string(d.modulus) + ")";
  }
  return "?";
}

std::string GeneratorDescriptor::display_name() const {
  if (!label.empty()) return label;
  switch (kind) {
    case Kind::prng: return prng_display_name(prng);
    case Kind::hybrid:
      return "hybrid(" + std::string(entropy_kind_name(hybrid.rs.kind)) + "," +
             prng_display_name(hybrid.ss) + ")";
    case Kind::entropy: return entropy_kind_name(entropy.kind);
  }
  return "?";
}

json to_json(const GeneratorDescriptor& d) {
  json j;
  if (!d.label.empty()) j["label"] = d.label;
  switch (d.kind) {
    case GeneratorDescriptor::Kind::prng:
      j["type"] = "prng";
      j["prng"] = to_json(d.prng);
      break;
    case GeneratorDescriptor::Kind::hybrid:
      j["type"] = "hybrid";
      j["hybrid"] = to_json(d.hybrid);
      break;
    case GeneratorDescriptor::Kind::entropy:
      j["type"] = "entropy";
      j["entropy"] = to_json(d.entropy);
      break;
  }
  return j;
}

GeneratorDescriptor generator_from_json(const json& j) {
  if (!j.is_object()) raise(errc::config_error, "generator entry must be an object");
  GeneratorDescriptor d;
  if (j.contains("label")) d.label = get_str(j, "label");
  const std::string type = get_str(j, "type");
  const auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) {
      raise(errc::config_error, std::string("generator of type '") + type +
                                    "' needs a '" + key + "' descriptor");
    }
    return j.at(key);
  };
  if (type == "prng") {
    d.kind = GeneratorDescriptor::Kind::prng;
    d.prng = prng_from_json(need("prng"));
  } else if (type == "hybrid") {
    d.kind = GeneratorDescriptor::Kind::hybrid;
    d.hybrid = combiner_from_json(need("hybrid"));
  } else if (type == "entropy") {
    d.kind = GeneratorDescriptor::Kind::entropy;
    d.entropy = entropy_from_json(need("entropy"));
  } else {
    raise(errc::config_error, "generator type must be prng, hybrid, or entropy");
  }
  return d;
}

}  // namespace randkit
