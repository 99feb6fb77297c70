#pragma once

// JSON round-trips for every descriptor type. These shapes are the wire
// format of the config file and the report/replay sidecars, so parsing is
// strict: unknown kinds and malformed fields raise config errors.

#include <string>

#include "json.hpp"
#include "randkit/entropy.hpp"
#include "randkit/hybrid.hpp"
#include "randkit/prng.hpp"

namespace randkit {

nlohmann::json to_json(const PrngDescriptor& d);
nlohmann::json to_json(const EntropySourceDescriptor& d);
nlohmann::json to_json(const CombinerDescriptor& d);

PrngDescriptor prng_from_json(const nlohmann::json& j);
EntropySourceDescriptor entropy_from_json(const nlohmann::json& j);
CombinerDescriptor combiner_from_json(const nlohmann::json& j);

// A generator pipeline usable by the battery and Monte Carlo harness:
// a bare deterministic generator, a hybrid combiner, or a raw entropy source.
struct GeneratorDescriptor {
  enum class Kind { prng, hybrid, entropy };
  Kind kind = Kind::prng;
  PrngDescriptor prng;
  CombinerDescriptor hybrid;
  EntropySourceDescriptor entropy;
  std::string label;  // report display name; synthesized when empty

  std::string display_name() const;
};

nlohmann::json to_json(const GeneratorDescriptor& d);
GeneratorDescriptor generator_from_json(const nlohmann::json& j);

// Short human name for a bare generator ("randu", "lcg(5,1,16)", ...).
std::string prng_display_name(const PrngDescriptor& d);

}  // namespace randkit
