#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "randkit/bitstream.hpp"

namespace randkit {

enum class PrngFamily { lcg, xorshift64, mix64 };

const char* prng_family_name(PrngFamily f);
PrngFamily parse_prng_family(const std::string& name);

// Descriptor for a deterministic generator. For lcg the recurrence is
// state' = (a*state + c) mod modulus; xorshift64 uses the fixed 13/7/17
// shift triple; mix64 is a counter stepped by a fixed odd increment whose
// output is an avalanche permutation of the counter (splitmix64 constants).
struct PrngDescriptor {
  PrngFamily family = PrngFamily::xorshift64;
  uint64_t a = 0, c = 0, modulus = 0;  // lcg only
  uint64_t seed = 1;

  // Presets: "randu" (a=65539, c=0, m=2^31), "minstd" (a=16807, c=0, m=2^31-1).
  static PrngDescriptor preset(const std::string& name, uint64_t seed);
  static PrngDescriptor lcg_params(uint64_t a, uint64_t c, uint64_t modulus, uint64_t seed);
  static PrngDescriptor xorshift(uint64_t seed);
  static PrngDescriptor mix(uint64_t seed);

  // Throws invalid-seed / config-error when the family constraints fail.
  void validate() const;

  // Bits taken from each output word: floor(log2 modulus) for lcg, 64 otherwise.
  unsigned word_bits() const;
};

struct PrngState {
  PrngDescriptor descriptor;
  uint64_t state = 0;
  uint64_t emitted = 0;

  static PrngState from(const PrngDescriptor& d);
};

// Single-step transitions. Each returns the advanced state and the output word.
std::pair<PrngState, uint64_t> lcg_next(const PrngState& s);
std::pair<PrngState, uint64_t> xorshift64_next(const PrngState& s);
std::pair<PrngState, uint64_t> mix64_next(const PrngState& s);

// Family dispatch.
std::pair<PrngState, uint64_t> prng_next(const PrngState& s);

// Raw output word reduced to its significant bits (top word_bits() of the
// state word for lcg; the full 64-bit word otherwise).
uint64_t output_word(const PrngDescriptor& d, uint64_t raw);

// Concatenates output words most-significant-bit-first into exactly n bits,
// advancing the state in place.
BitStream prng_bits(PrngState& s, uint64_t n);

// Floyd cycle detection on the state sequence starting from the descriptor's
// seed. Returns the exact period if <= cap, nullopt otherwise.
std::optional<uint64_t> detect_period(const PrngDescriptor& d, uint64_t cap);

}  // namespace randkit
