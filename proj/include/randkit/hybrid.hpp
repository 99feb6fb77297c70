#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "randkit/bitstream.hpp"
#include "randkit/entropy.hpp"
#include "randkit/prng.hpp"

namespace randkit {

enum class CombinerMode { xor_mode, digital_dice };

const char* combiner_mode_name(CombinerMode m);
CombinerMode parse_combiner_mode(const std::string& name);

// Fraction of fresh entropy consumed per output, in (0, 1]. num/den = 1
// means one fresh entropy draw per output; smaller rates reuse each draw
// for ceil(den/num) consecutive outputs.
struct MixRate {
  uint64_t num = 1;
  uint64_t den = 1;

  void validate() const;
  uint64_t reuse_count() const;  // ceil(den/num)
  static MixRate parse(const std::string& text);  // "P/K" or "P"
  std::string to_string() const;
};

struct CombinerDescriptor {
  CombinerMode mode = CombinerMode::digital_dice;
  uint32_t q = 2;
  MixRate mix_rate;
  EntropySourceDescriptor rs;
  PrngDescriptor ss;

  void validate() const;
};

// One measurement step: the entropy offset shifts the deterministic
// segment modulo q.
struct DiceOutcome {
  uint32_t ss_segment = 0;
  uint32_t rs_offset = 0;
  uint32_t result = 0;
};

// Elementwise XOR; throws length-mismatch when sizes differ.
BitStream xor_combine(const BitStream& a, const BitStream& b);

// result = (u + r) mod q; inputs must lie in [0, q).
DiceOutcome digital_dice_step(uint32_t u, uint32_t r, uint32_t q);

// Maps a generator output word to a segment index: floor(q * w / 2^width).
uint32_t word_to_segment(uint64_t word, unsigned width, uint32_t q);

// The combined generator. Owns its entropy handle and generator state;
// single-consumer. Entropy exhaustion is a hard error, never a silent
// fallback to the deterministic side.
class HybridGenerator {
 public:
  explicit HybridGenerator(const CombinerDescriptor& d);
  // Injected entropy handle (recording wrappers, pre-opened sources).
  HybridGenerator(const CombinerDescriptor& d, std::unique_ptr<EntropySource> rs);

  // digital-dice: exactly n outcomes reduced to their results.
  // xor: n*ceil(log2 q) combined bits converted via rejection sampling,
  // so fewer than n symbols can come back when q is not a power of two.
  SymbolStream next_symbols(uint64_t n);

  // Bit-level output. digital-dice requires a power-of-two q.
  BitStream next_bits(uint64_t n);

  // Full outcome records (digital-dice mode only).
  std::vector<DiceOutcome> next_outcomes(uint64_t n);

  const CombinerDescriptor& descriptor() const { return desc_; }
  EntropySource& entropy_source() { return *rs_; }

  // Entropy accounting for run reports.
  uint64_t rs_bits_consumed() const { return rs_bits_; }
  uint64_t rs_offsets_drawn() const { return offsets_drawn_; }
  uint64_t rs_rejected_groups() const { return rejected_groups_; }

 private:
  uint32_t draw_offset();
  DiceOutcome step_dice();
  BitStream xor_bits(uint64_t n);

  CombinerDescriptor desc_;
  std::unique_ptr<EntropySource> rs_;
  PrngState ss_;

  // digital-dice offset reuse
  uint32_t current_offset_ = 0;
  uint64_t offset_uses_left_ = 0;

  // xor-mode entropy block reuse
  std::vector<uint8_t> rs_block_;
  uint64_t xor_bits_emitted_ = 0;

  uint64_t rs_bits_ = 0;
  uint64_t offsets_drawn_ = 0;
  uint64_t rejected_groups_ = 0;
};

}  // namespace randkit
