#include "randkit/hybrid.hpp"

#include <bit>

#include "randkit/error.hpp"

namespace randkit {

namespace {
constexpr uint64_t kXorBlockBits = 64;  // entropy granule reused in xor mode
}

const char* combiner_mode_name(CombinerMode m) {
  return m == CombinerMode::xor_mode ? "xor" : "digital-dice";
}

CombinerMode parse_combiner_mode(const std::string& name) {
  if (name == "xor") return CombinerMode::xor_mode;
  if (name == "digital-dice") return CombinerMode::digital_dice;
  raise(errc::config_error, "unknown combiner mode '" + name + "'");
}

void MixRate::validate() const {
  if (num == 0 || den == 0) raise(errc::config_error, "mix rate terms must be positive");
  if (num > den) raise(errc::config_error, "mix rate must be <= 1");
}

uint64_t MixRate::reuse_count() const {
  validate();
  return (den + num - 1) / num;
}

MixRate MixRate::parse(const std::string& text) {
  MixRate r;
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      r.num = std::stoull(text);
      r.den = 1;
    } else {
      r.num = std::stoull(text.substr(0, slash));
      r.den = std::stoull(text.substr(slash + 1));
    }
  } catch (const std::exception&) {
    raise(errc::config_error, "cannot parse mix rate '" + text + "' (want P/K)");
  }
  r.validate();
  return r;
}

std::string MixRate::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

void CombinerDescriptor::validate() const {
  if (q < 2) raise(errc::invalid_modulus, "combiner modulus must be >= 2");
  mix_rate.validate();
  ss.validate();
}

BitStream xor_combine(const BitStream& a, const BitStream& b) {
  if (a.size() != b.size()) {
    raise(errc::length_mismatch, "xor_combine: " + std::to_string(a.size()) + " vs " +
                                     std::to_string(b.size()) + " bits");
  }
  BitStream out;
  out.provenance = "xor(" + a.provenance + "," + b.provenance + ")";
  out.bits.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.bits[i] = a.bits[i] ^ b.bits[i];
  return out;
}

DiceOutcome digital_dice_step(uint32_t u, uint32_t r, uint32_t q) {
  if (q < 2) raise(errc::invalid_modulus, "digital dice modulus must be >= 2");
  if (u >= q || r >= q) {
    raise(errc::domain_error, "digital_dice_step inputs must lie in [0, q)");
  }
  return DiceOutcome{u, r, static_cast<uint32_t>((u + r) % q)};
}

uint32_t word_to_segment(uint64_t word, unsigned width, uint32_t q) {
  if (width == 0 || width > 64) raise(errc::domain_error, "segment width must be in [1, 64]");
  if (width < 64 && word >= (1ull << width)) {
    raise(errc::domain_error, "word exceeds its declared width");
  }
  const auto scaled = static_cast<unsigned __int128>(word) * q;
  return static_cast<uint32_t>(scaled >> width);
}

HybridGenerator::HybridGenerator(const CombinerDescriptor& d)
    : HybridGenerator(d, open_source(d.rs)) {}

HybridGenerator::HybridGenerator(const CombinerDescriptor& d,
                                 std::unique_ptr<EntropySource> rs)
    : desc_(d), rs_(std::move(rs)), ss_(PrngState::from(d.ss)) {
  desc_.validate();
}

uint32_t HybridGenerator::draw_offset() {
  const unsigned w = symbol_bit_width(desc_.q);
  for (;;) {
    const auto v = static_cast<uint32_t>(rs_->take_bits(w));
    rs_bits_ += w;
    if (v < desc_.q) {
      ++offsets_drawn_;
      return v;
    }
    ++rejected_groups_;
  }
}

DiceOutcome HybridGenerator::step_dice() {
  auto [next, raw] = prng_next(ss_);
  ss_ = next;
  const uint64_t word = output_word(desc_.ss, raw);
  const uint32_t u = word_to_segment(word, desc_.ss.word_bits(), desc_.q);
  if (offset_uses_left_ == 0) {
    current_offset_ = draw_offset();
    offset_uses_left_ = desc_.mix_rate.reuse_count();
  }
  --offset_uses_left_;
  return digital_dice_step(u, current_offset_, desc_.q);
}

BitStream HybridGenerator::xor_bits(uint64_t n) {
  BitStream ss_side = prng_bits(ss_, n);
  BitStream out;
  out.provenance = "hybrid:xor";
  out.bits.resize(n);
  // Entropy arrives in kXorBlockBits-sized granules; each granule covers
  // reuse_count repetitions before a fresh one starts. Granule bits are
  // fetched lazily on first use, so the entropy stream is consumed exactly
  // (a replay file holding precisely the needed bits never over-reads).
  const uint64_t block_span = kXorBlockBits * desc_.mix_rate.reuse_count();
  for (uint64_t i = 0; i < n; ++i) {
    const uint64_t t = xor_bits_emitted_ + i;
    const uint64_t block_bit = t % kXorBlockBits;
    if (t % block_span == 0) rs_block_.clear();
    if (block_bit == rs_block_.size()) {
      rs_block_.push_back(static_cast<uint8_t>(rs_->take_bits(1)));
      ++rs_bits_;
    }
    out.bits[i] = ss_side.bits[i] ^ rs_block_[block_bit];
  }
  xor_bits_emitted_ += n;
  return out;
}

SymbolStream HybridGenerator::next_symbols(uint64_t n) {
  if (desc_.mode == CombinerMode::xor_mode) {
    const unsigned w = symbol_bit_width(desc_.q);
    BitStream combined = xor_bits(n * w);
    SymbolStream s = bits_to_symbols(combined, desc_.q);
    s.provenance = "hybrid:xor";
    return s;
  }
  SymbolStream s;
  s.q = desc_.q;
  s.provenance = "hybrid:digital-dice";
  s.symbols.reserve(n);
  const uint64_t rejected_before = rejected_groups_;
  for (uint64_t i = 0; i < n; ++i) s.symbols.push_back(step_dice().result);
  s.rejected_groups = rejected_groups_ - rejected_before;
  return s;
}

BitStream HybridGenerator::next_bits(uint64_t n) {
  if (desc_.mode == CombinerMode::xor_mode) return xor_bits(n);
  if (!std::has_single_bit(static_cast<uint64_t>(desc_.q))) {
    raise(errc::non_invertible_modulus,
          "bit output from digital dice needs a power-of-two modulus, got q=" +
              std::to_string(desc_.q));
  }
  const unsigned w = symbol_bit_width(desc_.q);
  SymbolStream s = next_symbols((n + w - 1) / w);
  BitStream bits = symbols_to_bits(s);
  bits.bits.resize(n);
  bits.provenance = "hybrid:digital-dice";
  return bits;
}

std::vector<DiceOutcome> HybridGenerator::next_outcomes(uint64_t n) {
  if (desc_.mode != CombinerMode::digital_dice) {
    raise(errc::config_error, "outcome records exist only in digital-dice mode");
  }
  std::vector<DiceOutcome> out;
  out.reserve(n);
  for (uint64_t i = 0; i < n; ++i) out.push_back(step_dice());
  return out;
}

}  // namespace randkit
