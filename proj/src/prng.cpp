#include "randkit/prng.hpp"

#include <bit>

#include "randkit/error.hpp"

namespace randkit {

namespace {

// splitmix64: Steele/Lea/Flood fixpoint-free increment plus avalanche mix.
constexpr uint64_t kMixIncrement = 0x9E3779B97F4A7C15ull;

uint64_t avalanche64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

}  // namespace

const char* prng_family_name(PrngFamily f) {
  switch (f) {
    case PrngFamily::lcg: return "lcg";
    case PrngFamily::xorshift64: return "xorshift64";
    case PrngFamily::mix64: return "mix64";
  }
  return "?";
}

PrngFamily parse_prng_family(const std::string& name) {
  if (name == "lcg") return PrngFamily::lcg;
  if (name == "xorshift64") return PrngFamily::xorshift64;
  if (name == "mix64") return PrngFamily::mix64;
  raise(errc::config_error, "unknown generator family '" + name + "'");
}

PrngDescriptor PrngDescriptor::preset(const std::string& name, uint64_t seed) {
  if (name == "randu") return lcg_params(65539, 0, 1ull << 31, seed);
  if (name == "minstd") return lcg_params(16807, 0, (1ull << 31) - 1, seed);
  if (name == "xorshift64") return xorshift(seed);
  if (name == "mix64") return mix(seed);
  raise(errc::config_error, "unknown generator preset '" + name + "'");
}

PrngDescriptor PrngDescriptor::lcg_params(uint64_t a, uint64_t c, uint64_t modulus,
                                          uint64_t seed) {
  PrngDescriptor d;
  d.family = PrngFamily::lcg;
  d.a = a;
  d.c = c;
  d.modulus = modulus;
  d.seed = seed;
  d.validate();
  return d;
}

PrngDescriptor PrngDescriptor::xorshift(uint64_t seed) {
  PrngDescriptor d;
  d.family = PrngFamily::xorshift64;
  d.seed = seed;
  d.validate();
  return d;
}

PrngDescriptor PrngDescriptor::mix(uint64_t seed) {
  PrngDescriptor d;
  d.family = PrngFamily::mix64;
  d.seed = seed;
  return d;
}

void PrngDescriptor::validate() const {
  switch (family) {
    case PrngFamily::lcg:
      if (modulus < 2) raise(errc::config_error, "lcg modulus must be >= 2");
      if (modulus > (1ull << 63))
        raise(errc::config_error, "lcg modulus above 2^63 is not supported");
      if (a >= modulus || c >= modulus)
        raise(errc::config_error, "lcg multiplier/increment must be < modulus");
      if (seed >= modulus) raise(errc::invalid_seed, "lcg seed must be < modulus");
      if (c == 0 && seed == 0)
        raise(errc::invalid_seed, "multiplicative lcg cannot be seeded with 0");
      break;
    case PrngFamily::xorshift64:
      if (seed == 0) raise(errc::invalid_seed, "xorshift64 seed must be nonzero");
      break;
    case PrngFamily::mix64:
      break;
  }
}

unsigned PrngDescriptor::word_bits() const {
  if (family != PrngFamily::lcg) return 64;
  // floor(log2 modulus): the state fits in bit_width(m-1) bits but only the
  // top floor(log2 m) carry usable period (low bits of 2^k-modulus LCGs cycle
  // short).
  return static_cast<unsigned>(std::bit_width(modulus) - 1);
}

PrngState PrngState::from(const PrngDescriptor& d) {
  d.validate();
  return PrngState{d, d.seed, 0};
}

std::pair<PrngState, uint64_t> lcg_next(const PrngState& s) {
  const PrngDescriptor& d = s.descriptor;
  if (d.family != PrngFamily::lcg) raise(errc::config_error, "lcg_next on non-lcg state");
  uint64_t next = mulmod_u64(d.a, s.state, d.modulus);
  next = (next + d.c) % d.modulus;
  PrngState out = s;
  out.state = next;
  out.emitted = s.emitted + 1;
  return {out, next};
}

std::pair<PrngState, uint64_t> xorshift64_next(const PrngState& s) {
  if (s.state == 0) raise(errc::invalid_seed, "xorshift64 state is zero");
  uint64_t x = s.state;
  x ^= x << 13;
  x ^= x >> 7;
  x ^= x << 17;
  PrngState out = s;
  out.state = x;
  out.emitted = s.emitted + 1;
  return {out, x};
}

std::pair<PrngState, uint64_t> mix64_next(const PrngState& s) {
  PrngState out = s;
  out.state = s.state + kMixIncrement;
  out.emitted = s.emitted + 1;
  return {out, avalanche64(out.state)};
}

std::pair<PrngState, uint64_t> prng_next(const PrngState& s) {
  switch (s.descriptor.family) {
    case PrngFamily::lcg: return lcg_next(s);
    case PrngFamily::xorshift64: return xorshift64_next(s);
    case PrngFamily::mix64: return mix64_next(s);
  }
  raise(errc::config_error, "unknown generator family");
}

uint64_t output_word(const PrngDescriptor& d, uint64_t raw) {
  if (d.family != PrngFamily::lcg) return raw;
  const unsigned t = d.word_bits();
  const unsigned state_bits = static_cast<unsigned>(std::bit_width(d.modulus - 1));
  return raw >> (state_bits - t);
}

BitStream prng_bits(PrngState& s, uint64_t n) {
  BitStream out;
  out.provenance = std::string("prng:") + prng_family_name(s.descriptor.family);
  out.bits.reserve(n);
  const unsigned w = s.descriptor.word_bits();
  while (out.bits.size() < n) {
    auto [next, raw] = prng_next(s);
    s = next;
    const uint64_t word = output_word(s.descriptor, raw);
    for (unsigned i = 0; i < w && out.bits.size() < n; ++i) {
      out.bits.push_back(static_cast<uint8_t>((word >> (w - 1 - i)) & 1u));
    }
  }
  return out;
}

std::optional<uint64_t> detect_period(const PrngDescriptor& d, uint64_t cap) {
  if (cap < 1) raise(errc::config_error, "detect_period cap must be >= 1");
  const auto step = [](const PrngState& st) { return prng_next(st).first; };

  // Floyd: find a meeting point within the cycle.
  PrngState tortoise = step(PrngState::from(d));
  PrngState hare = step(step(PrngState::from(d)));
  uint64_t steps = 1;
  while (tortoise.state != hare.state) {
    if (steps >= cap) return std::nullopt;
    tortoise = step(tortoise);
    hare = step(step(hare));
    ++steps;
  }

  // Locate the cycle start (mu), then measure the cycle length (lambda).
  uint64_t mu = 0;
  tortoise = PrngState::from(d);
  while (tortoise.state != hare.state) {
    tortoise = step(tortoise);
    hare = step(hare);
    ++mu;
    if (mu > cap) return std::nullopt;
  }
  uint64_t lambda = 1;
  hare = step(tortoise);
  while (hare.state != tortoise.state) {
    hare = step(hare);
    ++lambda;
    if (lambda > cap) return std::nullopt;
  }
  // lambda is the eventual period; any pre-cycle tail (mu > 0 only for
  // degenerate lcg parameters) is absorbed before the cycle repeats.
  return lambda <= cap ? std::optional<uint64_t>(lambda) : std::nullopt;
}

}  // namespace randkit
