#include "randkit/bitstream.hpp"

#include <algorithm>
#include <bit>

#include "randkit/error.hpp"

namespace randkit {

std::size_t BitStream::ones_count() const {
  std::size_t ones = 0;
  for (uint8_t b : bits) ones += b;
  return ones;
}

bool BitStream::well_formed() const {
  return std::all_of(bits.begin(), bits.end(), [](uint8_t b) { return b <= 1; });
}

BitStream complement(const BitStream& s) {
  BitStream out;
  out.provenance = s.provenance;
  out.bits.reserve(s.size());
  for (uint8_t b : s.bits) out.bits.push_back(static_cast<uint8_t>(1 - b));
  return out;
}

bool SymbolStream::well_formed() const {
  if (q < 2) return false;
  return std::all_of(symbols.begin(), symbols.end(),
                     [this](uint32_t s) { return s < q; });
}

uint32_t symbol_bit_width(uint32_t q) {
  if (q < 2) raise(errc::invalid_modulus, "q must be >= 2");
  return static_cast<uint32_t>(std::bit_width(q - 1));
}

SymbolStream bits_to_symbols(const BitStream& bits, uint32_t q) {
  const uint32_t w = symbol_bit_width(q);
  SymbolStream out;
  out.q = q;
  out.provenance = bits.provenance;
  out.symbols.reserve(bits.size() / w);

  const std::size_t usable = bits.size() - bits.size() % w;
  out.discarded_bits = bits.size() - usable;
  for (std::size_t i = 0; i < usable; i += w) {
    uint32_t v = 0;
    for (uint32_t j = 0; j < w; ++j) v = (v << 1) | bits[i + j];
    if (v < q) {
      out.symbols.push_back(v);
    } else {
      ++out.rejected_groups;
    }
  }
  return out;
}

UnitReal symbols_to_unit_real(const SymbolStream& s, std::size_t n) {
  if (n > s.size()) {
    raise(errc::insufficient_symbols,
          "prefix length " + std::to_string(n) + " exceeds stream length " +
              std::to_string(s.size()));
  }
  // Horner from the last digit keeps rounding error at a few ulps.
  double value = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    value = (s.symbols[i] + value) / s.q;
  }
  return UnitReal{value, n};
}

BitStream symbols_to_bits(const SymbolStream& s) {
  if (s.q < 2) raise(errc::invalid_modulus, "q must be >= 2");
  if (!std::has_single_bit(s.q)) {
    raise(errc::non_invertible_modulus,
          "q=" + std::to_string(s.q) + " is not a power of two");
  }
  const uint32_t w = static_cast<uint32_t>(std::countr_zero(s.q));
  BitStream out;
  out.provenance = s.provenance;
  out.bits.reserve(s.size() * w);
  for (uint32_t v : s.symbols) {
    for (uint32_t j = w; j-- > 0;) out.bits.push_back((v >> j) & 1u);
  }
  return out;
}

}  // namespace randkit
