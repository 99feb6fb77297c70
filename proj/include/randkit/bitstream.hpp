#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace randkit {

// Finite ordered bit sequence, one element per bit (value 0 or 1).
// Streams are plain values: build once, then share freely.
struct BitStream {
  std::vector<uint8_t> bits;
  std::string provenance = "unspecified";

  std::size_t size() const { return bits.size(); }
  bool empty() const { return bits.empty(); }
  uint8_t operator[](std::size_t i) const { return bits[i]; }
  void push_back(uint8_t b) { bits.push_back(b); }
  void append(const BitStream& other) {
    bits.insert(bits.end(), other.bits.begin(), other.bits.end());
  }

  std::size_t ones_count() const;
  bool well_formed() const;  // every element is exactly 0 or 1
};

BitStream complement(const BitStream& s);

// Finite sequence over Z/qZ plus the conversion bookkeeping that produced it.
struct SymbolStream {
  uint32_t q = 2;
  std::vector<uint32_t> symbols;
  uint64_t rejected_groups = 0;  // bit groups with value >= q, dropped
  uint64_t discarded_bits = 0;   // trailing bits short of a full group
  std::string provenance = "unspecified";

  std::size_t size() const { return symbols.size(); }
  bool well_formed() const;  // q >= 2 and every symbol < q
};

// Value in [0,1] obtained by reading symbols as base-q digits after the point.
struct UnitReal {
  double value = 0.0;
  std::size_t digits_used = 0;
};

// Bits needed to encode one symbol of Z/qZ: ceil(log2 q).
uint32_t symbol_bit_width(uint32_t q);

// Reads consecutive groups of symbol_bit_width(q) bits, most significant bit
// first. Groups whose value is >= q are rejected so that accepted symbols are
// exactly uniform when the input bits are independent fair bits. The trailing
// partial group, if any, is discarded and counted in the result metadata.
SymbolStream bits_to_symbols(const BitStream& bits, uint32_t q);

// 0.m_1 m_2 ... m_n in base q, i.e. sum of m_i * q^-i over the first n symbols.
UnitReal symbols_to_unit_real(const SymbolStream& s, std::size_t n);

// Inverse transport for power-of-two q: each symbol expands to log2(q) bits,
// most significant first. Non-power-of-two moduli are not invertible because
// the forward direction discards rejected groups.
BitStream symbols_to_bits(const SymbolStream& s);

}  // namespace randkit
