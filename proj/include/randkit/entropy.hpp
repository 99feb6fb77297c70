#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "randkit/bitstream.hpp"
#include "randkit/stream_io.hpp"

namespace randkit {

enum class EntropyKind { os_entropy, timing_jitter, file_replay, deterministic_test };

const char* entropy_kind_name(EntropyKind k);
EntropyKind parse_entropy_kind(const std::string& name);

struct EntropySourceDescriptor {
  EntropyKind kind = EntropyKind::os_entropy;

  // file-replay
  std::string path;
  StreamFormat format = StreamFormat::raw;

  // deterministic-test: repeating byte pattern, emitted MSB-first
  std::vector<uint8_t> pattern;

  // timing-jitter: clock probes per sampling batch, and the tick granularity
  // (ns) the delta is divided by before taking its low bit
  uint64_t probe_count = 4096;
  uint64_t resolution_ns = 1;

  static EntropySourceDescriptor os();
  static EntropySourceDescriptor jitter(uint64_t probe_count = 4096, uint64_t resolution_ns = 1);
  static EntropySourceDescriptor replay(const std::string& path, StreamFormat fmt = StreamFormat::raw);
  static EntropySourceDescriptor test_pattern(std::vector<uint8_t> pattern);
};

// Raw measurements prior to conditioning (timing deltas etc).
struct RawSampleBlock {
  std::vector<uint64_t> samples;
  unsigned width = 64;  // bits per sample; every sample < 2^width

  bool well_formed() const;
};

// Single-consumer handle over an entropy source. next_bits either delivers
// exactly n bits or throws; it never degrades silently.
class EntropySource {
 public:
  virtual ~EntropySource() = default;
  virtual BitStream next_bits(uint64_t n) = 0;
  // Scalar fast path: the next n <= 64 bits packed MSB-first. Consumes the
  // same stream position as next_bits.
  virtual uint64_t take_bits(unsigned n);
  // Bits still available, when knowable (file-replay); nullopt = unbounded.
  virtual std::optional<uint64_t> remaining_bits() const = 0;
  virtual const EntropySourceDescriptor& descriptor() const = 0;
};

std::unique_ptr<EntropySource> open_source(const EntropySourceDescriptor& d);

// (0,1) -> 1, (1,0) -> 0, equal pairs discarded. Exact debiasing for
// independent identically biased pairs.
BitStream von_neumann_debias(const BitStream& raw);

// Timing measurement helpers (exposed for the jitter demo and tests).
RawSampleBlock collect_timing_samples(uint64_t count, uint64_t resolution_ns = 1);
BitStream low_bit_stream(const RawSampleBlock& block);

// Tee wrapper: forwards to an inner source while keeping a copy of every bit
// handed out, so a live run can be replayed later from the capture.
class RecordingEntropySource : public EntropySource {
 public:
  explicit RecordingEntropySource(std::unique_ptr<EntropySource> inner);
  BitStream next_bits(uint64_t n) override;
  uint64_t take_bits(unsigned n) override;
  std::optional<uint64_t> remaining_bits() const override;
  const EntropySourceDescriptor& descriptor() const override;
  const BitStream& captured() const { return captured_; }

 private:
  std::unique_ptr<EntropySource> inner_;
  BitStream captured_;
};

}  // namespace randkit
