#include "randkit/entropy.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>

#include "randkit/error.hpp"

namespace randkit {

const char* entropy_kind_name(EntropyKind k) {
  switch (k) {
    case EntropyKind::os_entropy: return "os-entropy";
    case EntropyKind::timing_jitter: return "timing-jitter";
    case EntropyKind::file_replay: return "file-replay";
    case EntropyKind::deterministic_test: return "deterministic-test";
  }
  return "?";
}

EntropyKind parse_entropy_kind(const std::string& name) {
  if (name == "os-entropy") return EntropyKind::os_entropy;
  if (name == "timing-jitter") return EntropyKind::timing_jitter;
  if (name == "file-replay") return EntropyKind::file_replay;
  if (name == "deterministic-test") return EntropyKind::deterministic_test;
  raise(errc::config_error, "unknown entropy source kind '" + name + "'");
}

EntropySourceDescriptor EntropySourceDescriptor::os() {
  EntropySourceDescriptor d;
  d.kind = EntropyKind::os_entropy;
  return d;
}

EntropySourceDescriptor EntropySourceDescriptor::jitter(uint64_t probe_count,
                                                        uint64_t resolution_ns) {
  EntropySourceDescriptor d;
  d.kind = EntropyKind::timing_jitter;
  d.probe_count = probe_count;
  d.resolution_ns = resolution_ns;
  return d;
}

EntropySourceDescriptor EntropySourceDescriptor::replay(const std::string& path,
                                                        StreamFormat fmt) {
  EntropySourceDescriptor d;
  d.kind = EntropyKind::file_replay;
  d.path = path;
  d.format = fmt;
  return d;
}

EntropySourceDescriptor EntropySourceDescriptor::test_pattern(std::vector<uint8_t> pattern) {
  EntropySourceDescriptor d;
  d.kind = EntropyKind::deterministic_test;
  d.pattern = std::move(pattern);
  return d;
}

uint64_t EntropySource::take_bits(unsigned n) {
  if (n > 64) raise(errc::domain_error, "take_bits limited to 64 bits");
  const BitStream got = next_bits(n);
  uint64_t v = 0;
  for (unsigned i = 0; i < n; ++i) v = (v << 1) | got.bits[i];
  return v;
}

bool RawSampleBlock::well_formed() const {
  if (width == 0 || width > 64) return false;
  if (width == 64) return true;
  const uint64_t limit = 1ull << width;
  for (uint64_t s : samples) {
    if (s >= limit) return false;
  }
  return true;
}

BitStream von_neumann_debias(const BitStream& raw) {
  BitStream out;
  out.provenance = raw.provenance + "+vn";
  out.bits.reserve(raw.size() / 4);
  for (std::size_t i = 0; i + 1 < raw.size(); i += 2) {
    const uint8_t a = raw.bits[i], b = raw.bits[i + 1];
    if (a != b) out.bits.push_back(a == 0 ? 1 : 0);
  }
  return out;
}

RawSampleBlock collect_timing_samples(uint64_t count, uint64_t resolution_ns) {
  using clock = std::chrono::steady_clock;
  if (resolution_ns == 0) resolution_ns = 1;
  RawSampleBlock block;
  block.width = 64;
  block.samples.reserve(count);
  auto prev = clock::now();
  // Small variable-length spin between probes so consecutive reads do not
  // collapse onto the same tick on fast TSC-backed clocks.
  unsigned spin_state = 1;
  for (uint64_t i = 0; i < count; ++i) {
    spin_state ^= spin_state << 3;
    spin_state ^= spin_state >> 5;
    for (unsigned s = 0; s < (spin_state & 15u); ++s) {
      asm volatile("" ::: "memory");
    }
    const auto now = clock::now();
    const auto delta =
        std::chrono::duration_cast<std::chrono::nanoseconds>(now - prev).count();
    prev = now;
    block.samples.push_back(static_cast<uint64_t>(delta) / resolution_ns);
  }
  return block;
}

BitStream low_bit_stream(const RawSampleBlock& block) {
  BitStream out;
  out.provenance = "timing-jitter-raw";
  out.bits.reserve(block.samples.size());
  for (uint64_t s : block.samples) out.bits.push_back(static_cast<uint8_t>(s & 1u));
  return out;
}

namespace {

class OsEntropySource final : public EntropySource {
 public:
  explicit OsEntropySource(const EntropySourceDescriptor& d) : desc_(d) {
    file_ = std::fopen("/dev/urandom", "rb");
    if (!file_) raise(errc::source_unavailable, "cannot open /dev/urandom");
  }
  ~OsEntropySource() override {
    if (file_) std::fclose(file_);
  }

  BitStream next_bits(uint64_t n) override {
    BitStream out;
    out.provenance = "os-entropy";
    out.bits.reserve(n);
    for (uint64_t i = 0; i < n; ++i) out.bits.push_back(take_bit());
    return out;
  }

  uint64_t take_bits(unsigned n) override {
    if (n > 64) raise(errc::domain_error, "take_bits limited to 64 bits");
    uint64_t v = 0;
    for (unsigned i = 0; i < n; ++i) v = (v << 1) | take_bit();
    return v;
  }

  std::optional<uint64_t> remaining_bits() const override { return std::nullopt; }
  const EntropySourceDescriptor& descriptor() const override { return desc_; }

 private:
  uint8_t take_bit() {
    if (bit_pos_ >= buf_.size() * 8) {
      buf_.resize(4096);
      if (std::fread(buf_.data(), 1, buf_.size(), file_) != buf_.size()) {
        raise(errc::source_unavailable, "short read from /dev/urandom");
      }
      bit_pos_ = 0;
    }
    const uint8_t b = (buf_[bit_pos_ >> 3] >> (7 - (bit_pos_ & 7))) & 1u;
    ++bit_pos_;
    return b;
  }

  EntropySourceDescriptor desc_;
  std::FILE* file_ = nullptr;
  std::vector<uint8_t> buf_;
  uint64_t bit_pos_ = 0;
};

class TimingJitterSource final : public EntropySource {
 public:
  explicit TimingJitterSource(const EntropySourceDescriptor& d) : desc_(d) {
    if (desc_.probe_count < 16) raise(errc::config_error, "jitter probe count must be >= 16");
    // Sanity probe: a clock with no observable variation cannot feed the
    // conditioning pipeline.
    const auto block = collect_timing_samples(desc_.probe_count, desc_.resolution_ns);
    bool varies = false;
    for (std::size_t i = 1; i < block.samples.size() && !varies; ++i) {
      varies = block.samples[i] != block.samples[0];
    }
    if (!varies) {
      raise(errc::source_unavailable,
            "timing clock shows no jitter at the configured resolution");
    }
  }

  BitStream next_bits(uint64_t n) override {
    BitStream out;
    out.provenance = "timing-jitter";
    out.bits.reserve(n);
    int dry_batches = 0;
    while (out.bits.size() < n) {
      if (pos_ >= pool_.size()) {
        const auto block = collect_timing_samples(desc_.probe_count, desc_.resolution_ns);
        const BitStream conditioned = von_neumann_debias(low_bit_stream(block));
        pool_ = conditioned.bits;
        pos_ = 0;
        if (pool_.empty()) {
          if (++dry_batches >= 256) {
            raise(errc::source_unavailable, "timing jitter source stalled (no bits after 256 batches)");
          }
          continue;
        }
        dry_batches = 0;
      }
      out.bits.push_back(pool_[pos_++]);
    }
    return out;
  }

  std::optional<uint64_t> remaining_bits() const override { return std::nullopt; }
  const EntropySourceDescriptor& descriptor() const override { return desc_; }

 private:
  EntropySourceDescriptor desc_;
  std::vector<uint8_t> pool_;
  std::size_t pos_ = 0;
};

class FileReplaySource final : public EntropySource {
 public:
  explicit FileReplaySource(const EntropySourceDescriptor& d) : desc_(d) {
    if (!std::filesystem::exists(desc_.path)) {
      raise(errc::source_unavailable, "replay file not found: '" + desc_.path + "'");
    }
    data_ = read_bitstream_file(desc_.path, desc_.format, std::nullopt);
  }

  BitStream next_bits(uint64_t n) override {
    if (n > data_.size() - pos_) {
      raise(errc::exhausted_source,
            "replay file '" + desc_.path + "' exhausted: " +
                std::to_string(data_.size() - pos_) + " bits left, " + std::to_string(n) +
                " requested");
    }
    BitStream out;
    out.provenance = "file-replay:" + desc_.path;
    out.bits.assign(data_.bits.begin() + static_cast<std::ptrdiff_t>(pos_),
                    data_.bits.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return out;
  }

  uint64_t take_bits(unsigned n) override {
    if (n > 64) raise(errc::domain_error, "take_bits limited to 64 bits");
    if (n > data_.size() - pos_) {
      raise(errc::exhausted_source,
            "replay file '" + desc_.path + "' exhausted: " +
                std::to_string(data_.size() - pos_) + " bits left, " + std::to_string(n) +
                " requested");
    }
    uint64_t v = 0;
    for (unsigned i = 0; i < n; ++i) v = (v << 1) | data_.bits[pos_ + i];
    pos_ += n;
    return v;
  }

  std::optional<uint64_t> remaining_bits() const override { return data_.size() - pos_; }
  const EntropySourceDescriptor& descriptor() const override { return desc_; }

 private:
  EntropySourceDescriptor desc_;
  BitStream data_;
  std::size_t pos_ = 0;
};

class DeterministicTestSource final : public EntropySource {
 public:
  explicit DeterministicTestSource(const EntropySourceDescriptor& d) : desc_(d) {
    if (desc_.pattern.empty()) {
      raise(errc::config_error, "deterministic-test source needs a nonempty pattern");
    }
  }

  BitStream next_bits(uint64_t n) override {
    BitStream out;
    out.provenance = "deterministic-test";
    out.bits.reserve(n);
    const uint64_t pattern_bits = desc_.pattern.size() * 8;
    for (uint64_t i = 0; i < n; ++i) {
      const uint64_t b = bit_pos_ % pattern_bits;
      out.bits.push_back((desc_.pattern[b >> 3] >> (7 - (b & 7))) & 1u);
      ++bit_pos_;
    }
    return out;
  }

  uint64_t take_bits(unsigned n) override {
    if (n > 64) raise(errc::domain_error, "take_bits limited to 64 bits");
    const uint64_t pattern_bits = desc_.pattern.size() * 8;
    uint64_t v = 0;
    for (unsigned i = 0; i < n; ++i) {
      const uint64_t b = bit_pos_ % pattern_bits;
      v = (v << 1) | ((desc_.pattern[b >> 3] >> (7 - (b & 7))) & 1u);
      ++bit_pos_;
    }
    return v;
  }

  std::optional<uint64_t> remaining_bits() const override { return std::nullopt; }
  const EntropySourceDescriptor& descriptor() const override { return desc_; }

 private:
  EntropySourceDescriptor desc_;
  uint64_t bit_pos_ = 0;
};

}  // namespace

std::unique_ptr<EntropySource> open_source(const EntropySourceDescriptor& d) {
  switch (d.kind) {
    case EntropyKind::os_entropy: return std::make_unique<OsEntropySource>(d);
    case EntropyKind::timing_jitter: return std::make_unique<TimingJitterSource>(d);
    case EntropyKind::file_replay: return std::make_unique<FileReplaySource>(d);
    case EntropyKind::deterministic_test: return std::make_unique<DeterministicTestSource>(d);
  }
  raise(errc::config_error, "unknown entropy source kind");
}

RecordingEntropySource::RecordingEntropySource(std::unique_ptr<EntropySource> inner)
    : inner_(std::move(inner)) {
  captured_.provenance = "capture:" + std::string(entropy_kind_name(inner_->descriptor().kind));
}

BitStream RecordingEntropySource::next_bits(uint64_t n) {
  BitStream got = inner_->next_bits(n);
  captured_.append(got);
  return got;
}

uint64_t RecordingEntropySource::take_bits(unsigned n) {
  const uint64_t v = inner_->take_bits(n);
  for (unsigned i = 0; i < n; ++i) {
    captured_.bits.push_back(static_cast<uint8_t>((v >> (n - 1 - i)) & 1u));
  }
  return v;
}

std::optional<uint64_t> RecordingEntropySource::remaining_bits() const {
  return inner_->remaining_bits();
}

const EntropySourceDescriptor& RecordingEntropySource::descriptor() const {
  return inner_->descriptor();
}

}  // namespace randkit
