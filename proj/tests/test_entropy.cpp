#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "randkit/entropy.hpp"
#include "randkit/error.hpp"
#include "randkit/stream_io.hpp"

using namespace randkit;

namespace {

BitStream make_bits(std::initializer_list<uint8_t> bits) {
  BitStream s;
  s.bits.assign(bits);
  return s;
}

// Minimal source driving the EntropySource::take_bits default implementation.
class FixedSource final : public EntropySource {
 public:
  explicit FixedSource(BitStream data) : data_(std::move(data)) {}
  BitStream next_bits(uint64_t n) override {
    BitStream out;
    for (uint64_t i = 0; i < n; ++i) out.push_back(data_.bits[(pos_ + i) % data_.size()]);
    pos_ += n;
    return out;
  }
  std::optional<uint64_t> remaining_bits() const override { return std::nullopt; }
  const EntropySourceDescriptor& descriptor() const override { return desc_; }

 private:
  BitStream data_;
  std::size_t pos_ = 0;
  EntropySourceDescriptor desc_ = EntropySourceDescriptor::test_pattern({0});
};

std::string temp_file(const char* name) {
  return std::string("entropy_test_") + name;
}

}  // namespace

TEST_CASE("entropy kind names round-trip") {
  for (EntropyKind k : {EntropyKind::os_entropy, EntropyKind::timing_jitter,
                        EntropyKind::file_replay, EntropyKind::deterministic_test}) {
    CHECK(parse_entropy_kind(entropy_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_entropy_kind("dilithium"), Error);
}

TEST_CASE("von neumann debias keeps unequal pairs only") {
  // pairs: (0,1)->1  (1,0)->0  (0,0)->drop  (1,1)->drop  (0,1)->1
  const BitStream raw = make_bits({0, 1, 1, 0, 0, 0, 1, 1, 0, 1});
  const BitStream out = von_neumann_debias(raw);
  CHECK(out.bits == std::vector<uint8_t>{1, 0, 1});

  // dangling odd bit is ignored
  CHECK(von_neumann_debias(make_bits({0, 1, 1})).bits == std::vector<uint8_t>{1});
  CHECK(von_neumann_debias(make_bits({1, 1, 0, 0})).empty());
  CHECK(von_neumann_debias(BitStream{}).empty());
}

TEST_CASE("von neumann debias yield is one bit per unequal pair") {
  // period-8 input with pairs (01)(10)(11)(00): half the pairs survive
  static const uint8_t kPattern[8] = {0, 1, 1, 0, 1, 1, 0, 0};
  BitStream raw;
  for (int i = 0; i < 400; ++i) raw.push_back(kPattern[i % 8]);
  const BitStream out = von_neumann_debias(raw);
  REQUIRE(out.size() == 100);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out.bits[i] == (i % 2 == 0 ? 1 : 0));
}

TEST_CASE("raw sample blocks validate their width") {
  RawSampleBlock b;
  b.samples = {0, 5, 12};
  b.width = 4;
  CHECK(b.well_formed());
  b.samples.push_back(16);
  CHECK_FALSE(b.well_formed());
  b.width = 64;
  CHECK(b.well_formed());
  b.width = 0;
  CHECK_FALSE(b.well_formed());
}

TEST_CASE("timing samples come back at the requested count") {
  const RawSampleBlock block = collect_timing_samples(64);
  CHECK(block.samples.size() == 64);
  CHECK(block.width == 64);
  CHECK(block.well_formed());
  const BitStream low = low_bit_stream(block);
  CHECK(low.size() == 64);
  CHECK(low.well_formed());
}

TEST_CASE("low bit stream takes the parity of each sample") {
  RawSampleBlock b;
  b.samples = {2, 3, 4, 7, 0};
  CHECK(low_bit_stream(b).bits == std::vector<uint8_t>{0, 1, 0, 1, 0});
}

TEST_CASE("deterministic source repeats its pattern msb-first") {
  auto src = open_source(EntropySourceDescriptor::test_pattern({0xA5}));
  const BitStream b = src->next_bits(12);
  CHECK(b.bits == std::vector<uint8_t>{1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0});
  CHECK(src->remaining_bits() == std::nullopt);

  auto src2 = open_source(EntropySourceDescriptor::test_pattern({0xA5}));
  CHECK(src2->take_bits(12) == 0xA5A);
  // scalar and stream reads share one cursor
  CHECK(src2->take_bits(4) == 0x5);
  CHECK(src2->next_bits(8).bits == std::vector<uint8_t>{1, 0, 1, 0, 0, 1, 0, 1});
}

TEST_CASE("deterministic source rejects an empty pattern") {
  CHECK_THROWS_AS(open_source(EntropySourceDescriptor::test_pattern({})), Error);
}

TEST_CASE("take_bits caps at 64") {
  auto src = open_source(EntropySourceDescriptor::test_pattern({0xFF}));
  CHECK_THROWS_AS(src->take_bits(65), Error);
  CHECK(src->take_bits(64) == ~0ull);
}

TEST_CASE("default take_bits packs next_bits msb-first") {
  FixedSource src(make_bits({1, 1, 0, 1, 0, 0, 1, 0}));
  CHECK(src.take_bits(4) == 0xD);
  CHECK(src.take_bits(4) == 0x2);
}

TEST_CASE("file replay delivers the recorded bits exactly once") {
  const std::string path = temp_file("replay.txt");
  write_bitstream_file(path, make_bits({1, 0, 1, 1, 0}), StreamFormat::ascii);

  auto src = open_source(EntropySourceDescriptor::replay(path, StreamFormat::ascii));
  CHECK(src->remaining_bits() == 5);
  CHECK(src->next_bits(3).bits == std::vector<uint8_t>{1, 0, 1});
  CHECK(src->remaining_bits() == 2);
  CHECK(src->take_bits(2) == 0x2);
  CHECK(src->remaining_bits() == 0);

  CHECK_THROWS_AS(src->next_bits(1), Error);
  try {
    src->next_bits(1);
  } catch (const Error& e) {
    CHECK(e.code() == errc::exhausted_source);
    CHECK(std::string(e.what()).find("0 bits left") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("file replay refuses oversized scalar reads") {
  const std::string path = temp_file("replay_short.txt");
  write_bitstream_file(path, make_bits({1, 0, 1}), StreamFormat::ascii);
  auto src = open_source(EntropySourceDescriptor::replay(path, StreamFormat::ascii));
  CHECK_THROWS_AS(src->take_bits(4), Error);
  std::remove(path.c_str());
}

TEST_CASE("missing replay file is a source error") {
  CHECK_THROWS_AS(open_source(EntropySourceDescriptor::replay("no_such_file.bin")), Error);
  try {
    open_source(EntropySourceDescriptor::replay("no_such_file.bin"));
  } catch (const Error& e) {
    CHECK(e.code() == errc::source_unavailable);
  }
}

TEST_CASE("os entropy source delivers well-formed nonconstant bits") {
  auto src = open_source(EntropySourceDescriptor::os());
  const BitStream a = src->next_bits(4096);
  const BitStream b = src->next_bits(4096);
  CHECK(a.size() == 4096);
  CHECK(a.well_formed());
  CHECK(b.well_formed());
  CHECK(a.bits != b.bits);  // collision probability 2^-4096
  CHECK(src->remaining_bits() == std::nullopt);
}

TEST_CASE("timing jitter either conditions bits or reports itself unusable") {
  CHECK_THROWS_AS(open_source(EntropySourceDescriptor::jitter(8)), Error);
  try {
    auto src = open_source(EntropySourceDescriptor::jitter());
    const BitStream bits = src->next_bits(128);
    CHECK(bits.size() == 128);
    CHECK(bits.well_formed());
  } catch (const Error& e) {
    // a tickless clock is a legitimate runtime condition, never a crash
    CHECK(e.code() == errc::source_unavailable);
  }
}

TEST_CASE("recording wrapper captures every bit handed out") {
  auto rec = RecordingEntropySource(
      open_source(EntropySourceDescriptor::test_pattern({0xC3, 0x5A})));
  const BitStream first = rec.next_bits(5);
  const uint64_t mid = rec.take_bits(7);
  const BitStream last = rec.next_bits(4);
  CHECK(first.bits == std::vector<uint8_t>{1, 1, 0, 0, 0});
  CHECK(mid == 0x35);  // bits 5..11 of 1100001101011010
  CHECK(last.bits == std::vector<uint8_t>{1, 0, 1, 0});

  auto replayed = open_source(EntropySourceDescriptor::test_pattern({0xC3, 0x5A}));
  CHECK(rec.captured().bits == replayed->next_bits(16).bits);
  CHECK(rec.descriptor().kind == EntropyKind::deterministic_test);
}
