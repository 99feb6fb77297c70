#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "randkit/bitstream.hpp"

namespace randkit {

// On-disk modes for bit streams:
//   raw   - packed bytes, most significant bit first within each byte; the
//           final byte is zero-padded, so the exact bit count travels in the
//           sidecar metadata when it is not a multiple of 8.
//   ascii - '0'/'1' characters; newlines, tabs and spaces are ignored on read.
enum class StreamFormat { raw, ascii };

const char* format_name(StreamFormat f);
StreamFormat parse_format(const std::string& name);

void write_bitstream_file(const std::string& path, const BitStream& s, StreamFormat fmt);

// bit_count limits a raw read to the exact stream length recorded out of band;
// when absent the whole file is taken (8 bits per byte).
BitStream read_bitstream_file(const std::string& path, StreamFormat fmt,
                              std::optional<uint64_t> bit_count = std::nullopt);

// Counts the bits a file would yield without materializing them.
uint64_t bitstream_file_bit_count(const std::string& path, StreamFormat fmt);

// Sidecar convention: metadata for FILE lives at FILE.meta.json.
std::string sidecar_path(const std::string& stream_path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace randkit
