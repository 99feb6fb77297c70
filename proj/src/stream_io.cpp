#include "randkit/stream_io.hpp"

#include <fstream>
#include <sstream>

#include "randkit/error.hpp"

namespace randkit {

const char* format_name(StreamFormat f) {
  return f == StreamFormat::raw ? "raw" : "ascii";
}

StreamFormat parse_format(const std::string& name) {
  if (name == "raw") return StreamFormat::raw;
  if (name == "ascii") return StreamFormat::ascii;
  raise(errc::config_error, "unknown stream format '" + name + "'");
}

static bool is_ascii_filler(char c) {
  return c == '\n' || c == '\r' || c == ' ' || c == '\t';
}

void write_bitstream_file(const std::string& path, const BitStream& s, StreamFormat fmt) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(errc::io_error, "cannot open '" + path + "' for writing");

  if (fmt == StreamFormat::ascii) {
    std::string text;
    text.reserve(s.size());
    for (uint8_t b : s.bits) text.push_back(b ? '1' : '0');
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
  } else {
    std::string packed;
    packed.reserve((s.size() + 7) / 8);
    uint8_t acc = 0;
    int filled = 0;
    for (uint8_t b : s.bits) {
      acc = static_cast<uint8_t>((acc << 1) | (b & 1u));
      if (++filled == 8) {
        packed.push_back(static_cast<char>(acc));
        acc = 0;
        filled = 0;
      }
    }
    if (filled > 0) packed.push_back(static_cast<char>(acc << (8 - filled)));
    out.write(packed.data(), static_cast<std::streamsize>(packed.size()));
  }
  if (!out) raise(errc::io_error, "short write to '" + path + "'");
}

static std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

BitStream read_bitstream_file(const std::string& path, StreamFormat fmt,
                              std::optional<uint64_t> bit_count) {
  const std::string data = slurp(path);
  BitStream out;
  out.provenance = "file:" + path;

  if (fmt == StreamFormat::ascii) {
    out.bits.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      const char c = data[i];
      if (c == '0' || c == '1') {
        out.bits.push_back(static_cast<uint8_t>(c - '0'));
      } else if (!is_ascii_filler(c)) {
        raise(errc::parse_error,
              "unexpected byte 0x" +
                  [](unsigned v) {
                    const char* hex = "0123456789abcdef";
                    return std::string{hex[v >> 4], hex[v & 15]};
                  }(static_cast<unsigned char>(c)) +
                  " at offset " + std::to_string(i) + " in '" + path + "'");
      }
      if (bit_count && out.bits.size() == *bit_count) break;
    }
  } else {
    const uint64_t total = static_cast<uint64_t>(data.size()) * 8;
    const uint64_t want = bit_count ? std::min(*bit_count, total) : total;
    out.bits.reserve(want);
    for (uint64_t i = 0; i < want; ++i) {
      const uint8_t byte = static_cast<uint8_t>(data[i >> 3]);
      out.bits.push_back((byte >> (7 - (i & 7))) & 1u);
    }
  }

  if (bit_count && out.bits.size() < *bit_count) {
    raise(errc::exhausted_source,
          "'" + path + "' holds " + std::to_string(out.bits.size()) +
              " bits, requested " + std::to_string(*bit_count));
  }
  return out;
}

uint64_t bitstream_file_bit_count(const std::string& path, StreamFormat fmt) {
  const std::string data = slurp(path);
  if (fmt == StreamFormat::raw) return static_cast<uint64_t>(data.size()) * 8;
  uint64_t n = 0;
  for (char c : data) {
    if (c == '0' || c == '1') ++n;
  }
  return n;
}

std::string sidecar_path(const std::string& stream_path) {
  return stream_path + ".meta.json";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(errc::io_error, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) raise(errc::io_error, "short write to '" + path + "'");
}

std::string read_text_file(const std::string& path) { return slurp(path); }

}  // namespace randkit
