#include "randkit/error.hpp"

namespace randkit {

const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_modulus: return "invalid-modulus";
    case errc::insufficient_symbols: return "insufficient-symbols";
    case errc::non_invertible_modulus: return "non-invertible-modulus";
    case errc::source_unavailable: return "source-unavailable";
    case errc::exhausted_source: return "exhausted-source";
    case errc::invalid_seed: return "invalid-seed";
    case errc::length_mismatch: return "length-mismatch";
    case errc::domain_error: return "domain-error";
    case errc::insufficient_data: return "insufficient-data";
    case errc::cell_budget_exceeded: return "cell-budget-exceeded";
    case errc::block_too_large: return "block-too-large";
    case errc::config_error: return "config-error";
    case errc::parse_error: return "parse-error";
    case errc::io_error: return "io-error";
  }
  return "unknown-error";
}

}  // namespace randkit
