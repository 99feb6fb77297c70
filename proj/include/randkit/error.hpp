#pragma once

#include <stdexcept>
#include <string>

namespace randkit {

// Failure categories shared across the toolkit. Callers that care about the
// category catch randkit::Error and switch on code().
enum class errc {
  invalid_modulus,
  insufficient_symbols,
  non_invertible_modulus,
  source_unavailable,
  exhausted_source,
  invalid_seed,
  length_mismatch,
  domain_error,
  insufficient_data,
  cell_budget_exceeded,
  block_too_large,
  config_error,
  parse_error,
  io_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace randkit
