#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stc {

// Every failure the engine can report.  Codes, not exception subclasses, so
// the CLI and the python bindings can map them to diagnostics uniformly.
enum class Errc {
  unbound_variable,
  not_a_function,
  not_a_type,
  motive_mismatch,
  cannot_infer,
  type_mismatch,
  not_closed,
  stuck_term,
  fuel_exhausted,
  scope_underflow,
  sort_mismatch,
  glue_formation,
  section_violation,
  parse_error,
  io_error,
  usage_error,
};

const char* errc_name(Errc c);

// parse/io/usage map to exit code 2; everything else is a semantic failure
// and maps to exit code 1.
bool errc_is_usage(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}

  Errc code() const { return code_; }

  Error& with(std::string key, std::string value) {
    details_.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  const std::vector<std::pair<std::string, std::string>>& details() const { return details_; }

 private:
  Errc code_;
  std::vector<std::pair<std::string, std::string>> details_;
};

}  // namespace stc
