#pragma once

#include <stdexcept>
#include <string>

namespace conicdet {

/// Failure categories. The CLI maps these onto its exit-code protocol.
enum class ErrorKind {
  invalid_argument,
  invalid_mode,
  empty_spectrum,
  inconsistent_regularization,
  non_convergence,
  increase_cutoff,
  numeric,
  out_of_regime,
  inconclusive,
  insufficient_data,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) fail(kind, what);
}

}  // namespace conicdet
