#include "conicdet/error.hpp"

namespace conicdet {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_mode: return "invalid-mode";
    case ErrorKind::empty_spectrum: return "empty-spectrum";
    case ErrorKind::inconsistent_regularization: return "inconsistent-regularization";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::increase_cutoff: return "increase-cutoff";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::out_of_regime: return "out-of-regime";
    case ErrorKind::inconclusive: return "inconclusive";
    case ErrorKind::insufficient_data: return "insufficient-data";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace conicdet
