#include "sorpcoag/errors.hpp"

namespace sorpcoag {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config: return "config";
    case ErrorKind::domain: return "domain";
    case ErrorKind::model_validation: return "model_validation";
    case ErrorKind::kernel_validation: return "kernel_validation";
    case ErrorKind::input_validation: return "input_validation";
    case ErrorKind::normalization: return "normalization";
    case ErrorKind::cfl: return "cfl";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

int exit_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::numerical: return 2;
    case ErrorKind::io: return 3;
    default: return 1;
  }
}

}  // namespace sorpcoag
