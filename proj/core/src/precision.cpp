#include "cmv/precision.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "cmv/errors.hpp"

namespace cmv {

PrecisionConfig PrecisionConfig::with_digits(int digits) {
  PrecisionConfig cfg;
  cfg.digits = digits;
  cfg.series_tol_exponent = -digits;
  return cfg;
}

void PrecisionConfig::validate() const {
  if (digits < kMinDigits) {
    throw DomainError("precision digits must be >= 30, got " + std::to_string(digits));
  }
  if (!std::isfinite(series_tol_exponent)) {
    throw DomainError("series_tol must be a positive number");
  }
  if (max_terms < 100) {
    throw DomainError("max_terms must be >= 100, got " + std::to_string(max_terms));
  }
}

BigReal PrecisionConfig::series_tol() const {
  return pow(BigReal(10), BigReal(series_tol_exponent));
}

PrecisionConfig default_precision_from_env() {
  const char* env = std::getenv("CM_VERIFY_PRECISION");
  if (env == nullptr || *env == '\0') return {};
  char* end = nullptr;
  long digits = std::strtol(env, &end, 10);
  if (end == env || *end != '\0') {
    throw ParseError(std::string("CM_VERIFY_PRECISION is not an integer: '") + env + "'");
  }
  PrecisionConfig cfg = PrecisionConfig::with_digits(static_cast<int>(digits));
  cfg.validate();
  return cfg;
}

}  // namespace cmv
