#include "conetri/limits.hpp"

#include <cstdlib>
#include <string>

#include "conetri/errors.hpp"

namespace conetri {

EnumerationLimits EnumerationLimits::from_environment() {
  EnumerationLimits limits;
  const char* raw = std::getenv("CONETRI_PAR_CAP");
  if (raw == nullptr || *raw == '\0') return limits;
  Integer cap;
  if (cap.set_str(raw, 10) != 0 || cap <= 0) {
    throw DomainError(std::string("CONETRI_PAR_CAP must be a positive integer, got '") + raw + "'");
  }
  limits.par_cap = cap;
  limits.hilbert_cap = cap;
  return limits;
}

}  // namespace conetri
