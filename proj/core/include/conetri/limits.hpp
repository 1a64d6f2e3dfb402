#pragma once

#include "conetri/exact_linalg.hpp"

namespace conetri {

// Caps on the enumerations whose work is linear in the multiplicity.
struct EnumerationLimits {
  Integer par_cap = 1000000;
  Integer hilbert_cap = 10000;

  // Defaults, with both caps replaced by CONETRI_PAR_CAP when it holds a
  // positive integer. Throws DomainError for a malformed value.
  static EnumerationLimits from_environment();
};

}  // namespace conetri
