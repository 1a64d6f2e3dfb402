#include "conetri/generators.hpp"

#include <algorithm>

#include "conetri/errors.hpp"
#include "conetri/numtheory.hpp"
#include "conetri/random.hpp"

namespace conetri {

SimplicialCone prime_example(unsigned d) {
  if (d < 2) throw DomainError("prime_example: d must be at least 2");
  if (!is_prime(Integer(d + 1))) {
    throw DomainError("prime_example: d + 1 = " + std::to_string(d + 1) + " is not prime");
  }
  IntMatrix rows = IntMatrix::identity(d);
  rows(0, 0) = d + 1;
  for (unsigned j = 2; j <= d; ++j) rows(0, j - 1) = d + 1 - j;
  return SimplicialCone::make(rows);
}

SimplicialCone two_dim_prime(const Integer& n) {
  if (!is_prime(n)) throw DomainError("two_dim_prime: N = " + n.get_str() + " is not prime");
  IntMatrix rows(2, 2);
  rows(0, 0) = n;
  rows(0, 1) = 1;
  rows(1, 1) = 1;
  return SimplicialCone::make(rows);
}

bool verify_prime_example_property(const SimplicialCone& c, unsigned d) {
  if (c.dimension() != d) throw DimensionError("verify_prime_example_property: dimension mismatch");
  std::vector<Rational> expected;
  for (unsigned k = 1; k <= d; ++k) expected.emplace_back(Integer(k), Integer(d + 1));
  std::size_t nonzero = 0;
  auto points = c.quotient_group().par_points(c.multiplicity());
  while (auto e = points.next()) {
    if (e->is_zero()) continue;
    ++nonzero;
    std::vector<Rational> coeffs = e->coeffs;
    std::sort(coeffs.begin(), coeffs.end());
    if (coeffs != expected) return false;
  }
  return Integer(nonzero) + 1 == c.multiplicity();
}

SimplicialCone random_cone(const ConeSpec& spec, const std::function<bool(const SimplicialCone&)>& accept) {
  if (spec.d < 2) throw DomainError("random_cone: d must be at least 2");
  if (spec.max_entry < 1) throw DomainError("random_cone: max_entry must be at least 1");
  Rng rng(spec.seed);
  IntMatrix rows(spec.d, spec.d);
  for (std::size_t draw = 0; draw < kRandomConeBudget; ++draw) {
    for (unsigned i = 0; i < spec.d; ++i)
      for (unsigned j = 0; j < spec.d; ++j) rows(i, j) = rng.in_range(-spec.max_entry, spec.max_entry);
    if (determinant(rows) == 0) continue;
    SimplicialCone cone = SimplicialCone::make(rows);
    if (spec.target_mu_range &&
        (cone.multiplicity() < spec.target_mu_range->first || cone.multiplicity() > spec.target_mu_range->second))
      continue;
    if (accept && !accept(cone)) continue;
    return cone;
  }
  throw ResourceError("random_cone: no acceptable cone within " + std::to_string(kRandomConeBudget) +
                      " draws (seed " + std::to_string(spec.seed) + ")");
}

SimplicialCone random_cone(const ConeSpec& spec) { return random_cone(spec, nullptr); }

SimplicialCone make_cone(const ConeSpec& spec) {
  switch (spec.kind) {
    case ConeKind::random:
      return random_cone(spec);
    case ConeKind::prime_example:
      return prime_example(spec.d);
    case ConeKind::explicit_rows:
      if (!spec.rows) throw DomainError("make_cone: explicit spec without rows");
      if (spec.rows->rows() != spec.d) throw DimensionError("make_cone: row count differs from d");
      return SimplicialCone::make(*spec.rows);
  }
  throw DomainError("make_cone: unknown kind");
}

}  // namespace conetri
