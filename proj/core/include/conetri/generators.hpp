#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>

#include "conetri/cone.hpp"

namespace conetri {

enum class ConeKind { random, prime_example, explicit_rows };

struct ConeSpec {
  ConeKind kind = ConeKind::random;
  unsigned d = 2;
  std::uint64_t seed = 0;
  long max_entry = 10;
  // Inclusive multiplicity window; random cones are redrawn until inside it.
  std::optional<std::pair<Integer, Integer>> target_mu_range;
  // Rows for ConeKind::explicit_rows.
  std::optional<IntMatrix> rows;
};

// Rejection budget shared by random_cone and its filtered overload.
inline constexpr std::size_t kRandomConeBudget = 100000;

// v_1 = (d+1, d-1, d-2, ..., 1), v_i = e_i otherwise; mu = d + 1.
// Throws DomainError unless d >= 2 and d + 1 is prime.
SimplicialCone prime_example(unsigned d);

// Generators (N, 1) and (0, 1) with N prime; mu = N.
SimplicialCone two_dim_prime(const Integer& n);

// True iff every nonzero class of Z^d / U has coordinates exactly
// {1, ..., d} / (d + 1) as a multiset.
bool verify_prime_example_property(const SimplicialCone& c, unsigned d);

// Deterministic in the ConeSpec fields. Entries uniform in [-max_entry, max_entry];
// singular draws are rejected, rows are made primitive, and cones outside
// target_mu_range (or failing accept) are redrawn. Throws ResourceError
// when kRandomConeBudget draws are exhausted.
SimplicialCone random_cone(const ConeSpec& spec);
SimplicialCone random_cone(const ConeSpec& spec, const std::function<bool(const SimplicialCone&)>& accept);

// Dispatches on spec.kind.
SimplicialCone make_cone(const ConeSpec& spec);

}  // namespace conetri
