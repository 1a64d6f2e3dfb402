#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conetri/cone.hpp"
#include "conetri/exact_linalg.hpp"
#include "conetri/limits.hpp"
#include "conetri/numtheory.hpp"

namespace conetri {

struct PieceRecord {
  SimplicialCone cone;
  std::optional<std::size_t> parent;
  long depth = 0;  // subdivision generations below the root
};

struct UnimodularTriangulation {
  std::vector<SimplicialCone> pieces;
  std::vector<long> piece_depth;
  std::vector<PieceRecord> provenance;
  // Stellar subdivision vectors in the order they were applied.
  std::vector<IntVector> subdivision_vectors;
  // Largest generator dilation, measured against the reference cone.
  Rational max_dilation;
};

// Repeated stellar subdivision by the nonzero par point of minimal dilation
// (against `reference`, ties lexicographic) of the first non-unimodular
// piece. Every piece containing the point is subdivided, so the result is
// a fan. `c` must lie in `reference`.
UnimodularTriangulation desingularize_baseline(const SimplicialCone& c,
                                               const SimplicialCone& reference,
                                               const Integer& par_cap = EnumerationLimits{}.par_cap);
UnimodularTriangulation desingularize_baseline(const SimplicialCone& c);

struct SpecialCone {
  SimplicialCone cone;
  IntVector witness;  // (1/p) sum z_i v'_i, the all-ones vector
};

// v'_1 = p e_1 + sum_{j>=2} (p - z_j) e_j, v'_i = e_i. Requires z_1 == 1,
// 0 <= z_i < p, p prime and some z_j (j >= 2) nonzero; otherwise v'_1 is
// not primitive and the cone is unimodular. Throws DomainError.
SpecialCone build_special_cone(const Integer& p, const IntVector& z);

struct TransferCertificate {
  Integer p;
  SimplicialCone special_cone;
  // Generator order used for c: position k holds original index permutation[k].
  std::vector<std::size_t> permutation;
  IntVector normalized_numerators;  // z after unit normalization and permutation
  std::vector<IntMatrix> coefficient_matrices;  // A^i, rows a^i_j
  std::vector<IntVector> multipliers;           // l^i_j with a^i_jk = l^i_j z_k mod p
  // Transferred rows w^i_j = a^i_j V / p before primitivization. The index
  // |det W^i| of the lattice they span is always mu(c)/p; the multiplicity
  // of the cone they span is smaller when some w^i_j is not primitive.
  std::vector<IntMatrix> transferred_rows;
  std::vector<Integer> lattice_indices;
  Rational measured_k;
  UnimodularTriangulation special_triangulation;
};

struct TransferResult {
  std::vector<SimplicialCone> pieces;
  TransferCertificate certificate;
};

// Triangulates c by transporting a unimodular triangulation of the special
// cone of multiplicity p. Each piece spans a lattice of index mu(c)/p and
// has multiplicity dividing mu(c)/p. Throws DomainError unless p is a prime
// dividing mu(c).
TransferResult prime_transfer(const SimplicialCone& c, const Integer& p,
                              const Integer& par_cap = EnumerationLimits{}.par_cap);

enum class PipelineStrategy { naive, bpft_then_naive, bpft_then_transfer };

std::string to_string(PipelineStrategy s);
std::optional<PipelineStrategy> parse_strategy(const std::string& name);

UnimodularTriangulation pipeline_finres(const SimplicialCone& c, PipelineStrategy strategy,
                                        const EnumerationLimits& limits = {});

// (d/4) * mu^{gamma d + 2 ld(d) + kappa}
HighPrecision finres_bound(unsigned d, const Integer& mu);
// gamma d + 2 ld(d) + kappa
HighPrecision finres_exponent(unsigned d);
// (d^2/64) * mu^{rho ld(mu) + epsilon}; the desingularization bound quoted
// for comparison with measured transfer constants.
HighPrecision desingularization_bound(unsigned d, const Integer& mu);

}  // namespace conetri
