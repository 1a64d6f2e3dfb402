#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conetri/cone.hpp"
#include "conetri/exact_linalg.hpp"
#include "conetri/lattice_group.hpp"

namespace conetri {

// A cone of the evolving fan together with its labelled subdivision
// history. Label s (s >= -d) is stored at xi[s + d]; labels -d..-1 are the
// root generators (label -i is root generator i), nonnegative labels are
// subdivision vectors. Labels are contiguous, so chi == xi.size() - d - 1.
struct LabeledCone {
  SimplicialCone cone;
  std::vector<IntVector> xi;
  // Label of each generator row of `cone`.
  std::vector<long> generator_indices;

  long chi() const;
  // Nonzero label value, or nullptr when the label is absent (zero).
  const IntVector* xi_at(long index) const;
};

long chi(const LabeledCone& cone);

struct ProvenanceNode {
  LabeledCone labeled;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  // Subdivision step that created this node; empty for the root.
  std::optional<std::size_t> step;
  Integer largest_prime;  // p_max(mu), 1 when unimodular
};

// One pass of the main loop: the cone that triggered it, the vector found
// and every cone it was applied to.
struct SubdivisionStep {
  std::size_t source;
  Integer prime;
  IntVector found_vector;   // as returned by the order-p search
  IntVector vector;         // primitive part, the one actually used
  Integer primitivization_factor;
  IntVector numerators;     // z_j with respect to the source cone
  std::vector<std::size_t> subdivided;
};

struct TriangulationState {
  SimplicialCone root;
  std::vector<std::size_t> current;  // ancestry indices, ascending
  std::vector<ProvenanceNode> ancestry;
  std::vector<SubdivisionStep> steps;

  std::vector<SimplicialCone> current_cones() const;
  const LabeledCone& labeled(std::size_t node) const { return ancestry[node].labeled; }
};

// First order-p element (in p_torsion order) none of whose numerators
// z_i = p * q_i, i in avoid, is an odd prime. Indices are 0-based rows of
// the group basis. Empty when no element qualifies. Throws DomainError
// unless p is a prime dividing the group order.
std::optional<ParElement> find_avoiding(const QuotientGroup& group, const Integer& p,
                                        const std::vector<std::size_t>& avoid);

struct BpftOptions {
  // Abort with InvariantViolation when a provenance edge fails
  // phi(mu(child)) <= phi(mu(parent)) - 1.
  bool abort_on_potential_violation = true;
};

// Stellar subdivision until every cone has p_max(mu) < e^{tau d}.
// Throws DomainError for d < 2 and InvariantViolation if the constrained
// search ever fails on a cone meeting the threshold.
TriangulationState run_bpft(const SimplicialCone& root, const BpftOptions& options = {});

}  // namespace conetri
