#include "conetri/bpft.hpp"

#include <algorithm>

#include "conetri/errors.hpp"
#include "conetri/numtheory.hpp"

namespace conetri {

namespace {

Integer largest_prime_or_one(const Integer& mu) { return mu > 1 ? p_max(mu) : Integer(1); }

bool is_odd_prime(const Integer& z) { return z > 2 && is_prime(z); }

}  // namespace

long LabeledCone::chi() const {
  return static_cast<long>(xi.size()) - static_cast<long>(cone.dimension()) - 1;
}

const IntVector* LabeledCone::xi_at(long index) const {
  const long offset = index + static_cast<long>(cone.dimension());
  if (offset < 0 || offset >= static_cast<long>(xi.size())) return nullptr;
  return &xi[static_cast<std::size_t>(offset)];
}

long chi(const LabeledCone& cone) { return cone.chi(); }

std::vector<SimplicialCone> TriangulationState::current_cones() const {
  std::vector<SimplicialCone> out;
  out.reserve(current.size());
  for (std::size_t id : current) out.push_back(ancestry[id].labeled.cone);
  return out;
}

std::optional<ParElement> find_avoiding(const QuotientGroup& group, const Integer& p,
                                        const std::vector<std::size_t>& avoid) {
  if (!is_prime(p)) throw DomainError("find_avoiding: " + p.get_str() + " is not prime");
  for (std::size_t i : avoid) {
    if (i >= group.dimension()) throw DimensionError("find_avoiding: index out of range");
  }
  auto torsion = group.p_torsion(p);
  while (auto element = torsion.next()) {
    const IntVector z = element->numerators(p);
    const bool ok = std::none_of(avoid.begin(), avoid.end(),
                                 [&](std::size_t i) { return is_odd_prime(z[i]); });
    if (ok) return element;
  }
  return std::nullopt;
}

TriangulationState run_bpft(const SimplicialCone& root, const BpftOptions& options) {
  const std::size_t d = root.dimension();
  if (d < 2) throw DomainError("run_bpft: dimension must be at least 2");

  TriangulationState state{root, {}, {}, {}};
  {
    LabeledCone labeled{root, {}, {}};
    // xi[k] holds label k - d; label -i is generator i (1-based).
    for (std::size_t k = 0; k < d; ++k) labeled.xi.push_back(root.generator(d - 1 - k));
    for (std::size_t i = 0; i < d; ++i) labeled.generator_indices.push_back(-static_cast<long>(i) - 1);
    state.ancestry.push_back(
        ProvenanceNode{std::move(labeled), std::nullopt, {}, std::nullopt,
                       largest_prime_or_one(root.multiplicity())});
    state.current.push_back(0);
  }

  std::vector<std::size_t> all_indices(d);
  for (std::size_t i = 0; i < d; ++i) all_indices[i] = i;

  for (;;) {
    // Cone selection: maximal multiplicity among those over the threshold,
    // ties to the earliest inserted.
    std::optional<std::size_t> chosen;
    for (std::size_t id : state.current) {
      const ProvenanceNode& node = state.ancestry[id];
      if (node.largest_prime < 2 || !threshold_exceeded(node.largest_prime, static_cast<unsigned>(d)))
        continue;
      if (!chosen || node.labeled.cone.multiplicity() >
                         state.ancestry[*chosen].labeled.cone.multiplicity())
        chosen = id;
    }
    if (!chosen) break;

    const std::size_t source = *chosen;
    const SimplicialCone source_cone = state.ancestry[source].labeled.cone;
    const Integer p = state.ancestry[source].largest_prime;
    auto found = find_avoiding(source_cone.quotient_group(), p, all_indices);
    if (!found) {
      throw InvariantViolation("run_bpft: no order-" + p.get_str() +
                               " element avoiding odd primes in cone of multiplicity " +
                               source_cone.multiplicity().get_str() +
                               " although p meets the existence threshold");
    }

    SubdivisionStep step;
    step.source = source;
    step.prime = p;
    step.found_vector = found->lattice_point;
    step.primitivization_factor = content(found->lattice_point);
    step.vector = primitive_part(found->lattice_point);
    step.numerators = found->numerators(p);
    const std::size_t step_id = state.steps.size();
    const IntVector& x = step.vector;

    std::vector<std::size_t> next_current;
    std::vector<std::size_t> appended;
    for (std::size_t id : state.current) {
      const SimplicialCone e = state.ancestry[id].labeled.cone;
      IntVector s = e.scaled_coordinates(x);
      const int det_sign = sgn(e.determinant());
      bool inside = true;
      std::size_t positive = 0;
      for (const auto& v : s) {
        const int sign = sgn(v) * det_sign;
        if (sign < 0) inside = false;
        if (sign > 0) ++positive;
      }
      // x on a generator ray of E leaves E unchanged.
      if (!inside || positive <= 1) {
        next_current.push_back(id);
        continue;
      }

      const LabeledCone parent = state.ancestry[id].labeled;
      const long nu = parent.chi();
      std::vector<SimplicialCone> children = stellar_subdivide(e, x);
      std::size_t child_k = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (sgn(s[i]) == 0) continue;
        SimplicialCone& child_cone = children[child_k++];
        if (child_cone.multiplicity() >= parent.cone.multiplicity()) {
          throw InvariantViolation("run_bpft: multiplicity did not decrease (" +
                                   child_cone.multiplicity().get_str() + " >= " +
                                   parent.cone.multiplicity().get_str() + ")");
        }
        if (options.abort_on_potential_violation &&
            phi(child_cone.multiplicity()) > phi(parent.cone.multiplicity()) - 1) {
          throw InvariantViolation("run_bpft: potential did not drop by 1 from multiplicity " +
                                   parent.cone.multiplicity().get_str() + " to " +
                                   child_cone.multiplicity().get_str() + " via " + to_string(x));
        }
        LabeledCone labeled{child_cone, {}, parent.generator_indices};
        // Inherit labels up to nu, then label nu + 1 := x.
        labeled.xi.assign(parent.xi.begin(), parent.xi.begin() + (nu + 1 + static_cast<long>(d)));
        labeled.xi.push_back(x);
        labeled.generator_indices[i] = nu + 1;
        Integer largest = largest_prime_or_one(child_cone.multiplicity());
        state.ancestry.push_back(
            ProvenanceNode{std::move(labeled), id, {}, step_id, std::move(largest)});
        const std::size_t child_id = state.ancestry.size() - 1;
        state.ancestry[id].children.push_back(child_id);
        appended.push_back(child_id);
      }
      step.subdivided.push_back(id);
    }
    if (step.subdivided.empty() ||
        std::find(step.subdivided.begin(), step.subdivided.end(), source) == step.subdivided.end()) {
      throw InvariantViolation("run_bpft: the found vector did not subdivide its source cone");
    }
    next_current.insert(next_current.end(), appended.begin(), appended.end());
    state.current = std::move(next_current);
    state.steps.push_back(std::move(step));
  }
  return state;
}

}  // namespace conetri
