#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conetri/bpft.hpp"
#include "conetri/cone.hpp"
#include "conetri/numtheory.hpp"
#include "conetri/unimodular.hpp"

namespace conetri {

// A number that is exact when rational and otherwise known to 50 digits.
struct Quantity {
  std::optional<Rational> exact;
  HighPrecision approx;

  static Quantity of(const Rational& q);
  static Quantity of(const HighPrecision& x);
  std::string to_string() const;  // "num/den" when exact, else decimal
};

// One audited inequality measured <= bound, aggregated over all checked
// items: measured/bound_value describe the item with the least slack.
struct BoundReport {
  std::string bound_name;
  Quantity bound_value;
  Quantity measured;
  bool satisfied = true;
  bool skipped = false;
  bool near_tie = false;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::optional<IntVector> witness;
  std::optional<HighPrecision> implied_exponent;
  std::string note;
};

struct ValidityReport {
  std::size_t samples = 0;
  std::size_t covered_once = 0;
  std::size_t uncovered = 0;
  std::size_t multiply_covered = 0;
  std::size_t containment_failures = 0;
  std::size_t redraws = 0;

  bool valid() const { return uncovered == 0 && multiply_covered == 0 && containment_failures == 0; }
};

// Every piece with mu > 1 has ln(p_max(mu)) < f_log.
bool check_f_triangulation(const std::vector<SimplicialCone>& pieces, const HighPrecision& f_log);
// f_log = tau * d.
bool check_f_triangulation(const std::vector<SimplicialCone>& pieces, unsigned d);

// Seeded Monte Carlo certificate that the pieces tile the root: points
// sum r_i v_i with r_i = a_i / 2^20, a_i in [1, 2^20), are counted by the
// number of piece interiors containing them. Points on a piece boundary
// are redrawn. containment_failures counts pieces not inside the root.
ValidityReport check_partition(const SimplicialCone& root, const std::vector<SimplicialCone>& pieces,
                               std::size_t samples, std::uint64_t seed);

// Exact test whether two cones of dimension 2 or 3 have intersecting
// interiors. Throws DomainError for other dimensions.
bool interiors_intersect(const SimplicialCone& a, const SimplicialCone& b);
// Number of piece pairs with overlapping interiors (d <= 3, quadratic).
std::size_t count_overlapping_pairs(const std::vector<SimplicialCone>& pieces);

// Labelled subdivision vectors (label s >= 0, vector) against d 2^s and
// h_s, dilations taken in the root.
std::vector<BoundReport> audit_labelled_vectors(const SimplicialCone& root,
                                                const std::vector<std::pair<long, IntVector>>& labelled);
// chi <= phi(mu(root)) - 1 for every listed chi.
BoundReport audit_chi(const SimplicialCone& root, const std::vector<long>& chis);
// Generator and Hilbert-basis dilations of the pieces against
// (d/4) mu(root); cones above the cap skip the Hilbert-basis check.
std::vector<BoundReport> audit_final_cones(const std::vector<SimplicialCone>& pieces, const SimplicialCone& root,
                                           const Integer& hilbert_cap = EnumerationLimits{}.hilbert_cap);
// p_max(mu) < e^{tau d} for every piece, as a report.
BoundReport audit_f_triangulation(const std::vector<SimplicialCone>& pieces, unsigned d);

// Bounds on a finished BPFT run: xi dilations against d 2^s and h_s, the
// potential drop per edge, chi against phi(mu(C)) - 1, strict decrease of
// mu, generator and Hilbert-basis dilations against (d/4) mu(C), and the
// e^{tau d} predicate. Hilbert bases above the cap are skipped.
std::vector<BoundReport> audit_bpft_bounds(const TriangulationState& state,
                                           const Integer& hilbert_cap = EnumerationLimits{}.hilbert_cap);

// Max generator dilation of unimodular pieces against
// (d/4) mu^{gamma d + 2 ld(d) + kappa}, with a 1e-20 guard band.
BoundReport audit_unimodular_bounds(const UnimodularTriangulation& t, const SimplicialCone& root);
BoundReport audit_unimodular_bounds(const std::vector<SimplicialCone>& pieces,
                                    const SimplicialCone& root);

// For each cone D of an e^{tau d}-triangulation: the product over the prime
// decomposition of mu(D) of p^{alpha (rho ld(p) + epsilon)} is at most
// mu(C)^{rho tau ld(e) d + epsilon}.
BoundReport audit_transfer_exponents(const std::vector<SimplicialCone>& pieces,
                                     const SimplicialCone& root);

bool all_satisfied(const std::vector<BoundReport>& reports);

}  // namespace conetri
