#pragma once

#include <vector>

#include "conetri/exact_linalg.hpp"
#include "conetri/lattice_group.hpp"
#include "conetri/limits.hpp"

namespace conetri {

// A full-dimensional simplicial cone spanned by primitive, linearly
// independent integer generators (the rows of generators()).
class SimplicialCone {
 public:
  // Divides each row by its coordinate gcd (the ray is preserved) and
  // computes the multiplicity. Throws SingularMatrixError, DimensionError.
  static SimplicialCone make(const IntMatrix& rows);

  std::size_t dimension() const { return generators_.rows(); }
  const IntMatrix& generators() const { return generators_; }
  IntVector generator(std::size_t i) const { return generators_.row(i); }
  const Integer& multiplicity() const { return multiplicity_; }
  bool is_unimodular() const { return multiplicity_ == 1; }

  // Signed determinant of generators(); coordinates are scaled by it.
  const Integer& determinant() const { return det_; }

  // c with c[i] == det * q[i], where x == sum_i q[i] * generator(i).
  IntVector scaled_coordinates(const IntVector& x) const;
  RationalVector coordinates(const IntVector& x) const;
  RationalVector coordinates(const RationalVector& x) const;

  QuotientGroup quotient_group() const { return QuotientGroup(generators_); }

  // Same generator set, ignoring order.
  bool same_generators(const SimplicialCone& other) const;

  friend bool operator==(const SimplicialCone& a, const SimplicialCone& b) {
    return a.generators_ == b.generators_;
  }

 private:
  SimplicialCone(IntMatrix generators, Integer det, IntMatrix adjugate);

  IntMatrix generators_;
  Integer det_;
  Integer multiplicity_;
  IntMatrix adjugate_;
};

enum class Containment { closed, interior };

// Sum of the coordinates of x: the least c with x in c * Delta_C.
// Throws MembershipError when some coordinate is negative.
Rational dilation(const SimplicialCone& c, const IntVector& x);

bool contains(const SimplicialCone& c, const IntVector& x, Containment mode);
bool contains(const SimplicialCone& c, const RationalVector& x, Containment mode);

// One child per generator with positive coordinate in x, formed by
// replacing that generator with x (generator order is kept). x must be a
// primitive nonzero point of c that is not on a generator ray.
std::vector<SimplicialCone> stellar_subdivide(const SimplicialCone& c, const IntVector& x);

// Generators first, then the irreducible nonzero par points ordered by
// dilation and lexicographically.
struct HilbertBasis {
  std::vector<IntVector> elements;
};

HilbertBasis hilbert_basis(const SimplicialCone& c,
                           const Integer& cap = EnumerationLimits{}.hilbert_cap);

}  // namespace conetri
