#pragma once

#include <optional>
#include <vector>

#include "conetri/exact_linalg.hpp"
#include "conetri/limits.hpp"

namespace conetri {

// A point of the half-open parallelepiped spanned by the group basis:
// lattice_point == sum_i coeffs[i] * basis_row_i with 0 <= coeffs[i] < 1.
struct ParElement {
  RationalVector coeffs;
  IntVector lattice_point;

  bool is_zero() const;
  // p * coeffs[i], integral whenever the element has order dividing p.
  IntVector numerators(const Integer& p) const;
};

class TorsionEnumerator;
class ParPointEnumerator;

// Z^d / U for U the row lattice of a nonsingular matrix with primitive
// rows. Elements are addressed through the Smith form: with
// left * basis * right == diag(s), the map x -> (x * right) mod s is an
// isomorphism onto the product of the cyclic groups Z/s_i.
class QuotientGroup {
 public:
  // Throws SingularMatrixError, DimensionError, or DomainError for a
  // non-primitive row.
  explicit QuotientGroup(const IntMatrix& generators);

  const IntMatrix& basis() const { return basis_; }
  const SNFDecomposition& snf() const { return snf_; }
  const Integer& order() const { return order_; }
  std::size_t dimension() const { return basis_.rows(); }

  ParElement reduce_to_par(const IntVector& point) const;

  // Residues of the point in the cyclic decomposition.
  IntVector cyclic_coordinates(const IntVector& point) const;
  bool in_sublattice(const IntVector& point) const;

  // Nonzero elements of order dividing p, lexicographic over the torsion
  // coordinates. Throws DomainError unless p divides the order.
  TorsionEnumerator p_torsion(const Integer& p) const;

  // Every residue class once, starting with the origin. Throws
  // ResourceError when the order exceeds the cap.
  ParPointEnumerator par_points(const Integer& cap = EnumerationLimits{}.par_cap) const;

 private:
  friend class TorsionEnumerator;
  friend class ParPointEnumerator;

  IntVector from_cyclic(const IntVector& residues) const;

  IntMatrix basis_;
  IntMatrix adjugate_;
  Integer det_;
  SNFDecomposition snf_;
  IntMatrix right_inverse_;
  Integer order_;
};

class TorsionEnumerator {
 public:
  std::optional<ParElement> next();

 private:
  friend class QuotientGroup;
  TorsionEnumerator(const QuotientGroup& group, Integer p);

  QuotientGroup group_;
  Integer p_;
  std::vector<std::size_t> active_;  // invariant factors divisible by p
  std::vector<Integer> counter_;
  bool exhausted_ = false;
};

class ParPointEnumerator {
 public:
  std::optional<ParElement> next();

 private:
  friend class QuotientGroup;
  explicit ParPointEnumerator(const QuotientGroup& group);

  QuotientGroup group_;
  std::vector<Integer> counter_;
  bool exhausted_ = false;
};

std::vector<ParElement> collect(TorsionEnumerator e);
std::vector<ParElement> collect(ParPointEnumerator e);

}  // namespace conetri
