#include "conetri/lattice_group.hpp"

#include <algorithm>

#include "conetri/errors.hpp"

namespace conetri {

bool ParElement::is_zero() const { return conetri::is_zero(lattice_point); }

IntVector ParElement::numerators(const Integer& p) const {
  IntVector z(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Rational scaled = coeffs[i] * p;
    if (scaled.get_den() != 1) {
      throw DomainError("ParElement::numerators: coefficient " + to_string(coeffs[i]) +
                        " does not have denominator dividing " + p.get_str());
    }
    z[i] = scaled.get_num();
  }
  return z;
}

QuotientGroup::QuotientGroup(const IntMatrix& generators)
    : basis_(generators),
      adjugate_(1, 1),
      det_(determinant(generators)),
      snf_{IntVector{}, IntMatrix(1, 1), IntMatrix(1, 1)},
      right_inverse_(1, 1) {
  if (!generators.is_square()) throw DimensionError("QuotientGroup: generators not square");
  if (det_ == 0) throw SingularMatrixError("QuotientGroup: generators are linearly dependent");
  for (std::size_t r = 0; r < generators.rows(); ++r) {
    if (!is_primitive(generators.row(r))) {
      throw DomainError("QuotientGroup: generator " + to_string(generators.row(r)) +
                        " is not primitive");
    }
  }
  adjugate_ = adjugate(basis_);
  snf_ = smith_normal_form(basis_);
  right_inverse_ = unimodular_inverse(snf_.right);
  order_ = abs(det_);
}

ParElement QuotientGroup::reduce_to_par(const IntVector& point) const {
  const std::size_t d = dimension();
  if (point.size() != d) throw DimensionError("reduce_to_par: length mismatch");
  // point * adj(B) = det * (coordinates of point in the basis B).
  IntVector scaled = row_times(point, adjugate_);
  ParElement out{RationalVector(d), point};
  for (std::size_t i = 0; i < d; ++i) {
    Rational q(scaled[i], det_);
    q.canonicalize();
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    out.coeffs[i] = q - fl;
    if (fl != 0)
      for (std::size_t j = 0; j < d; ++j) out.lattice_point[j] -= fl * basis_(i, j);
  }
  return out;
}

IntVector QuotientGroup::cyclic_coordinates(const IntVector& point) const {
  IntVector c = row_times(point, snf_.right);
  for (std::size_t i = 0; i < c.size(); ++i)
    mpz_fdiv_r(c[i].get_mpz_t(), c[i].get_mpz_t(), snf_.diag[i].get_mpz_t());
  return c;
}

bool QuotientGroup::in_sublattice(const IntVector& point) const {
  return is_zero(cyclic_coordinates(point));
}

IntVector QuotientGroup::from_cyclic(const IntVector& residues) const {
  return row_times(residues, right_inverse_);
}

TorsionEnumerator QuotientGroup::p_torsion(const Integer& p) const {
  if (p < 2 || !mpz_divisible_p(order_.get_mpz_t(), p.get_mpz_t())) {
    throw DomainError("p_torsion: " + p.get_str() + " does not divide the group order " +
                      order_.get_str());
  }
  return TorsionEnumerator(*this, p);
}

ParPointEnumerator QuotientGroup::par_points(const Integer& cap) const {
  if (order_ > cap) {
    throw ResourceError("par_points: group order " + order_.get_str() + " exceeds cap " +
                        cap.get_str());
  }
  return ParPointEnumerator(*this);
}

TorsionEnumerator::TorsionEnumerator(const QuotientGroup& group, Integer p)
    : group_(group), p_(std::move(p)) {
  const auto& diag = group_.snf_.diag;
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (mpz_divisible_p(diag[i].get_mpz_t(), p_.get_mpz_t())) active_.push_back(i);
  counter_.assign(active_.size(), Integer(0));
  exhausted_ = active_.empty();
}

std::optional<ParElement> TorsionEnumerator::next() {
  if (exhausted_) return std::nullopt;
  // Odometer step, last coordinate fastest; wrapping to all-zero ends the stream.
  std::size_t k = counter_.size();
  while (k > 0) {
    --k;
    counter_[k] += 1;
    if (counter_[k] < p_) break;
    counter_[k] = 0;
    if (k == 0) {
      exhausted_ = true;
      return std::nullopt;
    }
  }
  const auto& diag = group_.snf_.diag;
  IntVector residues(diag.size());
  for (std::size_t a = 0; a < active_.size(); ++a) {
    const std::size_t i = active_[a];
    residues[i] = counter_[a] * (diag[i] / p_);
  }
  return group_.reduce_to_par(group_.from_cyclic(residues));
}

ParPointEnumerator::ParPointEnumerator(const QuotientGroup& group)
    : group_(group), counter_(group.dimension(), Integer(0)) {}

std::optional<ParElement> ParPointEnumerator::next() {
  if (exhausted_) return std::nullopt;
  ParElement current = group_.reduce_to_par(group_.from_cyclic(counter_));
  const auto& diag = group_.snf_.diag;
  std::size_t k = counter_.size();
  for (;;) {
    if (k == 0) {
      exhausted_ = true;
      break;
    }
    --k;
    counter_[k] += 1;
    if (counter_[k] < diag[k]) break;
    counter_[k] = 0;
  }
  return current;
}

std::vector<ParElement> collect(TorsionEnumerator e) {
  std::vector<ParElement> out;
  while (auto x = e.next()) out.push_back(std::move(*x));
  return out;
}

std::vector<ParElement> collect(ParPointEnumerator e) {
  std::vector<ParElement> out;
  while (auto x = e.next()) out.push_back(std::move(*x));
  return out;
}

}  // namespace conetri
