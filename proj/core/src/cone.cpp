#include "conetri/cone.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

#include "conetri/errors.hpp"

namespace conetri {

SimplicialCone::SimplicialCone(IntMatrix generators, Integer det, IntMatrix adjugate)
    : generators_(std::move(generators)),
      det_(std::move(det)),
      multiplicity_(abs(det_)),
      adjugate_(std::move(adjugate)) {}

SimplicialCone SimplicialCone::make(const IntMatrix& rows) {
  if (!rows.is_square()) throw DimensionError("make_cone: generator matrix is not square");
  IntMatrix prim = rows;
  for (std::size_t r = 0; r < rows.rows(); ++r) prim.set_row(r, primitive_part(rows.row(r)));
  Integer det = conetri::determinant(prim);
  if (det == 0) throw SingularMatrixError("make_cone: generators are linearly dependent");
  IntMatrix adj = adjugate(prim);
  return SimplicialCone(std::move(prim), std::move(det), std::move(adj));
}

IntVector SimplicialCone::scaled_coordinates(const IntVector& x) const {
  if (x.size() != dimension()) throw DimensionError("cone coordinates: length mismatch");
  return row_times(x, adjugate_);
}

RationalVector SimplicialCone::coordinates(const IntVector& x) const {
  IntVector s = scaled_coordinates(x);
  RationalVector q(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    q[i] = Rational(s[i], det_);
    q[i].canonicalize();
  }
  return q;
}

RationalVector SimplicialCone::coordinates(const RationalVector& x) const {
  if (x.size() != dimension()) throw DimensionError("cone coordinates: length mismatch");
  const std::size_t d = dimension();
  RationalVector q(d);
  for (std::size_t k = 0; k < d; ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) q[j] += x[k] * adjugate_(k, j);
  }
  for (auto& v : q) v /= det_;
  return q;
}

bool SimplicialCone::same_generators(const SimplicialCone& other) const {
  if (dimension() != other.dimension()) return false;
  auto sorted_rows = [](const IntMatrix& m) {
    std::vector<IntVector> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  return sorted_rows(generators_) == sorted_rows(other.generators_);
}

Rational dilation(const SimplicialCone& c, const IntVector& x) {
  IntVector s = c.scaled_coordinates(x);
  const int det_sign = sgn(c.determinant());
  Integer total = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (sgn(s[i]) * det_sign < 0) {
      Rational q(s[i], c.determinant());
      q.canonicalize();
      throw MembershipError("dilation: " + to_string(x) + " has negative coordinate " + to_string(q) + " at index " +
                            std::to_string(i));
    }
    total += s[i];
  }
  Rational out(total, c.determinant());
  out.canonicalize();
  return out;
}

bool contains(const SimplicialCone& c, const IntVector& x, Containment mode) {
  IntVector s = c.scaled_coordinates(x);
  const int det_sign = sgn(c.determinant());
  for (const auto& v : s) {
    const int sign = sgn(v) * det_sign;
    if (sign < 0 || (mode == Containment::interior && sign == 0)) return false;
  }
  return true;
}

bool contains(const SimplicialCone& c, const RationalVector& x, Containment mode) {
  for (const auto& q : c.coordinates(x)) {
    const int sign = sgn(q);
    if (sign < 0 || (mode == Containment::interior && sign == 0)) return false;
  }
  return true;
}

std::vector<SimplicialCone> stellar_subdivide(const SimplicialCone& c, const IntVector& x) {
  if (is_zero(x)) throw DomainError("stellar_subdivide: subdividing vector is zero");
  if (!is_primitive(x)) {
    throw DomainError("stellar_subdivide: subdividing vector " + to_string(x) +
                      " is not primitive");
  }
  IntVector s = c.scaled_coordinates(x);
  const int det_sign = sgn(c.determinant());
  std::size_t positive = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int sign = sgn(s[i]) * det_sign;
    if (sign < 0) {
      throw MembershipError("stellar_subdivide: " + to_string(x) + " is not in the cone " +
                            to_string(c.generator(i)) + " has negative coefficient");
    }
    if (sign > 0) ++positive;
  }
  if (positive == 1) {
    throw DomainError("stellar_subdivide: " + to_string(x) + " lies on a generator ray");
  }

  std::vector<SimplicialCone> children;
  children.reserve(positive);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (sgn(s[i]) == 0) continue;
    IntMatrix rows = c.generators();
    rows.set_row(i, x);
    SimplicialCone child = SimplicialCone::make(rows);
    // mu(child) = q_i * mu(c) = |s_i|.
    if (child.multiplicity() != abs(s[i])) {
      throw InvariantViolation("stellar_subdivide: child multiplicity " +
                               child.multiplicity().get_str() + " != " + Integer(abs(s[i])).get_str());
    }
    children.push_back(std::move(child));
  }
  return children;
}

HilbertBasis hilbert_basis(const SimplicialCone& c, const Integer& cap) {
  if (c.multiplicity() > cap) {
    throw ResourceError("hilbert_basis: multiplicity " + c.multiplicity().get_str() +
                        " exceeds cap " + cap.get_str());
  }
  if (!c.multiplicity().fits_slong_p()) {
    throw ResourceError("hilbert_basis: multiplicity too large to enumerate");
  }
  HilbertBasis out;
  for (std::size_t i = 0; i < c.dimension(); ++i) out.elements.push_back(c.generator(i));
  if (c.is_unimodular()) return out;

  struct Candidate {
    long weight;                 // mu * dilation
    std::vector<long> numerators;  // mu * coordinates, each in [0, mu)
    IntVector point;
  };
  const int det_sign = sgn(c.determinant());
  std::vector<Candidate> candidates;
  auto points = c.quotient_group().par_points(cap);
  while (auto e = points.next()) {
    if (e->is_zero()) continue;
    IntVector s = c.scaled_coordinates(e->lattice_point);
    Candidate cand{0, std::vector<long>(s.size()), std::move(e->lattice_point)};
    for (std::size_t i = 0; i < s.size(); ++i) {
      cand.numerators[i] = s[i].get_si() * det_sign;
      cand.weight += cand.numerators[i];
    }
    candidates.push_back(std::move(cand));
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.point < b.point;
  });

  // h is reducible iff some lighter irreducible e has h - e in the cone,
  // i.e. e's coordinates are dominated by h's.
  std::vector<const Candidate*> irreducible;
  for (const auto& h : candidates) {
    const bool reducible = std::any_of(irreducible.begin(), irreducible.end(), [&](const Candidate* e) {
      for (std::size_t i = 0; i < h.numerators.size(); ++i)
        if (e->numerators[i] > h.numerators[i]) return false;
      return true;
    });
    if (!reducible) irreducible.push_back(&h);
  }
  for (const Candidate* e : irreducible) out.elements.push_back(e->point);
  return out;
}

}  // namespace conetri
