#include "conetri/unimodular.hpp"

#include <algorithm>
#include <numeric>

#include "conetri/bpft.hpp"
#include "conetri/errors.hpp"
#include "conetri/lattice_group.hpp"

namespace conetri {

namespace {

// Leaves of a growing subdivision tree; leaves stay in insertion order.
class FanBuilder {
 public:
  explicit FanBuilder(const SimplicialCone& start) {
    records_.push_back(PieceRecord{start, std::nullopt, 0});
    leaves_.push_back(0);
  }

  std::optional<std::size_t> first_singular_leaf() const {
    for (std::size_t id : leaves_)
      if (!records_[id].cone.is_unimodular()) return id;
    return std::nullopt;
  }

  const SimplicialCone& cone(std::size_t id) const { return records_[id].cone; }

  // Stellar subdivision of every leaf that contains x and does not already
  // have x as a generator.
  void subdivide_all(const IntVector& x) {
    std::vector<std::size_t> next;
    std::vector<std::size_t> appended;
    for (std::size_t id : leaves_) {
      const SimplicialCone e = records_[id].cone;
      IntVector s = e.scaled_coordinates(x);
      const int det_sign = sgn(e.determinant());
      bool inside = true;
      std::size_t positive = 0;
      for (const auto& v : s) {
        const int sign = sgn(v) * det_sign;
        if (sign < 0) inside = false;
        if (sign > 0) ++positive;
      }
      if (!inside || positive <= 1) {
        next.push_back(id);
        continue;
      }
      const long depth = records_[id].depth + 1;
      for (auto& child : stellar_subdivide(e, x)) {
        if (child.multiplicity() >= e.multiplicity()) {
          throw InvariantViolation("desingularize_baseline: multiplicity did not decrease");
        }
        records_.push_back(PieceRecord{std::move(child), id, depth});
        appended.push_back(records_.size() - 1);
      }
    }
    next.insert(next.end(), appended.begin(), appended.end());
    leaves_ = std::move(next);
    vectors_.push_back(x);
  }

  UnimodularTriangulation finish(const SimplicialCone& reference) && {
    UnimodularTriangulation out;
    for (std::size_t id : leaves_) {
      out.pieces.push_back(records_[id].cone);
      out.piece_depth.push_back(records_[id].depth);
    }
    out.provenance = std::move(records_);
    out.subdivision_vectors = std::move(vectors_);
    out.max_dilation = 0;
    for (const auto& piece : out.pieces)
      for (std::size_t j = 0; j < piece.dimension(); ++j)
        out.max_dilation = std::max(out.max_dilation, dilation(reference, piece.generator(j)));
    return out;
  }

 private:
  std::vector<PieceRecord> records_;
  std::vector<std::size_t> leaves_;
  std::vector<IntVector> vectors_;
};

Rational max_generator_dilation(const std::vector<SimplicialCone>& pieces,
                                const SimplicialCone& reference) {
  Rational best = 0;
  for (const auto& piece : pieces)
    for (std::size_t j = 0; j < piece.dimension(); ++j)
      best = std::max(best, dilation(reference, piece.generator(j)));
  return best;
}

// Appends the subdivision tree `sub`, whose root is the cone at node
// `parent` of `into`.
void graft(UnimodularTriangulation& into, std::size_t parent, const UnimodularTriangulation& sub) {
  const long base_depth = into.provenance[parent].depth;
  std::vector<std::size_t> node_map(sub.provenance.size());
  node_map[0] = parent;
  for (std::size_t i = 1; i < sub.provenance.size(); ++i) {
    const PieceRecord& rec = sub.provenance[i];
    into.provenance.push_back(PieceRecord{rec.cone, node_map[*rec.parent], rec.depth + base_depth});
    node_map[i] = into.provenance.size() - 1;
  }
  for (std::size_t i = 0; i < sub.pieces.size(); ++i) {
    into.pieces.push_back(sub.pieces[i]);
    into.piece_depth.push_back(sub.piece_depth[i] + base_depth);
  }
  into.subdivision_vectors.insert(into.subdivision_vectors.end(), sub.subdivision_vectors.begin(),
                                  sub.subdivision_vectors.end());
}

}  // namespace

UnimodularTriangulation desingularize_baseline(const SimplicialCone& c,
                                               const SimplicialCone& reference,
                                               const Integer& par_cap) {
  if (c.dimension() < 2) throw DomainError("desingularize_baseline: dimension must be at least 2");
  if (c.dimension() != reference.dimension()) {
    throw DimensionError("desingularize_baseline: reference cone has a different dimension");
  }
  FanBuilder fan(c);
  while (auto id = fan.first_singular_leaf()) {
    const SimplicialCone& piece = fan.cone(*id);
    std::optional<ParElement> best;
    Rational best_dilation;
    auto points = piece.quotient_group().par_points(par_cap);
    while (auto e = points.next()) {
      if (e->is_zero()) continue;
      Rational dil = dilation(reference, e->lattice_point);
      if (!best || dil < best_dilation ||
          (dil == best_dilation && e->lattice_point < best->lattice_point)) {
        best_dilation = dil;
        best = std::move(e);
      }
    }
    // A minimal point is primitive: its primitive part is a shorter par point.
    fan.subdivide_all(primitive_part(best->lattice_point));
  }
  return std::move(fan).finish(reference);
}

UnimodularTriangulation desingularize_baseline(const SimplicialCone& c) {
  return desingularize_baseline(c, c);
}

SpecialCone build_special_cone(const Integer& p, const IntVector& z) {
  const std::size_t d = z.size();
  if (d < 2) throw DomainError("build_special_cone: dimension must be at least 2");
  if (!is_prime(p)) throw DomainError("build_special_cone: " + p.get_str() + " is not prime");
  if (z[0] != 1) throw DomainError("build_special_cone: z_1 must equal 1");
  bool any_nonzero = false;
  for (std::size_t j = 0; j < d; ++j) {
    if (z[j] < 0 || z[j] >= p) throw DomainError("build_special_cone: z_j must lie in [0, p)");
    if (j > 0 && z[j] != 0) any_nonzero = true;
  }
  if (!any_nonzero) {
    throw DomainError(
        "build_special_cone: z = (1, 0, ..., 0) makes v'_1 = p * (1, ..., 1) non-primitive");
  }
  IntMatrix rows = IntMatrix::identity(d);
  rows(0, 0) = p;
  for (std::size_t j = 1; j < d; ++j) rows(0, j) = p - z[j];
  SimplicialCone cone = SimplicialCone::make(rows);
  if (cone.multiplicity() != p) {
    throw InvariantViolation("build_special_cone: multiplicity " + cone.multiplicity().get_str() +
                             " != " + p.get_str());
  }
  IntVector witness(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) witness[j] += z[i] * cone.generators()(i, j);
  for (auto& w : witness) {
    if (!mpz_divisible_p(w.get_mpz_t(), p.get_mpz_t()))
      throw InvariantViolation("build_special_cone: witness is not integral");
    mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), p.get_mpz_t());
  }
  return SpecialCone{std::move(cone), std::move(witness)};
}

TransferResult prime_transfer(const SimplicialCone& c, const Integer& p, const Integer& par_cap) {
  if (!is_prime(p)) throw DomainError("prime_transfer: " + p.get_str() + " is not prime");
  if (!mpz_divisible_p(c.multiplicity().get_mpz_t(), p.get_mpz_t())) {
    throw DomainError("prime_transfer: " + p.get_str() + " does not divide multiplicity " +
                      c.multiplicity().get_str());
  }
  const std::size_t d = c.dimension();
  const QuotientGroup group = c.quotient_group();
  auto first = group.p_torsion(p).next();
  if (!first) throw InvariantViolation("prime_transfer: no element of order p");
  const IntVector z = first->numerators(p);

  // Scale by the inverse of the first unit coefficient so it becomes 1,
  // then move that index to the front.
  std::size_t unit = d;
  for (std::size_t i = 0; i < d; ++i) {
    if (z[i] != 0) {
      unit = i;
      break;
    }
  }
  if (unit == d) throw InvariantViolation("prime_transfer: order-p element has no unit coefficient");
  Integer inverse;
  mpz_invert(inverse.get_mpz_t(), z[unit].get_mpz_t(), p.get_mpz_t());

  TransferCertificate cert{p, SimplicialCone::make(IntMatrix::identity(d)), {}, IntVector(d), {}, {}, {}, {}, 0, {}};
  cert.permutation.push_back(unit);
  for (std::size_t i = 0; i < d; ++i)
    if (i != unit) cert.permutation.push_back(i);
  IntMatrix v_perm(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t src = cert.permutation[k];
    Integer zk = z[src] * inverse;
    mpz_fdiv_r(zk.get_mpz_t(), zk.get_mpz_t(), p.get_mpz_t());
    cert.normalized_numerators[k] = zk;
    v_perm.set_row(k, c.generator(src));
  }

  SpecialCone special = build_special_cone(p, cert.normalized_numerators);
  cert.special_cone = special.cone;
  cert.special_triangulation = desingularize_baseline(special.cone, special.cone, par_cap);
  cert.measured_k = cert.special_triangulation.max_dilation;

  const Integer det_v = special.cone.determinant();
  Integer p_pow = 1;
  mpz_pow_ui(p_pow.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d - 1));

  std::vector<SimplicialCone> pieces;
  for (const SimplicialCone& f : cert.special_triangulation.pieces) {
    IntMatrix w_prime = f.generators();
    // Orient so det(W') == det(V') / p, which makes det(A / p) == +1/p.
    if (sgn(f.determinant()) != sgn(det_v)) w_prime.swap_rows(0, 1);

    IntMatrix a(d, d);
    IntVector l(d);
    IntMatrix w(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      // a_j = p * (coordinates of w'_j in the basis V').
      const IntVector scaled = special.cone.scaled_coordinates(w_prime.row(j));
      for (std::size_t k = 0; k < d; ++k) {
        Integer num = scaled[k] * p;
        if (!mpz_divisible_p(num.get_mpz_t(), det_v.get_mpz_t()))
          throw InvariantViolation("prime_transfer: non-integral coefficient a_jk");
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), det_v.get_mpz_t());
        if (num < 0) throw InvariantViolation("prime_transfer: piece leaves the special cone");
        a(j, k) = num;
      }
      // With z_1 == 1 the multiplier is forced: l_j = a_j1 mod p.
      mpz_fdiv_r(l[j].get_mpz_t(), a(j, 0).get_mpz_t(), p.get_mpz_t());
      for (std::size_t k = 0; k < d; ++k) {
        Integer r = a(j, k) - l[j] * cert.normalized_numerators[k];
        if (!mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t()))
          throw InvariantViolation("prime_transfer: a_jk - l_j z_k is not divisible by p");
      }
      IntVector wj = row_times(a.row(j), v_perm);
      for (auto& x : wj) {
        if (!mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t()))
          throw InvariantViolation("prime_transfer: transferred generator is not integral");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
      }
      w.set_row(j, wj);
    }
    if (determinant(a) != p_pow) {
      throw InvariantViolation("prime_transfer: det(A) = " + determinant(a).get_str() +
                               ", expected p^(d-1) = " + p_pow.get_str());
    }
    Integer index = abs(determinant(w));
    if (index * p != c.multiplicity()) {
      throw InvariantViolation("prime_transfer: lattice index " + index.get_str() +
                               " times p != " + c.multiplicity().get_str());
    }
    SimplicialCone piece = SimplicialCone::make(w);
    cert.transferred_rows.push_back(w);
    cert.lattice_indices.push_back(std::move(index));
    cert.coefficient_matrices.push_back(std::move(a));
    cert.multipliers.push_back(std::move(l));
    pieces.push_back(std::move(piece));
  }
  return TransferResult{std::move(pieces), std::move(cert)};
}

std::string to_string(PipelineStrategy s) {
  switch (s) {
    case PipelineStrategy::naive: return "naive";
    case PipelineStrategy::bpft_then_naive: return "bpft-naive";
    case PipelineStrategy::bpft_then_transfer: return "bpft-transfer";
  }
  return "unknown";
}

std::optional<PipelineStrategy> parse_strategy(const std::string& name) {
  if (name == "naive") return PipelineStrategy::naive;
  if (name == "bpft-naive" || name == "bpft_then_naive") return PipelineStrategy::bpft_then_naive;
  if (name == "bpft-transfer" || name == "bpft_then_transfer")
    return PipelineStrategy::bpft_then_transfer;
  return std::nullopt;
}

UnimodularTriangulation pipeline_finres(const SimplicialCone& c, PipelineStrategy strategy,
                                        const EnumerationLimits& limits) {
  if (c.dimension() < 2) throw DomainError("pipeline_finres: dimension must be at least 2");
  if (strategy == PipelineStrategy::naive) return desingularize_baseline(c, c, limits.par_cap);

  const TriangulationState bpft = run_bpft(c);
  UnimodularTriangulation out;
  for (const auto& node : bpft.ancestry) {
    out.provenance.push_back(PieceRecord{node.labeled.cone, node.parent, node.labeled.chi() + 1});
  }
  for (const auto& step : bpft.steps) out.subdivision_vectors.push_back(step.vector);

  for (std::size_t id : bpft.current) {
    const SimplicialCone& piece = bpft.ancestry[id].labeled.cone;
    if (strategy == PipelineStrategy::bpft_then_naive) {
      graft(out, id, desingularize_baseline(piece, c, limits.par_cap));
      continue;
    }
    // Peel off prime factors, largest first, until every cone is unimodular.
    std::vector<std::pair<std::size_t, SimplicialCone>> work{{id, piece}};
    while (!work.empty()) {
      auto [parent, cone] = std::move(work.back());
      work.pop_back();
      if (cone.is_unimodular()) {
        out.pieces.push_back(cone);
        out.piece_depth.push_back(out.provenance[parent].depth);
        continue;
      }
      const Integer p = p_max(cone.multiplicity());
      TransferResult tr = prime_transfer(cone, p, limits.par_cap);
      const long depth = out.provenance[parent].depth + 1;
      for (auto it = tr.pieces.rbegin(); it != tr.pieces.rend(); ++it) {
        out.provenance.push_back(PieceRecord{*it, parent, depth});
        work.emplace_back(out.provenance.size() - 1, *it);
      }
    }
  }
  out.max_dilation = max_generator_dilation(out.pieces, c);
  return out;
}

HighPrecision finres_exponent(unsigned d) {
  using boost::multiprecision::log;
  const HighPrecision ld_d = log(HighPrecision(d)) / log(HighPrecision(2));
  return BoundConstants::gamma() * d + 2 * ld_d + BoundConstants::kappa();
}

HighPrecision finres_bound(unsigned d, const Integer& mu) {
  using boost::multiprecision::pow;
  return HighPrecision(d) / 4 * pow(to_high_precision(mu), finres_exponent(d));
}

HighPrecision desingularization_bound(unsigned d, const Integer& mu) {
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  const HighPrecision m = to_high_precision(mu);
  const HighPrecision ld_mu = log(m) / log(HighPrecision(2));
  return HighPrecision(d) * d / 64 * pow(m, BoundConstants::rho() * ld_mu + BoundConstants::epsilon());
}

}  // namespace conetri
