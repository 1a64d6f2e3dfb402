#include "conetri/verify.hpp"

#include <algorithm>
#include <limits>

#include "conetri/errors.hpp"
#include "conetri/random.hpp"

namespace conetri {

namespace {

const HighPrecision& guard_band() {
  static const HighPrecision band("1e-20");
  return band;
}

// Tracks the item with the least slack (largest measured/bound) for
// bounds that are exact positive rationals.
class RationalBoundTracker {
 public:
  explicit RationalBoundTracker(std::string name) { report_.bound_name = std::move(name); }

  void check(const Rational& measured, const Rational& bound, const IntVector& witness) {
    ++report_.checked;
    const bool ok = measured <= bound;
    if (!ok) ++report_.violations;
    const Rational ratio = bound > 0 ? Rational(measured / bound) : Rational(measured + 1);
    if (!have_ || ratio > worst_ratio_) {
      have_ = true;
      worst_ratio_ = ratio;
      report_.measured = Quantity::of(measured);
      report_.bound_value = Quantity::of(bound);
      if (!ok || !report_.witness) report_.witness = witness;
    }
    if (!ok && report_.satisfied) {
      report_.satisfied = false;
      report_.witness = witness;
    }
  }

  BoundReport finish() && {
    if (!have_) {
      report_.measured = Quantity::of(Rational(0));
      report_.bound_value = Quantity::of(Rational(0));
      report_.note = "nothing to check";
    }
    if (report_.satisfied) report_.witness.reset();
    return std::move(report_);
  }

  BoundReport& report() { return report_; }

 private:
  BoundReport report_;
  bool have_ = false;
  Rational worst_ratio_;
};

// Integer interior/closed sign test with an __int128 fast path.
class PieceTester {
 public:
  explicit PieceTester(const SimplicialCone& cone) : det_sign_(sgn(cone.determinant())) {
    const std::size_t d = cone.dimension();
    adj_.reserve(d);
    fast_ = true;
    for (std::size_t k = 0; k < d; ++k) {
      IntVector e(d);
      e[k] = 1;
      IntVector row = cone.scaled_coordinates(e);
      for (const auto& v : row)
        if (!v.fits_slong_p() || abs(v) > Integer("1000000000000")) fast_ = false;
      adj_.push_back(std::move(row));
    }
    if (fast_) {
      adj_fast_.assign(d * d, 0);
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < d; ++j) adj_fast_[k * d + j] = adj_[k][j].get_si();
    }
  }

  // -1 outside, 0 on the boundary, 1 interior.
  int classify(const IntVector& x, const std::vector<long>* x_fast) const {
    const std::size_t d = adj_.size();
    bool boundary = false;
    if (fast_ && x_fast) {
      for (std::size_t j = 0; j < d; ++j) {
        __int128 s = 0;
        for (std::size_t k = 0; k < d; ++k)
          s += static_cast<__int128>((*x_fast)[k]) * adj_fast_[k * d + j];
        const int sign = (s > 0) - (s < 0);
        if (sign * det_sign_ < 0) return -1;
        if (sign == 0) boundary = true;
      }
    } else {
      for (std::size_t j = 0; j < d; ++j) {
        Integer s = 0;
        for (std::size_t k = 0; k < d; ++k) s += x[k] * adj_[k][j];
        const int sign = sgn(s) * det_sign_;
        if (sign < 0) return -1;
        if (sign == 0) boundary = true;
      }
    }
    return boundary ? 0 : 1;
  }

 private:
  int det_sign_;
  bool fast_;
  std::vector<IntVector> adj_;
  std::vector<long> adj_fast_;
};

IntVector cross(const IntVector& a, const IntVector& b) {
  return IntVector{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Inward facet normals: x is in the cone iff n . x >= 0 for every normal.
std::vector<IntVector> inward_normals(const SimplicialCone& c) {
  const std::size_t d = c.dimension();
  std::vector<IntVector> normals(d, IntVector(d));
  const int det_sign = sgn(c.determinant());
  for (std::size_t k = 0; k < d; ++k) {
    IntVector e(d);
    e[k] = 1;
    IntVector row = c.scaled_coordinates(e);
    for (std::size_t j = 0; j < d; ++j) normals[j][k] = row[j] * det_sign;
  }
  return normals;
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

Quantity Quantity::of(const Rational& q) { return Quantity{q, to_high_precision(q)}; }
Quantity Quantity::of(const HighPrecision& x) { return Quantity{std::nullopt, x}; }

std::string Quantity::to_string() const {
  if (exact) return conetri::to_string(*exact);
  return to_decimal_string(approx, 30);
}

bool check_f_triangulation(const std::vector<SimplicialCone>& pieces, const HighPrecision& f_log) {
  for (const auto& piece : pieces) {
    if (piece.is_unimodular()) continue;
    if (compare_log_threshold(p_max(piece.multiplicity()), f_log).exceeded) return false;
  }
  return true;
}

bool check_f_triangulation(const std::vector<SimplicialCone>& pieces, unsigned d) {
  for (const auto& piece : pieces) {
    if (piece.is_unimodular()) continue;
    if (threshold_exceeded(p_max(piece.multiplicity()), d)) return false;
  }
  return true;
}

ValidityReport check_partition(const SimplicialCone& root, const std::vector<SimplicialCone>& pieces,
                               std::size_t samples, std::uint64_t seed) {
  ValidityReport report;
  report.samples = samples;
  const std::size_t d = root.dimension();
  for (const auto& piece : pieces) {
    if (piece.dimension() != d) {
      ++report.containment_failures;
      continue;
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (!contains(root, piece.generator(j), Containment::closed)) {
        ++report.containment_failures;
        break;
      }
    }
  }

  std::vector<PieceTester> testers;
  testers.reserve(pieces.size());
  for (const auto& piece : pieces)
    if (piece.dimension() == d) testers.emplace_back(piece);

  bool root_fast = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (abs(root.generators()(i, j)) > Integer(1L << 30)) root_fast = false;

  constexpr std::uint64_t kDenominator = 1ULL << 20;
  constexpr std::size_t kMaxRedraws = 64;
  Rng rng(seed);
  IntVector x(d);
  std::vector<long> x_fast(d);
  for (std::size_t sample = 0; sample < samples; ++sample) {
    std::size_t interior_hits = 0;
    for (std::size_t attempt = 0;; ++attempt) {
      std::fill(x.begin(), x.end(), Integer(0));
      for (std::size_t i = 0; i < d; ++i) {
        const Integer a = static_cast<unsigned long>(1 + rng.below(kDenominator - 1));
        for (std::size_t j = 0; j < d; ++j) x[j] += a * root.generators()(i, j);
      }
      const bool fast = root_fast && std::all_of(x.begin(), x.end(), [](const Integer& v) {
        return v.fits_slong_p();
      });
      if (fast)
        for (std::size_t j = 0; j < d; ++j) x_fast[j] = x[j].get_si();

      interior_hits = 0;
      bool on_wall = false;
      for (const auto& tester : testers) {
        const int cls = tester.classify(x, fast ? &x_fast : nullptr);
        if (cls == 0) on_wall = true;
        if (cls == 1) ++interior_hits;
      }
      if (!on_wall || attempt + 1 >= kMaxRedraws) break;
      ++report.redraws;
    }
    if (interior_hits == 0)
      ++report.uncovered;
    else if (interior_hits == 1)
      ++report.covered_once;
    else
      ++report.multiply_covered;
  }
  return report;
}

bool interiors_intersect(const SimplicialCone& a, const SimplicialCone& b) {
  const std::size_t d = a.dimension();
  if (d != b.dimension() || d < 2 || d > 3) {
    throw DomainError("interiors_intersect: exact overlap test supports d = 2 and d = 3 only");
  }
  std::vector<IntVector> normals = inward_normals(a);
  for (auto& n : inward_normals(b)) normals.push_back(std::move(n));

  auto in_both = [&](const IntVector& r) {
    return std::all_of(normals.begin(), normals.end(), [&](const IntVector& n) { return dot(n, r) >= 0; });
  };

  // Every extreme ray of the intersection is cut out by d-1 facet normals;
  // the sum of all candidate rays that lie in both cones is interior to the
  // intersection exactly when the intersection is full-dimensional.
  std::vector<IntVector> candidates;
  if (d == 2) {
    for (const auto& n : normals) candidates.push_back(IntVector{-n[1], n[0]});
  } else {
    for (std::size_t i = 0; i < normals.size(); ++i)
      for (std::size_t j = i + 1; j < normals.size(); ++j) candidates.push_back(cross(normals[i], normals[j]));
  }
  IntVector sum(d);
  for (auto& r : candidates) {
    if (is_zero(r)) continue;
    for (int sign : {1, -1}) {
      IntVector dir = r;
      if (sign < 0)
        for (auto& v : dir) v = -v;
      if (!in_both(dir)) continue;
      for (std::size_t k = 0; k < d; ++k) sum[k] += dir[k];
    }
  }
  return std::all_of(normals.begin(), normals.end(), [&](const IntVector& n) { return dot(n, sum) > 0; });
}

std::size_t count_overlapping_pairs(const std::vector<SimplicialCone>& pieces) {
  std::size_t overlaps = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      if (interiors_intersect(pieces[i], pieces[j])) ++overlaps;
  return overlaps;
}

std::vector<BoundReport> audit_labelled_vectors(const SimplicialCone& root,
                                                const std::vector<std::pair<long, IntVector>>& labelled) {
  const std::size_t d = root.dimension();
  RationalBoundTracker power("xi_dilation_le_d_2^s");
  RationalBoundTracker recurrence("xi_dilation_le_h_s");
  std::vector<Integer> h_cache;
  for (const auto& [s, v] : labelled) {
    if (s < 0 || is_zero(v)) continue;
    const Rational dil = dilation(root, v);
    Integer pow2 = 1;
    mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), static_cast<unsigned long>(s));
    power.check(dil, Rational(Integer(pow2 * static_cast<unsigned long>(d))), v);
    while (static_cast<long>(h_cache.size()) <= s)
      h_cache.push_back(h_sequence(static_cast<unsigned>(d), static_cast<long>(h_cache.size())));
    recurrence.check(dil, Rational(h_cache[static_cast<std::size_t>(s)]), v);
  }
  std::vector<BoundReport> out;
  out.push_back(std::move(power).finish());
  out.push_back(std::move(recurrence).finish());
  return out;
}

BoundReport audit_chi(const SimplicialCone& root, const std::vector<long>& chis) {
  BoundReport report;
  report.bound_name = "chi_le_phi_mu_root_minus_1";
  const Phi bound = phi(root.multiplicity()) - 1;
  long worst = std::numeric_limits<long>::min();
  for (long c : chis) {
    ++report.checked;
    // chi as a potential value: ld(1) - (-chi).
    if (Phi(Integer(1), Integer(1), -c) > bound) {
      ++report.violations;
      report.satisfied = false;
    }
    worst = std::max(worst, c);
  }
  report.measured = chis.empty() ? Quantity::of(Rational(0)) : Quantity::of(Rational(worst));
  report.bound_value = Quantity::of(bound.approx());
  return report;
}

std::vector<BoundReport> audit_final_cones(const std::vector<SimplicialCone>& pieces, const SimplicialCone& root,
                                           const Integer& hilbert_cap) {
  const std::size_t d = root.dimension();
  const Integer& mu_root = root.multiplicity();
  Rational quarter_bound(Integer(mu_root * static_cast<unsigned long>(d)), Integer(4));
  quarter_bound.canonicalize();
  RationalBoundTracker generators("generator_dilation_le_d_mu_over_4");
  RationalBoundTracker hilbert("hilbert_dilation_le_d_mu_over_4");
  std::size_t skipped = 0;
  for (const SimplicialCone& cone : pieces) {
    for (std::size_t j = 0; j < d; ++j) {
      const IntVector g = cone.generator(j);
      generators.check(dilation(root, g), quarter_bound, g);
    }
    if (cone.multiplicity() > hilbert_cap) {
      ++skipped;
      continue;
    }
    for (const auto& h : hilbert_basis(cone, hilbert_cap).elements) hilbert.check(dilation(root, h), quarter_bound, h);
  }
  BoundReport gen = std::move(generators).finish();
  BoundReport hil = std::move(hilbert).finish();
  if (mu_root == 1) {
    for (BoundReport* r : {&gen, &hil}) {
      r->note = "root is unimodular; bound applies to mu(C) > 1 only";
      r->satisfied = true;
      r->violations = 0;
      r->witness.reset();
    }
  }
  if (skipped > 0) {
    hil.note = std::to_string(skipped) + " cone(s) above the Hilbert-basis cap skipped";
    if (hil.checked == 0) hil.skipped = true;
  }
  return {std::move(gen), std::move(hil)};
}

BoundReport audit_f_triangulation(const std::vector<SimplicialCone>& pieces, unsigned d) {
  using boost::multiprecision::exp;
  BoundReport report;
  report.bound_name = "p_max_lt_e^(tau d)";
  HighPrecision worst = 0;
  for (const SimplicialCone& cone : pieces) {
    ++report.checked;
    if (cone.is_unimodular()) continue;
    const Integer p = p_max(cone.multiplicity());
    worst = std::max(worst, to_high_precision(p));
    if (threshold_exceeded(p, d)) {
      ++report.violations;
      report.satisfied = false;
      report.witness = cone.generator(0);
    }
  }
  report.measured = Quantity::of(worst);
  report.bound_value = Quantity::of(exp(threshold_log(d)));
  return report;
}

std::vector<BoundReport> audit_bpft_bounds(const TriangulationState& state, const Integer& hilbert_cap) {
  const SimplicialCone& root = state.root;
  std::vector<BoundReport> reports;

  std::vector<std::pair<long, IntVector>> labelled;
  std::vector<long> chis;
  for (const auto& node : state.ancestry) {
    const LabeledCone& lc = node.labeled;
    chis.push_back(lc.chi());
    for (long s = 0; s <= lc.chi(); ++s) {
      const IntVector* v = lc.xi_at(s);
      if (v != nullptr) labelled.emplace_back(s, *v);
    }
  }
  for (auto& r : audit_labelled_vectors(root, labelled)) reports.push_back(std::move(r));

  // Potential drop and strict decrease on every provenance edge.
  {
    BoundReport potential;
    potential.bound_name = "phi_child_le_phi_parent_minus_1";
    RationalBoundTracker decrease("mu_child_lt_mu_parent");
    std::optional<HighPrecision> worst_gap;
    for (const auto& node : state.ancestry) {
      if (!node.parent) continue;
      const Integer& mu_child = node.labeled.cone.multiplicity();
      const Integer& mu_parent = state.ancestry[*node.parent].labeled.cone.multiplicity();
      ++potential.checked;
      const Phi lhs = phi(mu_child);
      const Phi rhs = phi(mu_parent) - 1;
      const HighPrecision gap = lhs.approx() - rhs.approx();
      if (!worst_gap || gap > *worst_gap) {
        worst_gap = gap;
        potential.measured = Quantity::of(lhs.approx());
        potential.bound_value = Quantity::of(rhs.approx());
      }
      if (lhs > rhs) {
        ++potential.violations;
        if (potential.satisfied) potential.witness = node.labeled.cone.generator(0);
        potential.satisfied = false;
      }
      decrease.check(Rational(mu_child), Rational(Integer(mu_parent - 1)), node.labeled.cone.generator(0));
    }
    if (!worst_gap) {
      potential.measured = Quantity::of(Rational(0));
      potential.bound_value = Quantity::of(Rational(0));
      potential.note = "no subdivisions";
    }
    reports.push_back(std::move(potential));
    reports.push_back(std::move(decrease).finish());
  }

  reports.push_back(audit_chi(root, chis));
  const std::vector<SimplicialCone> final_cones = state.current_cones();
  for (auto& r : audit_final_cones(final_cones, root, hilbert_cap)) reports.push_back(std::move(r));
  reports.push_back(audit_f_triangulation(final_cones, static_cast<unsigned>(root.dimension())));
  return reports;
}

BoundReport audit_unimodular_bounds(const std::vector<SimplicialCone>& pieces, const SimplicialCone& root) {
  BoundReport report;
  report.bound_name = "unimodular_dilation_le_finres_bound";
  const unsigned d = static_cast<unsigned>(root.dimension());
  Rational measured = 0;
  std::optional<IntVector> worst;
  for (const auto& piece : pieces) {
    if (!piece.is_unimodular()) {
      report.satisfied = false;
      ++report.violations;
      report.witness = piece.generator(0);
      report.note = "piece of multiplicity " + piece.multiplicity().get_str() + " is not unimodular";
    }
    for (std::size_t j = 0; j < piece.dimension(); ++j) {
      ++report.checked;
      const IntVector g = piece.generator(j);
      const Rational dil = dilation(root, g);
      if (dil > measured || !worst) {
        measured = std::max(measured, dil);
        worst = g;
      }
    }
  }
  report.measured = Quantity::of(measured);
  if (root.is_unimodular()) {
    report.bound_value = Quantity::of(to_high_precision(Integer(d)) / 4);
    if (report.note.empty()) report.note = "root is unimodular; bound applies to mu(C) > 1 only";
    return report;
  }
  const HighPrecision bound = finres_bound(d, root.multiplicity());
  report.bound_value = Quantity::of(bound);
  const HighPrecision m = to_high_precision(measured);
  const HighPrecision diff = m - bound;
  using boost::multiprecision::abs;
  using boost::multiprecision::log;
  report.near_tie = abs(diff) < guard_band();
  if (diff > guard_band()) {
    report.satisfied = false;
    ++report.violations;
    report.witness = worst;
  }
  report.implied_exponent = log(m) / log(to_high_precision(root.multiplicity()));
  return report;
}

BoundReport audit_unimodular_bounds(const UnimodularTriangulation& t, const SimplicialCone& root) {
  return audit_unimodular_bounds(t.pieces, root);
}

BoundReport audit_transfer_exponents(const std::vector<SimplicialCone>& pieces, const SimplicialCone& root) {
  using boost::multiprecision::log;
  BoundReport report;
  report.bound_name = "ln_transfer_product_le_ln_mu_root_times_(gamma d + epsilon)";
  const unsigned d = static_cast<unsigned>(root.dimension());
  const HighPrecision ln2 = log(HighPrecision(2));
  const HighPrecision rhs = (BoundConstants::gamma() * d + BoundConstants::epsilon()) *
                            log(to_high_precision(root.multiplicity()));
  HighPrecision worst = 0;
  for (const auto& piece : pieces) {
    ++report.checked;
    if (piece.is_unimodular()) continue;
    HighPrecision lhs = 0;
    for (const auto& [p, alpha] : factorize(piece.multiplicity())) {
      const HighPrecision ln_p = log(to_high_precision(p));
      lhs += HighPrecision(alpha) * (BoundConstants::rho() * ln_p / ln2 + BoundConstants::epsilon()) * ln_p;
    }
    worst = std::max(worst, lhs);
    if (lhs - rhs > guard_band()) {
      report.satisfied = false;
      ++report.violations;
      report.witness = piece.generator(0);
    }
  }
  report.measured = Quantity::of(worst);
  report.bound_value = Quantity::of(rhs);
  report.note = "natural logarithms of both sides";
  return report;
}

bool all_satisfied(const std::vector<BoundReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.satisfied; });
}

}  // namespace conetri
