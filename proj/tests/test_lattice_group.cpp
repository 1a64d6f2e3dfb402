#include <gtest/gtest.h>

#include <set>

#include "conetri/errors.hpp"
#include "conetri/lattice_group.hpp"
#include "conetri/random.hpp"
#include "oracles.hpp"

using namespace conetri;

namespace {

const IntMatrix kTwoOneOneTwo{{2, 1}, {1, 2}};
const IntMatrix kPrimeD2{{3, 1}, {0, 1}};
const IntMatrix kPrimeD4{{5, 3, 2, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};

IntMatrix random_primitive_nonsingular(Rng& rng, std::size_t d, long bound) {
  for (;;) {
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.in_range(-bound, bound);
    bool ok = oracle::cofactor_determinant(m) != 0;
    for (std::size_t i = 0; ok && i < d; ++i) ok = is_primitive(m.row(i));
    if (ok) return m;
  }
}

std::vector<IntVector> points_of(ParPointEnumerator e) {
  std::vector<IntVector> out;
  for (auto& x : collect(std::move(e))) out.push_back(x.lattice_point);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(QuotientGroup, Orders) {
  EXPECT_EQ(QuotientGroup(IntMatrix::identity(3)).order(), 1);
  EXPECT_EQ(QuotientGroup(kTwoOneOneTwo).order(), 3);
  EXPECT_EQ(QuotientGroup(kPrimeD4).order(), 5);
}

TEST(QuotientGroup, RejectsBadGenerators) {
  EXPECT_THROW(QuotientGroup(IntMatrix{{1, 2}, {2, 4}}), SingularMatrixError);
  EXPECT_THROW(QuotientGroup(IntMatrix{{2, 0}, {0, 1}}), DomainError);
  EXPECT_THROW(QuotientGroup(IntMatrix(2, 3)), DimensionError);
}

TEST(ReduceToPar, Examples) {
  const QuotientGroup g(kTwoOneOneTwo);
  const ParElement gen = g.reduce_to_par(IntVector{2, 1});
  EXPECT_EQ(gen.coeffs, (RationalVector{0, 0}));
  EXPECT_TRUE(gen.is_zero());

  const ParElement e = g.reduce_to_par(IntVector{1, 1});
  EXPECT_EQ(e.coeffs, (RationalVector{Rational(1, 3), Rational(1, 3)}));
  EXPECT_EQ(e.lattice_point, (IntVector{1, 1}));

  const ParElement f = QuotientGroup(kPrimeD2).reduce_to_par(IntVector{1, 0});
  EXPECT_EQ(f.coeffs, (RationalVector{Rational(1, 3), Rational(2, 3)}));
  EXPECT_EQ(f.lattice_point, (IntVector{1, 1}));
}

TEST(ReduceToPar, IdempotentAndCongruent) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + rng.below(2);
    const QuotientGroup g(random_primitive_nonsingular(rng, d, 6));
    IntVector x(d);
    for (auto& v : x) v = rng.in_range(-30, 30);
    const ParElement e = g.reduce_to_par(x);
    for (const auto& q : e.coeffs) {
      EXPECT_GE(q, 0);
      EXPECT_LT(q, 1);
    }
    EXPECT_EQ(g.reduce_to_par(e.lattice_point).lattice_point, e.lattice_point);
    IntVector diff(d);
    for (std::size_t j = 0; j < d; ++j) diff[j] = x[j] - e.lattice_point[j];
    EXPECT_TRUE(g.in_sublattice(diff));
    const RationalVector q = oracle::cramer_solve(g.basis(), e.lattice_point);
    EXPECT_EQ(q, e.coeffs);
  }
}

TEST(PTorsion, Examples) {
  const auto order3 = collect(QuotientGroup(kTwoOneOneTwo).p_torsion(3));
  ASSERT_EQ(order3.size(), 2u);
  std::set<RationalVector> coeffs{order3[0].coeffs, order3[1].coeffs};
  EXPECT_EQ(coeffs, (std::set<RationalVector>{{Rational(1, 3), Rational(1, 3)}, {Rational(2, 3), Rational(2, 3)}}));

  const auto order5 = collect(QuotientGroup(kPrimeD4).p_torsion(5));
  ASSERT_EQ(order5.size(), 4u);
  for (const auto& e : order5) {
    IntVector z = e.numerators(5);
    std::sort(z.begin(), z.end());
    EXPECT_EQ(z, (IntVector{1, 2, 3, 4}));
  }

  // Cyclic group of order 6 has a unique element of order 2.
  const QuotientGroup six(IntMatrix{{1, 0}, {1, 6}});
  ASSERT_EQ(six.order(), 6);
  EXPECT_EQ(collect(six.p_torsion(2)).size(), 1u);
  EXPECT_EQ(collect(six.p_torsion(3)).size(), 2u);
}

TEST(PTorsion, RejectsNonDivisor) {
  EXPECT_THROW(QuotientGroup(kTwoOneOneTwo).p_torsion(2), DomainError);
}

TEST(PTorsion, CountAndOrderAgreeWithBruteForce) {
  Rng rng(32);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = 2 + rng.below(2);
    const IntMatrix basis = random_primitive_nonsingular(rng, d, 5);
    const QuotientGroup g(basis);
    if (g.order() == 1) continue;
    const std::vector<IntVector> all = oracle::par_points_by_scan(basis);
    for (const auto& [prime, exponent] : oracle::trial_division(g.order().get_si())) {
      const Integer p = prime;
      // Brute force: nonzero par points x with p * x in U.
      std::set<IntVector> expected;
      for (const auto& x : all) {
        if (is_zero(x)) continue;
        IntVector px = x;
        for (auto& v : px) v *= p;
        if (g.in_sublattice(px)) expected.insert(x);
      }
      std::set<IntVector> got;
      for (const auto& e : collect(g.p_torsion(p))) {
        EXPECT_FALSE(g.in_sublattice(e.lattice_point));
        EXPECT_TRUE(got.insert(e.lattice_point).second) << "duplicate torsion element";
        e.numerators(p);  // throws unless the denominators divide p
      }
      EXPECT_EQ(got, expected) << basis << " p=" << p;
    }
  }
}

TEST(ParPoints, Examples) {
  EXPECT_EQ(points_of(QuotientGroup(IntMatrix::identity(2)).par_points()), (std::vector<IntVector>{{0, 0}}));
  EXPECT_EQ(points_of(QuotientGroup(kTwoOneOneTwo).par_points()),
            (std::vector<IntVector>{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(points_of(QuotientGroup(kPrimeD2).par_points()), (std::vector<IntVector>{{0, 0}, {1, 1}, {2, 1}}));
}

TEST(ParPoints, RespectsCap) {
  EXPECT_THROW(QuotientGroup(kTwoOneOneTwo).par_points(2), ResourceError);
}

TEST(ParPoints, MatchBoundingBoxScan) {
  Rng rng(33);
  int checked = 0;
  while (checked < 150) {
    const std::size_t d = 2 + rng.below(2);
    const IntMatrix basis = random_primitive_nonsingular(rng, d, 6);
    const QuotientGroup g(basis);
    if (g.order() > 500) continue;
    ++checked;
    const auto got = points_of(g.par_points());
    EXPECT_EQ(got, oracle::par_points_by_scan(basis)) << basis;
    // Pairwise distinct classes.
    for (std::size_t i = 0; i < got.size(); ++i)
      for (std::size_t j = i + 1; j < got.size(); ++j) {
        IntVector diff(d);
        for (std::size_t k = 0; k < d; ++k) diff[k] = got[i][k] - got[j][k];
        EXPECT_FALSE(g.in_sublattice(diff));
      }
    EXPECT_EQ(Integer(static_cast<unsigned long>(got.size())), g.order());
  }
}
