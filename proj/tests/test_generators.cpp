#include <gtest/gtest.h>

#include <numeric>

#include "conetri/errors.hpp"
#include "conetri/generators.hpp"
#include "conetri/numtheory.hpp"
#include "oracles.hpp"

using namespace conetri;

namespace {

// Sorted coordinate vectors of all nonzero classes, found by scanning.
std::vector<RationalVector> class_coordinates_by_scan(const SimplicialCone& c) {
  std::vector<RationalVector> out;
  for (const auto& x : oracle::par_points_by_scan(c.generators())) {
    if (is_zero(x)) continue;
    RationalVector q = oracle::cramer_solve(c.generators(), x);
    std::sort(q.begin(), q.end());
    out.push_back(q);
  }
  return out;
}

RationalVector one_to_d_over(unsigned d) {
  RationalVector v;
  for (unsigned k = 1; k <= d; ++k) v.push_back(Rational(k, d + 1));
  return v;
}

}  // namespace

TEST(PrimeExample, Examples) {
  const SimplicialCone c2 = prime_example(2);
  EXPECT_EQ(c2.generators(), (IntMatrix{{3, 1}, {0, 1}}));
  EXPECT_EQ(c2.multiplicity(), 3);
  const SimplicialCone c4 = prime_example(4);
  EXPECT_EQ(c4.generator(0), (IntVector{5, 3, 2, 1}));
  EXPECT_EQ(c4.multiplicity(), 5);
  EXPECT_THROW(prime_example(3), DomainError);
  EXPECT_THROW(prime_example(1), DomainError);
}

TEST(PrimeExample, MultiplicityForAllSmallPrimes) {
  for (unsigned d = 2; d + 1 <= 30; ++d) {
    if (!oracle::is_prime_naive(d + 1)) {
      EXPECT_THROW(prime_example(d), DomainError) << d;
      continue;
    }
    // Upper triangular with diagonal (d + 1, 1, ..., 1).
    const SimplicialCone c = prime_example(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(c.generators()(i, j), 0);
    EXPECT_EQ(c.generators()(0, 0), d + 1);
    for (std::size_t i = 1; i < d; ++i) EXPECT_EQ(c.generators()(i, i), 1);
    EXPECT_EQ(c.multiplicity(), d + 1) << d;
  }
}

TEST(PrimeExample, PropertyByScan) {
  for (unsigned d : {2u, 4u}) {
    const SimplicialCone c = prime_example(d);
    EXPECT_TRUE(verify_prime_example_property(c, d));
    const auto classes = class_coordinates_by_scan(c);
    ASSERT_EQ(classes.size(), d);
    for (const auto& q : classes) EXPECT_EQ(q, one_to_d_over(d));
  }
}

TEST(PrimeExample, PropertyByResidueFormula) {
  // The class with first coordinate k/p has coordinate frac(-k v1_i / p) at
  // position i >= 2, so its multiset is determined by residues mod p.
  for (unsigned d : {2u, 4u, 6u, 10u, 12u}) {
    const SimplicialCone c = prime_example(d);
    EXPECT_TRUE(verify_prime_example_property(c, d)) << d;
    const long p = d + 1;
    const IntVector v1 = c.generator(0);
    bool every_class_has_odd_prime = true;
    for (long k = 1; k < p; ++k) {
      std::vector<long> z{k};
      for (unsigned i = 1; i < d; ++i) z.push_back(((-k * v1[i].get_si()) % p + p) % p);
      std::sort(z.begin(), z.end());
      std::vector<long> expected(d);
      std::iota(expected.begin(), expected.end(), 1);
      EXPECT_EQ(z, expected);
      every_class_has_odd_prime = every_class_has_odd_prime && d >= 3 &&
                                  std::any_of(z.begin(), z.end(), [](long v) { return v == 3; });
    }
    if (d >= 4) {
      EXPECT_TRUE(every_class_has_odd_prime);
    }
  }
}

TEST(PrimeExample, PropertyFailsElsewhere) {
  EXPECT_FALSE(verify_prime_example_property(SimplicialCone::make(IntMatrix{{2, 1}, {1, 2}}), 2));
  EXPECT_FALSE(verify_prime_example_property(two_dim_prime(5), 2));
  EXPECT_THROW(verify_prime_example_property(prime_example(2), 4), DimensionError);
}

TEST(TwoDimPrime, Family) {
  EXPECT_EQ(two_dim_prime(13).generators(), (IntMatrix{{13, 1}, {0, 1}}));
  EXPECT_EQ(two_dim_prime(13).multiplicity(), 13);
  EXPECT_THROW(two_dim_prime(15), DomainError);
}

TEST(RandomCone, SmallEntriesGiveSmallMultiplicity) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ConeSpec spec;
    spec.seed = seed;
    spec.max_entry = 1;
    const Integer mu = random_cone(spec).multiplicity();
    EXPECT_TRUE(mu == 1 || mu == 2) << mu;
  }
}

TEST(RandomCone, DeterministicInConeSpec) {
  for (unsigned d : {2u, 3u, 4u}) {
    ConeSpec spec;
    spec.d = d;
    spec.seed = 77;
    EXPECT_EQ(random_cone(spec), random_cone(spec));
    ConeSpec other = spec;
    other.seed = 78;
    EXPECT_FALSE(random_cone(spec) == random_cone(other));
  }
}

TEST(RandomCone, SatisfiesConeInvariants) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ConeSpec spec;
    spec.d = 2 + static_cast<unsigned>(seed % 3);
    spec.seed = seed;
    const SimplicialCone c = random_cone(spec);
    for (std::size_t i = 0; i < c.dimension(); ++i) {
      EXPECT_TRUE(is_primitive(c.generator(i)));
      for (const auto& v : c.generator(i)) EXPECT_LE(abs(v), spec.max_entry);
    }
    EXPECT_EQ(c.multiplicity(), abs(oracle::cofactor_determinant(c.generators())));
  }
}

TEST(RandomCone, TargetRange) {
  ConeSpec spec;
  spec.seed = 5;
  spec.target_mu_range = std::make_pair(Integer(13), Integer(13));
  const SimplicialCone c = random_cone(spec);
  EXPECT_EQ(c.multiplicity(), 13);
  EXPECT_TRUE(threshold_exceeded(p_max(c.multiplicity()), 2));
}

TEST(RandomCone, Errors) {
  ConeSpec spec;
  spec.max_entry = 1;
  spec.target_mu_range = std::make_pair(Integer(100), Integer(100));
  EXPECT_THROW(random_cone(spec), ResourceError);
  ConeSpec bad;
  bad.d = 1;
  EXPECT_THROW(random_cone(bad), DomainError);
  bad.d = 2;
  bad.max_entry = 0;
  EXPECT_THROW(random_cone(bad), DomainError);
}

TEST(MakeConeSpec, Dispatch) {
  ConeSpec spec;
  spec.kind = ConeKind::prime_example;
  spec.d = 4;
  EXPECT_EQ(make_cone(spec), prime_example(4));
  spec.kind = ConeKind::explicit_rows;
  spec.d = 2;
  spec.rows = IntMatrix{{4, 2}, {1, 2}};
  EXPECT_EQ(make_cone(spec).generators(), (IntMatrix{{2, 1}, {1, 2}}));
  spec.rows.reset();
  EXPECT_THROW(make_cone(spec), DomainError);
}
