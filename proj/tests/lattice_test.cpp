#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "linemetric/additive_map.hpp"
#include "linemetric/lattice.hpp"

namespace {

using namespace linemetric;

const QuadScalar s2 = QuadScalar::sqrt_of(2);

QuadScalar q2(long p, long q) { return QuadScalar(Rational(p), Rational(q), 2); }

TEST(Lattice, MembershipExamples) {
  const Lattice g{QuadScalar(1), s2};
  EXPECT_TRUE(g.contains(q2(-3, 2)));
  EXPECT_TRUE(g.contains(QuadScalar(0)));
  EXPECT_FALSE(g.contains(QuadScalar(Rational(1, 2))));
  EXPECT_FALSE(g.contains(QuadScalar(Rational(0), Rational(1, 3), 2)));
  EXPECT_THROW(g.contains(QuadScalar::sqrt_of(3)), RadicandMismatch);

  const Lattice z{QuadScalar(Rational(2, 3))};
  EXPECT_TRUE(z.contains(QuadScalar(-4)));
  EXPECT_FALSE(z.contains(QuadScalar(1)));
  EXPECT_FALSE(z.contains(s2));
  EXPECT_EQ(z.rank(), 1u);
  EXPECT_EQ(g.rank(), 2u);
}

TEST(Lattice, EqualityIsBasisIndependent) {
  EXPECT_EQ((Lattice{QuadScalar(1), s2}), (Lattice{q2(1, 1), s2, q2(3, -5)}));
  EXPECT_EQ((Lattice{QuadScalar(4), QuadScalar(6)}), (Lattice{QuadScalar(2)}));
  EXPECT_NE((Lattice{QuadScalar(2), s2}), (Lattice{QuadScalar(1), s2}));
  EXPECT_EQ((Lattice{QuadScalar(Rational(1, 2)), QuadScalar(Rational(1, 3))}), (Lattice{QuadScalar(Rational(1, 6))}));
  EXPECT_EQ((Lattice{QuadScalar(1), s2}).to_string(), "<1, 1*sqrt(2)>");
}

// Double inclusion decided by membership of each basis element in the other lattice.
TEST(Lattice, EqualityAgreesWithDoubleInclusion) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> c(-4, 4);
  for (int trial = 0; trial < 400; ++trial) {
    const Lattice a{q2(c(rng), c(rng)), q2(c(rng), c(rng)), q2(c(rng), c(rng))};
    const Lattice b{q2(c(rng), c(rng)), q2(c(rng), c(rng))};
    bool inclusion = true;
    for (const auto& x : a.basis_elements()) inclusion = inclusion && b.contains(x);
    for (const auto& x : b.basis_elements()) inclusion = inclusion && a.contains(x);
    EXPECT_EQ(a == b, inclusion) << a.to_string() << " vs " << b.to_string();
  }
}

// For two independent generators, x is a member iff Cramer's rule gives integer coefficients.
TEST(Lattice, MembershipAgreesWithCramer) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> c(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  for (int trial = 0; trial < 2000; ++trial) {
    const Rational a(c(rng), den(rng)), b(c(rng), den(rng)), e(c(rng), den(rng)), f(c(rng), den(rng));
    const Rational det = a * f - b * e;
    if (det.is_zero()) continue;
    const QuadScalar g1(a, e, 2), g2(b, f, 2);
    const Rational p(c(rng), den(rng)), q(c(rng), den(rng));
    const Rational k1 = (p * f - b * q) / det;
    const Rational k2 = (a * q - e * p) / det;
    const bool integral = k1.denominator() == 1 && k2.denominator() == 1;
    EXPECT_EQ((Lattice{g1, g2}).contains(QuadScalar(p, q, 2)), integral);
  }
}

TEST(Lattice, CoordinatesReproduceTheElement) {
  const Lattice l{q2(3, 1), q2(-1, 4), QuadScalar(Rational(5, 2))};
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int i = 0; i < 200; ++i) {
    const QuadScalar x = q2(3, 1) * Rational(c(rng)) + q2(-1, 4) * Rational(c(rng)) + QuadScalar(Rational(5, 2)) * Rational(c(rng));
    const auto k = l.coordinates(x);
    ASSERT_TRUE(k);
    EXPECT_EQ(l.element(std::span<const Integer>(*k)), x);
  }
}

TEST(AdditiveMap, ApplyAndInverse) {
  const auto phi = AdditiveMap::diagonal(-1, 1);
  EXPECT_EQ(phi(q2(3, 2)), q2(-3, 2));
  EXPECT_EQ(phi(QuadScalar(5)), QuadScalar(-5));
  EXPECT_TRUE(phi.compose(phi).is_identity());

  const AdditiveMap m(AdditiveMap::Matrix{{{2, 1}, {1, 1}}}, 2);
  EXPECT_EQ(m(QuadScalar(1)), q2(2, 1));
  EXPECT_TRUE(m.compose(m.inverse()).is_identity());
  EXPECT_THROW(AdditiveMap(AdditiveMap::Matrix{{{1, 2}, {2, 4}}}).inverse(), DomainError);
  EXPECT_THROW(AdditiveMap(AdditiveMap::Matrix{{{1, 0}, {1, 1}}})(QuadScalar(1)), DomainError);
}

TEST(AdditiveMap, IsAdditive) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> c(-7, 7);
  const AdditiveMap m(AdditiveMap::Matrix{{{Rational(1, 2), 3}, {-2, Rational(5, 3)}}}, 2);
  for (int i = 0; i < 300; ++i) {
    const QuadScalar x = q2(c(rng), c(rng)), y = q2(c(rng), c(rng));
    EXPECT_EQ(m(x + y), m(x) + m(y));
    EXPECT_EQ(m(-x), -m(x));
  }
}

TEST(ImageLattice, Examples) {
  const Lattice g{QuadScalar(1), s2};
  EXPECT_EQ(image_lattice(AdditiveMap::diagonal(2, 1), g), (Lattice{QuadScalar(2), s2}));
  EXPECT_EQ(image_lattice(AdditiveMap::diagonal(-1, 1), g), g);
  EXPECT_THROW(image_lattice(AdditiveMap::diagonal(0, 1), g), DomainError);
}

// The swap p + q*sqrt(2) -> q + p*sqrt(2): images of members are members of the image.
TEST(ImageLattice, SwapMapSendsMembersToMembers) {
  const AdditiveMap swap(AdditiveMap::Matrix{{{0, 1}, {1, 0}}}, 2);
  const Lattice l{QuadScalar(2), q2(1, 3)};
  const Lattice image = image_lattice(swap, l);
  EXPECT_EQ(image, (Lattice{q2(0, 2), q2(3, 1)}));
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<long> c(-20, 20);
  for (int i = 0; i < 20; ++i) {
    const QuadScalar x = QuadScalar(2) * Rational(c(rng)) + q2(1, 3) * Rational(c(rng));
    EXPECT_TRUE(image.contains(swap(x)));
    EXPECT_FALSE(image.contains(swap(x) + QuadScalar(1)));
  }
}

}  // namespace
