#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "linemetric/involution.hpp"

namespace {

using namespace linemetric;

const QuadScalar s2 = QuadScalar::sqrt_of(2);

QuadScalar q2(long p, long q) { return QuadScalar(Rational(p), Rational(q), 2); }

// p + q*sqrt(2) lies in diag(-1, 1)[<1, sqrt 2>_+] iff q*sqrt(2) >= p, decided with integers only.
bool in_reflected_cone(long p, long q) {
  if (p <= 0) return q >= 0 || 2 * q * q <= p * p;
  return q > 0 && 2 * q * q >= p * p;
}

TEST(Example1, PhiNegatesTheRationalPart) {
  const auto inst = build_example1(2, Rational(1), Rational(1));
  EXPECT_EQ(inst.phi(q2(3, 2)), q2(-3, 2));
  EXPECT_EQ(inst.phi(inst.a), -inst.a);
  EXPECT_EQ(inst.phi(inst.b), inst.b);
  EXPECT_EQ(inst.group, (Lattice{QuadScalar(1), s2}));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> c(-50, 50);
  for (int i = 0; i < 100; ++i) {
    const QuadScalar x = q2(c(rng), c(rng));
    EXPECT_EQ(inst.phi(inst.phi(x)), x);
  }
}

TEST(Example1, MembershipAgreesWithIntegerOracle) {
  const auto inst = build_example1(2, Rational(1), Rational(1));
  EXPECT_TRUE(inst.ray.contains(QuadScalar(-5)));
  EXPECT_FALSE(inst.ray.contains(q2(1, -1)));
  EXPECT_TRUE(inst.ray.contains(q2(1, 1)));
  EXPECT_FALSE(inst.ray.contains(QuadScalar(Rational(-1, 2))));
  for (long p = -15; p <= 15; ++p)
    for (long q = -15; q <= 15; ++q) EXPECT_EQ(inst.ray.contains(q2(p, q)), in_reflected_cone(p, q)) << p << " " << q;
}

TEST(Example1, RejectsBadParameters) {
  EXPECT_THROW(build_example1(4, Rational(1), Rational(1)), DomainError);
  EXPECT_THROW(build_example1(1, Rational(1), Rational(1)), DomainError);
  EXPECT_THROW(build_example1(2, Rational(0), Rational(1)), DomainError);
  EXPECT_THROW(build_example1(2, Rational(1), Rational(-1)), DomainError);
  EXPECT_NO_THROW(build_example1(7, Rational(2, 3), Rational(5)));
}

TEST(Straddle, Examples) {
  const auto inst = build_example1(2, Rational(1), Rational(1));
  const auto w = straddle_witness(inst.ray, QuadScalar(0), 3);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->first, QuadScalar(-1));
  EXPECT_EQ(w->second, s2);

  EXPECT_FALSE(straddle_witness(SymbolicSet::cone(inst.group), QuadScalar(0), 10));

  const auto z = straddle_witness(SymbolicSet::group(Lattice{QuadScalar(1)}), QuadScalar(0), 3);
  ASSERT_TRUE(z);
  EXPECT_EQ(z->first, QuadScalar(-1));
  EXPECT_EQ(z->second, QuadScalar(1));
}

TEST(Density, Examples) {
  const auto integers = density_report(SymbolicSet::cone(Lattice{QuadScalar(1)}), QuadScalar(0), QuadScalar(5), 25, 10);
  std::size_t nonempty = 0;
  for (auto c : integers.counts) nonempty += c ? 1 : 0;
  EXPECT_EQ(nonempty, 6u);
  EXPECT_EQ(integers.counts.front(), 1u);
  EXPECT_EQ(integers.counts.back(), 1u);
  EXPECT_FALSE(integers.all_nonempty());
  EXPECT_EQ(integers.empty_buckets(), 19u);

  const auto dense = density_report(SymbolicSet::group(Lattice{QuadScalar(1), s2}), QuadScalar(-2), QuadScalar(2), 16, 50);
  EXPECT_TRUE(dense.all_nonempty());

  EXPECT_THROW(density_report(SymbolicSet::group(Lattice{QuadScalar(1)}), QuadScalar(1), QuadScalar(1), 4, 3), DomainError);
}

TEST(Antisymmetry, RayVersusGroup) {
  const auto inst = build_example1(2, Rational(1), Rational(1));
  EXPECT_TRUE(antisymmetry_failures(inst.ray, inst.group, 12).empty());
  EXPECT_EQ(antisymmetry_failures(SymbolicSet::group(inst.group), inst.group, 2).size(), 24u);
}

TEST(ApexUniqueness, ConeAndGroup) {
  const auto cone = apex_uniqueness(SymbolicSet::cone(Lattice{QuadScalar(1), s2}), QuadScalar(0), 6);
  EXPECT_TRUE(cone.unique());
  for (const auto& [c, r] : cone.witnesses) EXPECT_EQ(sphere_symbolic(SymbolicSet::cone(Lattice{QuadScalar(1), s2}), c, r).size(), 2u);
}

TEST(DifferenceClosure, RayDifferencesFillTheGroup) {
  const auto inst = build_example1(2, Rational(1), Rational(1));
  const auto rep = difference_closure(inst.ray, inst.group, 6);
  EXPECT_TRUE(rep.passed());

  // A ray inside a proper subgroup cannot produce all of G.
  const auto narrow = difference_closure(SymbolicSet::cone(Lattice{QuadScalar(2), s2}), inst.group, 6);
  EXPECT_TRUE(narrow.outside_group.empty());
  EXPECT_FALSE(narrow.unexpressed.empty());
}

TEST(Example1Certificate, SmallScalePasses) {
  Example1Options opt;
  opt.coeff_bound = 12;
  opt.buckets = 5;
  opt.ray_bound = 5;
  opt.difference_bound = 6;
  const auto cert = run_example1_certificate(opt);
  EXPECT_TRUE(cert.group_part());
  EXPECT_TRUE(cert.antisymmetry_part());
  EXPECT_TRUE(cert.ray_part());
  EXPECT_TRUE(cert.straddle_part());
  EXPECT_TRUE(cert.density_part());
  EXPECT_TRUE(cert.differences.passed());
  EXPECT_TRUE(cert.passed());
}

}  // namespace
