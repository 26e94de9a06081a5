#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "linemetric/groupsets.hpp"

namespace {

using namespace linemetric;

using Elements = std::vector<std::int64_t>;

// Midconvexity straight from the definition: scan every z in Z_n.
bool naive_midconvex(std::int64_t n, const std::set<std::int64_t>& s) {
  for (auto x : s)
    for (auto y : s)
      for (std::int64_t z = 0; z < n; ++z)
        if ((2 * z - x - y) % n == 0 && !s.count(z)) return false;
  return true;
}

std::uint64_t mask_of(const std::set<std::int64_t>& s) {
  std::uint64_t m = 0;
  for (auto x : s) m |= std::uint64_t{1} << x;
  return m;
}

// Every set of the two shapes, built by enumerating subgroups, cosets and removed parts directly.
std::set<std::uint64_t> decomposable_masks(std::int64_t n) {
  std::set<std::uint64_t> out;
  for (std::int64_t step = 1; step <= n; ++step) {
    if (n % step) continue;
    std::set<std::int64_t> h;
    for (std::int64_t x = 0; x < n; x += step) h.insert(x);
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b) {
        std::set<std::int64_t> s;
        for (auto x : h) {
          s.insert((x + a) % n);
          s.insert((x + b) % n);
        }
        out.insert(mask_of(s));
      }
    const std::int64_t size = n / step;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << size); ++c) {
      std::set<std::int64_t> removed;
      for (std::int64_t k = 0; k < size; ++k)
        if (c >> k & 1u) removed.insert(k);
      if (!naive_midconvex(size, removed)) continue;
      for (std::int64_t g = 0; g < n; ++g) {
        std::set<std::int64_t> s;
        for (std::int64_t k = 0; k < size; ++k)
          if (!removed.count(k)) s.insert((k * step + g) % n);
        out.insert(mask_of(s));
      }
    }
  }
  return out;
}

TEST(CyclicSubset, Basics) {
  const auto s = CyclicSubset::from_elements(7, {-1, 8, 3});
  EXPECT_EQ(s.elements(), (Elements{1, 3, 6}));
  EXPECT_EQ(s, CyclicSubset::from_mask(7, 0b1001010));
  EXPECT_THROW(CyclicSubset(0), DomainError);
  EXPECT_EQ(CyclicSubset(4).size(), 0u);
}

TEST(Semiaffine, Fixtures) {
  const auto r = is_semiaffine(CyclicSubset::from_elements(7, {0, 1, 3}));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witness, (GroupTriple{0, 1, 3}));
  EXPECT_TRUE(is_semiaffine(CyclicSubset::from_elements(6, {0, 2, 4})).holds);
  EXPECT_TRUE(is_semiaffine(CyclicSubset(5)).holds);
}

TEST(Midconvex, Fixtures) {
  const auto even = is_midconvex(CyclicSubset::from_elements(6, {0, 2, 4}));
  EXPECT_FALSE(even.holds);
  EXPECT_EQ(even.witness, (GroupTriple{0, 0, 3}));
  const auto pair = is_midconvex(CyclicSubset::from_elements(5, {0, 1}));
  EXPECT_FALSE(pair.holds);
  EXPECT_EQ(pair.witness, (GroupTriple{0, 1, 3}));
  EXPECT_TRUE(is_midconvex(CyclicSubset::from_elements(9, {0, 3, 6})).holds);
}

TEST(Halves, AgreesWithScan) {
  for (std::int64_t n = 1; n <= 24; ++n)
    for (std::int64_t t = -n; t < 2 * n; ++t) {
      Elements expected;
      for (std::int64_t z = 0; z < n; ++z)
        if (((2 * z - t) % n + n) % n == 0) expected.push_back(z);
      EXPECT_EQ(halves(t, n), expected) << t << " mod " << n;
    }
}

TEST(Midconvex, AgreesWithDefinition) {
  for (std::int64_t n = 1; n <= 10; ++n)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto s = CyclicSubset::from_mask(n, mask);
      const auto e = s.elements();
      EXPECT_EQ(is_midconvex(s).holds, naive_midconvex(n, {e.begin(), e.end()})) << n << " " << mask;
    }
}

TEST(Subgroups, Enumeration) {
  Elements sizes;
  for (const auto& h : enumerate_subgroups(6)) sizes.push_back(h.size());
  EXPECT_EQ(sizes, (Elements{1, 2, 3, 6}));
  const auto one = enumerate_subgroups(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].as_subset().elements(), (Elements{0}));
  EXPECT_EQ(enumerate_subgroups(12).size(), 6u);
  EXPECT_THROW(enumerate_subgroups(0), DomainError);
}

TEST(Subgroups, MidconvexExactlyWhenIndexIsOdd) {
  for (std::int64_t n = 1; n <= 60; ++n)
    for (const auto& h : enumerate_subgroups(n))
      EXPECT_EQ(is_midconvex(h.as_subset()).holds, h.index() % 2 == 1) << n << " step " << h.step;
}

TEST(Classify, Fixtures) {
  const auto pair = classify_semiaffine(CyclicSubset::from_elements(5, {0, 1}));
  ASSERT_TRUE(pair);
  const auto* f = std::get_if<CosetForm>(&*pair);
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->subgroup.size(), 1);
  EXPECT_EQ(f->a, 0);
  EXPECT_EQ(f->b, 1);

  const auto gap = CyclicSubset::from_elements(6, {1, 2, 3, 4, 5});
  EXPECT_EQ(is_semiaffine(gap).holds, false);
  EXPECT_FALSE(classify_semiaffine(gap));

  // Z_9 minus {0, 3, 6} is not a union of two cosets but is a complement shape.
  const auto holes = classify_semiaffine(CyclicSubset::from_elements(9, {1, 2, 4, 5, 7, 8}));
  ASSERT_TRUE(holes);
  EXPECT_EQ(reconstruct(*holes), CyclicSubset::from_elements(9, {1, 2, 4, 5, 7, 8}));
}

// Exhaustive for small n: classification succeeds exactly on the enumerated
// family, its answer rebuilds the set, and the family is the semiaffine sets.
TEST(Classify, MatchesEnumeratedFamily) {
  for (std::int64_t n = 1; n <= 9; ++n) {
    const auto family = decomposable_masks(n);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      const auto s = CyclicSubset::from_mask(n, mask);
      const auto dec = classify_semiaffine(s);
      const bool in_family = family.count(mask) > 0;
      ASSERT_EQ(dec.has_value(), in_family) << n << " " << mask;
      if (dec) {
        EXPECT_EQ(reconstruct(*dec), s);
      }
      EXPECT_EQ(is_semiaffine(s).holds, in_family) << n << " " << mask;
    }
  }
}

TEST(Classify, RandomDecompositionsRoundTrip) {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(2, 40)(rng);
    const auto subs = enumerate_subgroups(n);
    const auto h = subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
    std::uniform_int_distribution<std::int64_t> elem(0, n - 1);
    const CyclicSubset s = reconstruct(CosetForm{h, elem(rng), elem(rng)});
    EXPECT_TRUE(is_semiaffine(s).holds);
    const auto dec = classify_semiaffine(s);
    ASSERT_TRUE(dec);
    EXPECT_EQ(reconstruct(*dec), s);
  }
}

TEST(TraceSet, Fixtures) {
  const auto t = analyze_trace_set(WindowSubset::from_elements(5, {-4, -1, 2, 5}));
  ASSERT_TRUE(t);
  EXPECT_EQ(t->lo, -4);
  EXPECT_EQ(t->hi, 5);
  EXPECT_EQ(t->step, 3);
  EXPECT_EQ(t->offset, 2);
  EXPECT_FALSE(t->lo_at_edge);
  EXPECT_TRUE(t->hi_at_edge);

  EXPECT_FALSE(analyze_trace_set(WindowSubset::from_elements(5, {0, 2, 4})));

  Elements all;
  for (std::int64_t x = -3; x <= 3; ++x) all.push_back(x);
  const auto full = analyze_trace_set(WindowSubset::from_elements(3, all));
  ASSERT_TRUE(full);
  EXPECT_EQ(full->step, 1);
  EXPECT_TRUE(full->lo_at_edge && full->hi_at_edge);

  EXPECT_TRUE(analyze_trace_set(WindowSubset(2))->empty);
  EXPECT_THROW(WindowSubset::from_elements(2, {3}), DomainError);
}

TEST(TraceSet, ShapeAgreesWithWindowMidconvexity) {
  for (std::int64_t bound = 0; bound <= 3; ++bound) {
    const std::int64_t width = 2 * bound + 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << width); ++mask) {
      Elements e;
      for (std::int64_t k = 0; k < width; ++k)
        if (mask >> k & 1u) e.push_back(k - bound);
      const auto t = WindowSubset::from_elements(bound, e);
      EXPECT_EQ(analyze_trace_set(t).has_value(), is_midconvex_in_window(t).holds) << bound << " " << mask;
    }
  }
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::int64_t> x(-10, 10);
  std::uniform_int_distribution<std::int64_t> step(1, 7);
  for (int trial = 0; trial < 500; ++trial) {
    Elements e;
    if (trial % 2) {
      const std::int64_t lo = x(rng), st = step(rng);
      for (std::int64_t v = lo; v <= std::min<std::int64_t>(10, lo + 4 * st); v += st) e.push_back(v);
    } else {
      for (int k = 0; k < 4; ++k) e.push_back(x(rng));
    }
    const auto t = WindowSubset::from_elements(10, e);
    EXPECT_EQ(analyze_trace_set(t).has_value(), is_midconvex_in_window(t).holds);
  }
}

}  // namespace
