#include <array>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "linemetric/line_embedding.hpp"
#include "linemetric/matrix_io.hpp"

namespace {

using namespace linemetric;

FiniteMetricSpace line(const std::vector<QuadScalar>& pts) { return FiniteMetricSpace::from_points(pts); }

FiniteMetricSpace l1_box() { return parse_matrix("4\nA B C D\n0 4 2 6\n4 0 6 2\n2 6 0 4\n6 2 4 0\n"); }

TEST(EmbedLine, Examples) {
  const auto m = line({0, 1, 3, 6});
  const auto e = embed_line(m);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->at("0"), QuadScalar(0));
  EXPECT_EQ(e->at("1"), QuadScalar(1));
  EXPECT_EQ(e->at("3"), QuadScalar(3));
  EXPECT_EQ(e->at("6"), QuadScalar(6));

  EXPECT_FALSE(embed_line(l1_box()));

  const auto single = embed_line(FiniteMetricSpace({"p"}, {0}));
  ASSERT_TRUE(single);
  EXPECT_EQ(single->at("p"), QuadScalar(0));
}

TEST(EmbedLine, InvalidMetricThrows) {
  EXPECT_THROW(embed_line(FiniteMetricSpace({"a", "b"}, {0, 1, 2, 0})), InvalidMetric);
}

TEST(BruteForceEmbed, Examples) {
  EXPECT_FALSE(brute_force_embed(l1_box()));
  EXPECT_FALSE(brute_force_embed(FiniteMetricSpace({"x", "y", "z"}, {0, 1, 1, 1, 0, 1, 1, 1, 0})));
  EXPECT_TRUE(brute_force_embed(line({0, 2, 7, 9, 12})));
  std::vector<QuadScalar> many;
  for (long k = 0; k < 15; ++k) many.emplace_back(k);
  EXPECT_THROW(brute_force_embed(line(many)), DomainError);
}

TEST(DecideEmbeddable, Examples) {
  const QuadScalar s = QuadScalar::sqrt_of(2);
  const QuadScalar a = QuadScalar(1) + s;
  const auto yes = decide_embeddable(FiniteMetricSpace::from_points(std::vector<QuadScalar>{0, a, a + a}));
  ASSERT_TRUE(yes.embeddable);
  EXPECT_EQ(yes.embedding->at(a.to_string()), a);
  EXPECT_EQ(yes.embedding->at((a + a).to_string()), a + a);

  const auto rect = decide_embeddable(l1_box());
  EXPECT_FALSE(rect.embeddable);
  ASSERT_TRUE(rect.rectangle);
  EXPECT_EQ(rect.rectangle->p, QuadScalar(1));
  EXPECT_EQ(rect.rectangle->q, QuadScalar(2));

  const auto tri = decide_embeddable(FiniteMetricSpace({"x", "y", "z"}, {0, 1, 1, 1, 0, 1, 1, 1, 0}));
  EXPECT_FALSE(tri.embeddable);
  ASSERT_TRUE(tri.subline_failure);
  EXPECT_EQ(*tri.subline_failure, (LabelTriple{"x", "y", "z"}));
}

TEST(Canonicalize, Examples) {
  const auto e1 = embed_line(line({5, 6, 8}));
  ASSERT_TRUE(e1);
  const auto c1 = canonicalize(*e1);
  EXPECT_EQ(c1.at("5"), QuadScalar(0));
  EXPECT_EQ(c1.at("6"), QuadScalar(1));
  EXPECT_EQ(c1.at("8"), QuadScalar(3));

  // Coordinates {0, -1, -3} under their own labels: reflect, then translate.
  const auto m = FiniteMetricSpace({"a", "b", "c"}, {0, 1, 3, 1, 0, 2, 3, 2, 0});
  const auto e2 = LineEmbedding::certify(m, {{"a", 0}, {"b", -1}, {"c", -3}});
  ASSERT_TRUE(e2);
  const auto c2 = canonicalize(*e2);
  EXPECT_EQ(c2.at("a"), QuadScalar(0));
  EXPECT_EQ(c2.at("b"), QuadScalar(1));
  EXPECT_EQ(c2.at("c"), QuadScalar(3));
}

TEST(Canonicalize, InvariantUnderIsometriesOfTheLine) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coef(-9, 9);
  const QuadScalar s = QuadScalar::sqrt_of(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<QuadScalar, ValueLess> pts;
    while (pts.size() < 5) pts.insert(QuadScalar(coef(rng)) + s * Rational(coef(rng)));
    std::vector<QuadScalar> v(pts.begin(), pts.end());
    const auto m = line(v);
    std::map<std::string, QuadScalar> truth;
    for (std::size_t i = 0; i < v.size(); ++i) truth.emplace(m.label(i), v[i]);
    const auto e = LineEmbedding::certify(m, truth);
    ASSERT_TRUE(e);
    const QuadScalar shift = QuadScalar(coef(rng)) + s * Rational(coef(rng));
    const auto moved = e->transformed(trial % 2 ? -1 : 1, shift);
    EXPECT_EQ(canonicalize(*e), canonicalize(moved));
  }
}

TEST(Certify, RejectsWrongCoordinates) {
  const auto m = line({0, 1, 3});
  EXPECT_FALSE(LineEmbedding::certify(m, {{"0", 0}, {"1", 1}, {"3", 4}}));
  EXPECT_FALSE(LineEmbedding::certify(m, {{"0", 0}, {"1", 1}}));
  EXPECT_FALSE(LineEmbedding::certify(m, {{"0", 0}, {"1", 1}, {"x", 3}}));
}

// Random integer matrices that happen to be sublines: the constructive route
// and exhaustive search must agree, and rectangles are the only exceptions.
TEST(DecideEmbeddable, AgreesWithBruteForceOnRandomSublines) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> coord(-6, 6);
  std::uniform_int_distribution<int> pick(0, 2);
  int sublines = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<std::string> labels{"a", "b", "c", "d", "e"};
    std::vector<QuadScalar> d(25, QuadScalar(0));
    if (pick(rng) == 0) {
      // Corners of an l1 rectangle plus a fifth point on the boundary.
      const long p = 1 + std::labs(coord(rng)), q = 1 + std::labs(coord(rng));
      const std::vector<std::array<long, 2>> pts{{-p, -q}, {p, -q}, {p, q}, {-p, q}, {p, coord(rng) % (q + 1)}};
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          d[i * 5 + j] = QuadScalar(std::labs(pts[i][0] - pts[j][0]) + std::labs(pts[i][1] - pts[j][1]));
    } else {
      std::vector<long> xs;
      for (int i = 0; i < 5; ++i) xs.push_back(coord(rng));
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) d[i * 5 + j] = QuadScalar(std::labs(xs[i] - xs[j]));
      d[1] = d[5] = d[1] + QuadScalar(pick(rng) == 0 ? 1 : 0);
    }
    const FiniteMetricSpace m(labels, d);
    if (!m.is_valid() || !is_subline(m).holds) continue;
    ++sublines;
    const auto decision = decide_embeddable(m);
    const auto searched = brute_force_embed(m);
    ASSERT_EQ(decision.embeddable, searched.has_value()) << format_matrix(m);
    if (!decision.embeddable) {
      EXPECT_TRUE(decision.rectangle);
    }
  }
  EXPECT_GT(sublines, 500);
}

TEST(FormatEmbedding, SortedByCoordinate) {
  const auto e = embed_line(line({3, 0, 1}));
  ASSERT_TRUE(e);
  EXPECT_EQ(format_embedding(*e), "0\t0\n1\t1\n3\t3\n");
}

}  // namespace
