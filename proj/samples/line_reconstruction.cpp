// Recover points of Z + Z*sqrt(2) from their pairwise distances alone.

#include <iostream>
#include <vector>

#include "linemetric/linemetric.hpp"

int main() {
  using namespace linemetric;
  const QuadScalar s = QuadScalar::sqrt_of(2);
  const std::vector<QuadScalar> points{QuadScalar(0), QuadScalar(1), s, QuadScalar(3) - s, QuadScalar(-2) + s * Rational(2)};

  const auto m = FiniteMetricSpace::from_points(points);
  std::cout << format_matrix(m) << "\n";

  const auto decision = decide_embeddable(m);
  if (!decision.embeddable) {
    std::cout << "not embeddable\n";
    return 1;
  }
  std::cout << "canonical embedding:\n" << format_embedding(canonicalize(*decision.embedding));

  const auto rec = reconstruct_subgroup(*decision.embedding);
  std::cout << "generated group: " << rec.lattice.to_string() << ", " << rec.closure_report.size()
            << " closure violations\n";

  // The four corners of an l1 rectangle are a subline but not a subset of R.
  const auto rect = parse_matrix("4\na b c d\n0 4 2 6\n4 0 6 2\n2 6 0 4\n6 2 4 0\n");
  if (auto w = detect_l1_rectangle(rect)) std::cout << "rectangle with p = " << w->p << ", q = " << w->q << "\n";
  return 0;
}
