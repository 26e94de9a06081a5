#pragma once

// The acceptance criteria as runnable checks. Each check is exact (no numeric
// tolerance); random inputs come from fixed seeds, and the only thresholds are
// the wall-clock budgets listed in `budget_seconds`.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linemetric/additive_map.hpp"
#include "linemetric/groupsets.hpp"
#include "linemetric/involution.hpp"
#include "linemetric/lattice.hpp"
#include "linemetric/line_embedding.hpp"
#include "linemetric/metric_space.hpp"
#include "linemetric/scalar.hpp"
#include "linemetric/symbolic.hpp"

namespace linemetric::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;  // 0 = no budget
  bool informational = false;
};

namespace detail {

template <class F>
CriterionResult timed(int id, std::string title, double budget, F&& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.budget_seconds = budget;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget > 0 && r.seconds > budget) {
    r.passed = false;
    r.detail += " (over the " + std::to_string(static_cast<int>(budget)) + " s budget)";
  }
  return r;
}

inline std::vector<std::string> point_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

inline const QuadScalar& sqrt2() {
  static const QuadScalar s = QuadScalar::sqrt_of(2);
  return s;
}

// Distinct random points of Q (small numerators and denominators) or of Z + Z*sqrt2.
inline std::vector<QuadScalar> random_points(std::mt19937_64& rng, std::size_t n, bool quadratic) {
  std::set<QuadScalar, ValueLess> seen;
  std::vector<QuadScalar> out;
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 6);
  std::uniform_int_distribution<long> coef(-12, 12);
  while (out.size() < n) {
    QuadScalar x = quadratic ? QuadScalar(Rational(coef(rng)), Rational(coef(rng)), 2)
                             : QuadScalar(Rational(Integer(num(rng)), Integer(den(rng))));
    if (seen.insert(x).second) out.push_back(std::move(x));
  }
  return out;
}

// The l1 metric on the corners (-p,-q), (p,-q), (p,q), (-p,q).
inline FiniteMetricSpace l1_rectangle(const QuadScalar& p, const QuadScalar& q) {
  const std::array<std::array<QuadScalar, 2>, 4> c{{{-p, -q}, {p, -q}, {p, q}, {-p, q}}};
  std::vector<QuadScalar> d;
  for (const auto& u : c)
    for (const auto& v : c) d.push_back((u[0] - v[0]).abs() + (u[1] - v[1]).abs());
  return FiniteMetricSpace({"a", "b", "c", "d"}, std::move(d));
}

inline std::string join(const std::vector<std::int64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

}  // namespace detail

// 4-point integer metrics with distances in 1..8, one per isomorphism class:
// on every subline the decision procedure agrees with exhaustive search, and
// the non-embeddable ones are exactly the l1-rectangles.
inline CriterionResult criterion1() {
  return detail::timed(1, "4-point sublines: embeddable iff no l1-rectangle", 120, [](CriterionResult& r) {
    static constexpr std::array<std::array<int, 2>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    std::array<int, 4> perm{0, 1, 2, 3};
    std::vector<std::array<int, 4>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::set<std::array<int, 6>> classes;
    std::array<int, 6> t{};
    for (int code = 0; code < 8 * 8 * 8 * 8 * 8 * 8; ++code) {
      for (int k = 0, c = code; k < 6; ++k, c /= 8) t[k] = 1 + c % 8;
      int d[4][4] = {};
      for (int k = 0; k < 6; ++k) d[pairs[k][0]][pairs[k][1]] = d[pairs[k][1]][pairs[k][0]] = t[k];
      std::array<int, 6> best{};
      bool first = true;
      for (const auto& p : perms) {
        std::array<int, 6> u{};
        for (int k = 0; k < 6; ++k) u[k] = d[p[pairs[k][0]]][p[pairs[k][1]]];
        if (first || u < best) best = u;
        first = false;
      }
      classes.insert(best);
    }

    std::size_t metrics = 0, sublines = 0, rectangles = 0, mismatches = 0;
    for (const auto& c : classes) {
      std::vector<QuadScalar> row(16, QuadScalar(0));
      for (int k = 0; k < 6; ++k) {
        row[pairs[k][0] * 4 + pairs[k][1]] = QuadScalar(c[k]);
        row[pairs[k][1] * 4 + pairs[k][0]] = QuadScalar(c[k]);
      }
      FiniteMetricSpace m({"a", "b", "c", "d"}, std::move(row));
      if (!m.is_valid()) continue;
      ++metrics;
      if (!is_subline(m).holds) continue;
      ++sublines;
      const bool decided = decide_embeddable(m).embeddable;
      const bool searched = brute_force_embed(m).has_value();
      const bool rectangle = detect_l1_rectangle(m).has_value();
      rectangles += rectangle;
      if (decided != searched || searched == rectangle) ++mismatches;
    }
    r.passed = mismatches == 0 && sublines > 0 && rectangles > 0;
    std::ostringstream out;
    out << classes.size() << " classes, " << metrics << " metrics, " << sublines << " sublines, " << rectangles
        << " rectangles, " << mismatches << " mismatches";
    r.detail = out.str();
  });
}

// Random subsets of Q and of Z + Z*sqrt2: reconstruct from the distance matrix
// and compare canonical forms with the ground truth.
inline CriterionResult criterion2() {
  return detail::timed(2, "embedding round-trip on 1000 random subsets", 30, [](CriterionResult& r) {
    std::mt19937_64 rng(20240602);
    std::uniform_int_distribution<std::size_t> size(2, 12);
    std::size_t failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const bool quadratic = trial % 2 == 1;
      const auto pts = detail::random_points(rng, size(rng), quadratic);
      const auto labels = detail::point_labels(pts.size());
      const auto m = FiniteMetricSpace::from_points(pts, labels);
      std::map<std::string, QuadScalar> truth_coords;
      for (std::size_t i = 0; i < pts.size(); ++i) truth_coords.emplace(labels[i], pts[i]);
      const auto truth = LineEmbedding::certify(m, truth_coords);
      const auto built = embed_line(m);
      if (!truth || !built || !(canonicalize(*built) == canonicalize(*truth))) ++failures;
    }
    r.passed = failures == 0;
    r.detail = "1000 subsets (500 in Q, 500 in Z+Z*sqrt2), " + std::to_string(failures) + " failures";
  });
}

// No sphere of a subline holds three points.
inline CriterionResult criterion3() {
  return detail::timed(3, "sublines have no sphere with 3 or more points", 0, [](CriterionResult& r) {
    std::mt19937_64 rng(77031);
    std::uniform_int_distribution<std::size_t> size(3, 12);
    std::uniform_int_distribution<long> coef(1, 9);
    std::size_t largest = 0, not_subline = 0, checked = 0;
    auto measure = [&](const FiniteMetricSpace& m) {
      ++checked;
      if (!is_subline(m).holds) ++not_subline;
      for (std::size_t c = 0; c < m.size(); ++c) {
        std::map<QuadScalar, std::size_t, ValueLess> counts;
        for (std::size_t x = 0; x < m.size(); ++x)
          if (x != c) ++counts[m(c, x)];
        for (const auto& [radius, k] : counts) largest = std::max(largest, k);
      }
      largest = std::max(largest, largest_sphere(m).members.size());
    };
    for (int trial = 0; trial < 400; ++trial) {
      const auto pts = detail::random_points(rng, size(rng), trial % 2 == 1);
      measure(FiniteMetricSpace::from_points(pts, detail::point_labels(pts.size())));
    }
    for (int trial = 0; trial < 100; ++trial) {
      QuadScalar p(coef(rng));
      QuadScalar q = trial % 2 ? QuadScalar(Rational(0), Rational(coef(rng)), 2) : QuadScalar(coef(rng));
      measure(detail::l1_rectangle(p, q));
    }
    r.passed = largest <= 2 && not_subline == 0;
    r.detail = std::to_string(checked) + " sublines (400 collinear, 100 rectangles), largest sphere " +
               std::to_string(largest) + ", " + std::to_string(not_subline) + " inputs not sublines";
  });
}

namespace detail {

struct PuncturedWindowScan {
  bool base_consistent = false;
  std::vector<std::int64_t> small_radius_hits;  // k where a new empty sphere has radius a or 2a
  std::vector<std::int64_t> any_radius_hits;    // k where a new empty sphere appears at all
  std::vector<std::int64_t> subline_breaks;
};

inline PuncturedWindowScan scan_punctured_windows(const Rational& a) {
  PuncturedWindowScan scan;
  std::vector<QuadScalar> pts;
  for (long k = 0; k <= 30; ++k) pts.push_back(QuadScalar(a * Rational(k)));
  const auto base = is_consistent_with_ray(FiniteMetricSpace::from_points(pts));
  const std::string apex = QuadScalar(0).to_string();
  scan.base_consistent = base.subline && !base.subline_witness &&
                         std::find(base.apexes.begin(), base.apexes.end(), apex) != base.apexes.end();
  std::set<std::pair<std::string, std::string>> base_deficits;
  for (const auto& d : base.sphericity_deficiencies) base_deficits.insert({d.center, d.radius.to_string()});

  const QuadScalar ra(a);
  const QuadScalar r2a(a * Rational(2));
  for (long k = 1; k <= 29; ++k) {
    auto punctured = pts;
    punctured.erase(punctured.begin() + k);
    const auto rep = is_consistent_with_ray(FiniteMetricSpace::from_points(punctured));
    if (!rep.subline) {
      scan.subline_breaks.push_back(k);
      scan.small_radius_hits.push_back(k);
      scan.any_radius_hits.push_back(k);
      continue;
    }
    bool small = false, any = false;
    for (const auto& d : rep.sphericity_deficiencies) {
      if (base_deficits.count({d.center, d.radius.to_string()})) continue;
      any = true;
      small = small || d.radius == ra || d.radius == r2a;
    }
    if (small) scan.small_radius_hits.push_back(k);
    if (any) scan.any_radius_hits.push_back(k);
  }
  return scan;
}

}  // namespace detail

// Windows {0, a, ..., 30a} look like rays from 0; every interior deletion must
// break the subline property or open a new empty sphere of radius a or 2a.
inline CriterionResult criterion4() {
  return detail::timed(4, "windows of aN are ray-consistent; deletions are detected at radius a or 2a", 0,
                       [](CriterionResult& r) {
                         bool ok = true;
                         std::string detail;
                         for (const Rational& a : {Rational(1), Rational(1, 2), Rational(3)}) {
                           const auto scan = detail::scan_punctured_windows(a);
                           std::vector<std::int64_t> missed;
                           for (std::int64_t k = 1; k <= 29; ++k)
                             if (std::find(scan.small_radius_hits.begin(), scan.small_radius_hits.end(), k) ==
                                 scan.small_radius_hits.end())
                               missed.push_back(k);
                           ok = ok && scan.base_consistent && missed.empty();
                           detail += (detail.empty() ? "" : "; ") + std::string("a=") + a.to_string() +
                                     (scan.base_consistent ? " window ok" : " window NOT ray-consistent") +
                                     ", undetected k: " + (missed.empty() ? "none" : detail::join(missed));
                         }
                         r.passed = ok;
                         r.detail = detail;
                       });
}

// Same scan with deficiencies at any radius counted; reported alongside criterion 4.
inline CriterionResult criterion4_any_radius() {
  return detail::timed(4, "deletions detected by a new empty sphere at any radius", 0, [](CriterionResult& r) {
    bool ok = true;
    std::string detail;
    for (const Rational& a : {Rational(1), Rational(1, 2), Rational(3)}) {
      const auto scan = detail::scan_punctured_windows(a);
      const bool all = scan.any_radius_hits.size() == 29;
      ok = ok && all;
      detail += (detail.empty() ? "" : "; ") + std::string("a=") + a.to_string() + " detected " +
                std::to_string(scan.any_radius_hits.size()) + "/29";
    }
    r.informational = true;
    r.passed = ok;
    r.detail = detail;
  });
}

// Groups: every sphere around a member at a nonzero member radius has two
// points, and windows reconstruct the lattice with no closure violations.
inline CriterionResult criterion5() {
  return detail::timed(5, "subgroup windows are 2-sublines and reconstruct their lattice", 0, [](CriterionResult& r) {
    struct Case {
      Lattice lattice;
      std::int64_t bound;
    };
    const std::vector<Case> cases{{Lattice{QuadScalar(1)}, 8},
                                  {Lattice{QuadScalar(Rational(1, 3))}, 8},
                                  {Lattice{QuadScalar(1), detail::sqrt2()}, 3}};
    std::size_t spheres = 0, bad_spheres = 0, bad_lattices = 0, violations = 0;
    std::string names;
    for (const auto& cs : cases) {
      const auto g = SymbolicSet::group(cs.lattice);
      const auto win = window(g, cs.bound);
      for (const auto& c : win.elements) {
        if (c.is_zero()) continue;
        for (const auto& rad : win.elements) {
          if (rad.is_zero()) continue;
          ++spheres;
          if (sphere_symbolic(g, c, rad.abs()).size() != 2) ++bad_spheres;
        }
      }
      const auto m = FiniteMetricSpace::from_points(win.elements);
      const auto e = embed_line(m);
      if (!e) {
        ++bad_lattices;
        continue;
      }
      const auto rec = reconstruct_subgroup(*e);
      if (!(rec.lattice == cs.lattice)) ++bad_lattices;
      violations += rec.closure_report.size();
      names += (names.empty() ? "" : ", ") + cs.lattice.to_string();
    }
    r.passed = bad_spheres == 0 && bad_lattices == 0 && violations == 0;
    r.detail = names + ": " + std::to_string(spheres) + " spheres, " + std::to_string(bad_spheres) +
               " not doubletons, " + std::to_string(bad_lattices) + " lattice mismatches, " +
               std::to_string(violations) + " closure violations";
  });
}

// The dense ray of the involution example: five-part certificate.
inline CriterionResult criterion6() {
  return detail::timed(6, "involution example certificate (d=2, N=50, 25 buckets on [0,5])", 60,
                       [](CriterionResult& r) {
                         Example1Options opt;
                         const auto c = run_example1_certificate(opt);
                         r.passed = c.group_part() && c.antisymmetry_part() && c.ray_part() && c.straddle_part() &&
                                    c.density_part();
                         std::ostringstream out;
                         out << "phi[G]=G " << c.group_part() << ", antisymmetry failures " << c.antisymmetry.size()
                             << ", ray failures " << c.ray.cond1_failures.size() + c.ray.cond2_failures.size()
                             << " at N=" << c.ray.coeff_bound << ", straddle X ";
                         if (c.straddle_ray) {
                           out << "(" << c.straddle_ray->first << ", " << c.straddle_ray->second << ")";
                         } else {
                           out << "none";
                         }
                         out << ", straddle cone " << (c.straddle_cone ? "found" : "none") << ", empty buckets "
                             << c.density.empty_buckets();
                         r.detail = out.str();
                       });
}

// Z_n for n <= 12: semiaffine iff a decomposition is found, and every
// decomposition rebuilds its input.
inline CriterionResult criterion7() {
  return detail::timed(7, "semiaffine iff decomposable, all subsets of Z_n, n <= 12", 300, [](CriterionResult& r) {
    std::size_t subsets = 0, semiaffine = 0, mismatches = 0, bad_rebuilds = 0;
    for (std::int64_t n = 1; n <= 12; ++n) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const auto s = CyclicSubset::from_mask(n, mask);
        ++subsets;
        const bool holds = is_semiaffine(s).holds;
        const auto dec = classify_semiaffine(s);
        semiaffine += holds;
        if (holds != dec.has_value()) ++mismatches;
        if (dec && !(reconstruct(*dec) == s)) ++bad_rebuilds;
      }
    }
    r.passed = mismatches == 0 && bad_rebuilds == 0;
    r.detail = std::to_string(subsets) + " subsets, " + std::to_string(semiaffine) + " semiaffine, " +
               std::to_string(mismatches) + " mismatches, " + std::to_string(bad_rebuilds) + " bad rebuilds";
  });
}

// dZ_n is midconvex iff the quotient Z_n / dZ_n = Z_d has no element of order 2, i.e. d odd.
inline CriterionResult criterion8() {
  return detail::timed(8, "subgroup dZ_n midconvex iff quotient has no even-order element, n <= 60", 0,
                       [](CriterionResult& r) {
                         std::size_t subgroups = 0, mismatches = 0;
                         for (std::int64_t n = 1; n <= 60; ++n) {
                           for (const auto& h : enumerate_subgroups(n)) {
                             ++subgroups;
                             const bool quotient_odd = h.index() % 2 == 1;
                             if (is_midconvex(h.as_subset()).holds != quotient_odd) ++mismatches;
                           }
                         }
                         r.passed = mismatches == 0;
                         r.detail = std::to_string(subgroups) + " subgroups, " + std::to_string(mismatches) +
                                    " mismatches against the index-parity formula";
                       });
}

// Images of the cone under random unimodular maps preserving G are rays at 0.
inline CriterionResult criterion9() {
  return detail::timed(9, "images of the cone under 50 random G-automorphisms satisfy the ray conditions", 0,
                       [](CriterionResult& r) {
                         const Lattice g{QuadScalar(1), detail::sqrt2()};
                         std::mt19937_64 rng(90210);
                         std::uniform_int_distribution<long> entry(-3, 3);
                         std::size_t maps = 0, failing = 0, draws = 0;
                         while (maps < 50) {
                           ++draws;
                           AdditiveMap::Matrix mat{{{Rational(entry(rng)), Rational(entry(rng))},
                                                    {Rational(entry(rng)), Rational(entry(rng))}}};
                           const AdditiveMap phi(mat, 2);
                           if (!phi.is_invertible() || !(image_lattice(phi, g) == g)) continue;
                           ++maps;
                           const auto x = SymbolicSet::image(phi, SymbolicSet::cone(g));
                           const QuadScalar apex = phi(QuadScalar(0));
                           if (!check_ray_conditions(x, apex, 10).passed()) ++failing;
                         }
                         r.passed = failing == 0;
                         r.detail = std::to_string(maps) + " maps (" + std::to_string(draws) + " draws), " +
                                    std::to_string(failing) + " with ray-condition failures at N=10";
                       });
}

inline const std::vector<std::function<CriterionResult()>>& criteria() {
  static const std::vector<std::function<CriterionResult()>> all{criterion1, criterion2, criterion3,
                                                                 criterion4, criterion5, criterion6,
                                                                 criterion7, criterion8, criterion9};
  return all;
}

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.informational ? "[INFO] " : r.passed ? "[PASS] " : "[FAIL] ") << r.id << (r.informational ? "* " : "  ")
      << r.title << " -- " << r.detail << " (" << std::fixed;
  out.precision(2);
  out << r.seconds << " s)";
  return out.str();
}

}  // namespace linemetric::acceptance
