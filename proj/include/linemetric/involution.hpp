#pragma once

// The dense ray X = Phi[G_+] built from the involution Phi = diag(-1, 1) on
// G = <a, b*sqrt(d)>, together with the finite certificates that X is a ray,
// is dense, and is not isometric to the cone G_+.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "linemetric/additive_map.hpp"
#include "linemetric/error.hpp"
#include "linemetric/lattice.hpp"
#include "linemetric/scalar.hpp"
#include "linemetric/symbolic.hpp"

namespace linemetric {

struct Example1Instance {
  std::int64_t d;
  QuadScalar a;  // negated by phi
  QuadScalar b;  // fixed by phi
  Lattice group;
  AdditiveMap phi;
  SymbolicSet ray;  // phi[cone(group)]
  QuadScalar apex;
};

inline Example1Instance build_example1(std::int64_t d, const Rational& a, const Rational& b_coeff) {
  if (d < 2 || !is_squarefree(d)) throw DomainError("d must be a squarefree integer >= 2, got " + std::to_string(d));
  if (a.sign() <= 0) throw DomainError("a must be positive");
  if (b_coeff.sign() <= 0) throw DomainError("b_coeff must be positive");
  QuadScalar qa(a);
  QuadScalar qb(Rational(0), b_coeff, d);
  Lattice group{qa, qb};
  const AdditiveMap phi = AdditiveMap::diagonal(Rational(-1), Rational(1), d);
  if (!(phi(qa) == -qa) || !(phi(qb) == qb)) throw InternalInconsistency("phi does not negate a and fix b");
  if (!phi.compose(phi).is_identity()) throw InternalInconsistency("phi is not an involution");
  if (!(image_lattice(phi, group) == group)) throw InternalInconsistency("phi[G] differs from G");
  SymbolicSet ray = SymbolicSet::image(phi, SymbolicSet::cone(group));
  return Example1Instance{d, std::move(qa), std::move(qb), std::move(group), phi, std::move(ray), QuadScalar(0)};
}

namespace detail {

inline std::int64_t l1_norm(const BoxCoords& c) {
  return (c[0] < 0 ? -c[0] : c[0]) + (c[1] < 0 ? -c[1] : c[1]);
}

}  // namespace detail

// Window points ordered by (L1 norm of box coordinates, coordinates).
inline std::vector<WindowPoint> window_points_by_norm(const SymbolicSet& s, std::int64_t bound) {
  auto pts = window_points(s, bound);
  std::stable_sort(pts.begin(), pts.end(), [](const WindowPoint& p, const WindowPoint& q) {
    const auto np = detail::l1_norm(p.coords);
    const auto nq = detail::l1_norm(q.coords);
    return np != nq ? np < nq : p.coords < q.coords;
  });
  return pts;
}

// First pair (x, y), in window_points_by_norm order, with o strictly between x and y.
inline std::optional<std::pair<QuadScalar, QuadScalar>> straddle_witness(const SymbolicSet& s, const QuadScalar& o,
                                                                         std::int64_t bound) {
  if (!s.contains(o)) throw DomainError("straddle center " + o.to_string() + " is not a member");
  const auto pts = window_points_by_norm(s, bound);
  std::optional<std::size_t> first_below;
  std::optional<std::size_t> first_above;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto side = pts[k].value <=> o;
    if (side < 0 && !first_below) first_below = k;
    if (side > 0 && !first_above) first_above = k;
  }
  if (!first_below || !first_above) return std::nullopt;
  const std::size_t i = std::min(*first_below, *first_above);
  const std::size_t j = std::max(*first_below, *first_above);
  return std::pair{pts[i].value, pts[j].value};
}

struct DensityReport {
  QuadScalar lo;
  QuadScalar hi;
  std::int64_t coeff_bound = 0;
  std::vector<std::size_t> counts;  // counts[k] covers [lo + k*w, lo + (k+1)*w), last bucket closed

  bool all_nonempty() const {
    return std::none_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 0; });
  }
  std::size_t empty_buckets() const { return static_cast<std::size_t>(std::count(counts.begin(), counts.end(), 0u)); }
};

// Exact bucketing of window(S, N) over [lo, hi] in equal-width buckets.
inline DensityReport density_report(const SymbolicSet& s, const QuadScalar& lo, const QuadScalar& hi,
                                    std::int64_t buckets, std::int64_t bound) {
  if (!(lo < hi)) throw DomainError("density range needs lo < hi");
  if (buckets < 1) throw DomainError("density report needs at least one bucket");
  const QuadScalar width = (hi - lo) / Rational(static_cast<long>(buckets));
  std::vector<QuadScalar> edges;  // interior edges lo + k*w, k = 1..buckets-1
  for (std::int64_t k = 1; k < buckets; ++k) edges.push_back(lo + width * Rational(static_cast<long>(k)));

  DensityReport report{lo, hi, bound, std::vector<std::size_t>(static_cast<std::size_t>(buckets), 0)};
  for (const auto& p : window_points(s, bound)) {
    if (p.value < lo || p.value > hi) continue;
    const auto it = std::upper_bound(edges.begin(), edges.end(), p.value, ValueLess{});
    ++report.counts[static_cast<std::size_t>(it - edges.begin())];
  }
  return report;
}

// Nonzero r in window(Group(G), N) where membership of r and -r in X is not exclusive.
inline std::vector<QuadScalar> antisymmetry_failures(const SymbolicSet& x, const Lattice& g, std::int64_t bound) {
  std::vector<QuadScalar> failures;
  for (const auto& p : window_points(SymbolicSet::group(g), bound)) {
    if (p.value.is_zero()) continue;
    if (x.contains(p.value) == x.contains(-p.value)) failures.push_back(p.value);
  }
  return failures;
}

struct ApexUniquenessReport {
  std::vector<std::pair<QuadScalar, QuadScalar>> witnesses;  // (c, r) with |S(c; r)| = 2
  std::vector<QuadScalar> unresolved;                         // window points with no such radius found

  bool unique() const { return unresolved.empty(); }
};

// For every window point c other than the apex, look for a radius r = c - x
// (x a smaller window point) whose sphere around c has two members. A point
// with a doubleton sphere cannot be the apex of a ray.
inline ApexUniquenessReport apex_uniqueness(const SymbolicSet& s, const QuadScalar& apex, std::int64_t bound) {
  auto pts = window_points(s, bound);
  std::vector<QuadScalar> values;
  for (auto& p : pts) values.push_back(std::move(p.value));
  std::sort(values.begin(), values.end(), ValueLess{});

  ApexUniquenessReport report;
  for (const auto& c : values) {
    if (c == apex) continue;
    bool found = false;
    for (const auto& x : values) {
      if (!(x < c)) break;
      QuadScalar r = c - x;
      if (sphere_symbolic(s, c, r).size() == 2) {
        report.witnesses.emplace_back(c, std::move(r));
        found = true;
        break;
      }
    }
    if (!found) report.unresolved.push_back(c);
  }
  return report;
}

struct DifferenceClosureReport {
  std::int64_t coeff_bound = 0;
  std::vector<QuadScalar> outside_group;  // differences of X-members not in G
  std::vector<QuadScalar> unexpressed;    // members of window(G, N/2) not found as differences

  bool passed() const { return outside_group.empty() && unexpressed.empty(); }
};

// X - X = G at window scale.
inline DifferenceClosureReport difference_closure(const SymbolicSet& x, const Lattice& g, std::int64_t bound) {
  const auto pts = window_points(x, bound);
  std::vector<BoxCoords> diffs;
  for (const auto& p : pts)
    for (const auto& q : pts) diffs.push_back({p.coords[0] - q.coords[0], p.coords[1] - q.coords[1]});
  std::sort(diffs.begin(), diffs.end());
  diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());

  DifferenceClosureReport report;
  report.coeff_bound = bound;
  std::set<std::vector<Integer>> in_group;
  for (const auto& d : diffs) {
    const QuadScalar v = x.ambient().element(std::span<const std::int64_t>(d));
    auto c = g.coordinates(v);
    if (!c) {
      report.outside_group.push_back(v);
    } else {
      in_group.insert(std::move(*c));
    }
  }
  for (const auto& p : window_points(SymbolicSet::group(g), bound / 2)) {
    if (!in_group.count(*g.coordinates(p.value))) report.unexpressed.push_back(p.value);
  }
  return report;
}

struct Example1Options {
  std::int64_t d = 2;
  Rational a{1};
  Rational b_coeff{1};
  std::int64_t coeff_bound = 50;
  std::int64_t buckets = 25;
  std::int64_t ray_bound = 20;
  std::int64_t difference_bound = 10;
  QuadScalar lo{0};
  QuadScalar hi{5};
};

struct Example1Certificate {
  Example1Options options;
  Example1Instance instance;
  bool image_is_group = false;
  bool involution = false;
  std::vector<QuadScalar> antisymmetry;
  RayConditionReport ray;
  std::optional<std::pair<QuadScalar, QuadScalar>> straddle_ray;
  std::optional<std::pair<QuadScalar, QuadScalar>> straddle_cone;
  ApexUniquenessReport cone_apex;
  DensityReport density;
  DifferenceClosureReport differences;

  bool group_part() const { return image_is_group && involution; }
  bool antisymmetry_part() const { return antisymmetry.empty(); }
  bool ray_part() const { return ray.passed(); }
  bool straddle_part() const { return straddle_ray.has_value() && !straddle_cone.has_value() && cone_apex.unique(); }
  bool density_part() const { return density.all_nonempty(); }
  bool passed() const {
    return group_part() && antisymmetry_part() && ray_part() && straddle_part() && density_part() &&
           differences.passed();
  }
};

inline Example1Certificate run_example1_certificate(const Example1Options& opt) {
  Example1Instance inst = build_example1(opt.d, opt.a, opt.b_coeff);
  const SymbolicSet cone = SymbolicSet::cone(inst.group);
  Example1Certificate cert{opt, inst, false, false, {}, {}, {}, {}, {}, {}, {}};
  cert.image_is_group = image_lattice(inst.phi, inst.group) == inst.group;
  cert.involution = inst.phi.compose(inst.phi).is_identity();
  cert.antisymmetry = antisymmetry_failures(inst.ray, inst.group, opt.coeff_bound);
  cert.ray = check_ray_conditions(inst.ray, inst.apex, opt.ray_bound);
  cert.straddle_ray = straddle_witness(inst.ray, inst.apex, opt.coeff_bound);
  cert.straddle_cone = straddle_witness(cone, QuadScalar(0), opt.coeff_bound);
  cert.cone_apex = apex_uniqueness(cone, QuadScalar(0), opt.coeff_bound);
  cert.density = density_report(inst.ray, opt.lo, opt.hi, opt.buckets, opt.coeff_bound);
  cert.differences = difference_closure(inst.ray, inst.group, opt.difference_bound);
  return cert;
}

}  // namespace linemetric
