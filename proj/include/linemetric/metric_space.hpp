#pragma once

// Finite metric spaces given by exact distance matrices, and the pointwise
// predicates on them: Triangle Equality (sublines), l1-rectangles, spheres,
// sphericity, the Banakh condition, and apex/ray checks on finite windows.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "linemetric/error.hpp"
#include "linemetric/scalar.hpp"

namespace linemetric {

struct MetricViolation {
  enum class Kind { asymmetric, nonzero_diagonal, nonpositive, triangle };
  Kind kind;
  // asymmetric/nonpositive: (i, j); nonzero_diagonal: (i, i); triangle: d(i,k) > d(i,j) + d(j,k).
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  friend bool operator==(const MetricViolation&, const MetricViolation&) = default;
};

inline const char* to_string(MetricViolation::Kind kind) {
  switch (kind) {
    case MetricViolation::Kind::asymmetric: return "asymmetric";
    case MetricViolation::Kind::nonzero_diagonal: return "nonzero-diagonal";
    case MetricViolation::Kind::nonpositive: return "nonpositive";
    case MetricViolation::Kind::triangle: return "triangle";
  }
  return "?";
}

// Labeled points with a full n x n distance matrix. Immutable; the metric axioms
// are checked once at construction and exposed through violations().
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<QuadScalar> row_major)
      : labels_(std::move(labels)), dist_(std::move(row_major)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw ShapeError("metric space needs at least one point");
    if (dist_.size() != n * n) {
      throw ShapeError("distance matrix has " + std::to_string(dist_.size()) + " entries, expected " +
                       std::to_string(n * n));
    }
    index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.emplace(labels_[i], i).second) throw ShapeError("duplicate label '" + labels_[i] + "'");
    }
    ScalarContext ctx;
    for (const auto& d : dist_) ctx.infer(d);
    radicand_ = ctx.radicand.value_or(1);
    validate();
  }

  // The metric induced on a subset of the line, d(x, y) = |x - y|.
  static FiniteMetricSpace from_points(std::span<const QuadScalar> points, std::vector<std::string> labels = {}) {
    if (labels.empty()) {
      labels.reserve(points.size());
      for (const auto& p : points) labels.push_back(p.to_string());
    }
    if (labels.size() != points.size()) throw ShapeError("label count does not match point count");
    std::vector<QuadScalar> d;
    d.reserve(points.size() * points.size());
    for (const auto& x : points)
      for (const auto& y : points) d.push_back((x - y).abs());
    return FiniteMetricSpace(std::move(labels), std::move(d));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::int64_t radicand() const noexcept { return radicand_; }

  std::size_t index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw DomainError("unknown label '" + label + "'");
    return it->second;
  }

  const QuadScalar& operator()(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  const std::vector<QuadScalar>& row_major() const noexcept { return dist_; }

  const std::vector<MetricViolation>& violations() const noexcept { return violations_; }
  bool is_valid() const noexcept { return violations_.empty(); }

  void require_valid() const {
    if (!is_valid()) throw InvalidMetric("matrix violates the metric axioms (" + std::to_string(violations_.size()) + " violations)");
  }

 private:
  void validate() {
    const std::size_t n = size();
    const auto& d = *this;
    for (std::size_t i = 0; i < n; ++i) {
      if (!d(i, i).is_zero()) violations_.push_back({MetricViolation::Kind::nonzero_diagonal, i, i, i});
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!(d(i, j) == d(j, i))) violations_.push_back({MetricViolation::Kind::asymmetric, i, j, 0});
        if (d(i, j).sign() <= 0 || d(j, i).sign() <= 0) violations_.push_back({MetricViolation::Kind::nonpositive, i, j, 0});
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || j == k) continue;
          if (d(i, k) > d(i, j) + d(j, k)) violations_.push_back({MetricViolation::Kind::triangle, i, j, k});
        }
      }
    }
  }

  std::vector<std::string> labels_;
  std::vector<QuadScalar> dist_;
  std::unordered_map<std::string, std::size_t> index_;
  std::int64_t radicand_ = 1;
  std::vector<MetricViolation> violations_;
};

inline const std::vector<MetricViolation>& verify_metric(const FiniteMetricSpace& m) { return m.violations(); }

using LabelTriple = std::array<std::string, 3>;

struct SublineResult {
  bool holds = true;
  std::optional<LabelTriple> witness;  // a triple where all three equalities fail
};

namespace detail {

inline bool triangle_equality(const FiniteMetricSpace& m, std::size_t x, std::size_t y, std::size_t z) {
  const auto& xy = m(x, y);
  const auto& xz = m(x, z);
  const auto& yz = m(y, z);
  return yz == xy + xz || xz == xy + yz || xy == xz + yz;
}

}  // namespace detail

// Lexicographically first failing triple wins.
inline SublineResult is_subline(const FiniteMetricSpace& m) {
  m.require_valid();
  const std::size_t n = m.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = y + 1; z < n; ++z)
        if (!detail::triangle_equality(m, x, y, z)) return {false, LabelTriple{m.label(x), m.label(y), m.label(z)}};
  return {};
}

// An l1-rectangle {a,b,c,d}: ab = cd, bc = ad, ac = ab + bc = bd. It is isometric
// to the corners of [-p,p] x [-q,q] under the l1 metric, {2p, 2q} = {ab, bc}.
struct RectangleWitness {
  std::array<std::string, 4> relabeling;  // (a, b, c, d)
  QuadScalar p;
  QuadScalar q;
};

inline std::optional<RectangleWitness> detect_l1_rectangle(const FiniteMetricSpace& m) {
  m.require_valid();
  if (m.size() != 4) return std::nullopt;
  std::array<std::size_t, 4> perm{0, 1, 2, 3};
  do {
    const auto [a, b, c, d] = perm;
    const auto& ab = m(a, b);
    const auto& bc = m(b, c);
    if (ab == m(c, d) && bc == m(a, d)) {
      const QuadScalar diag = ab + bc;
      if (m(a, c) == diag && m(b, d) == diag) {
        QuadScalar p = ab / Rational(2);
        QuadScalar q = bc / Rational(2);
        if (q < p) std::swap(p, q);
        return RectangleWitness{{m.label(a), m.label(b), m.label(c), m.label(d)}, std::move(p), std::move(q)};
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

struct SphereResult {
  std::string center;
  QuadScalar radius;
  std::vector<std::string> members;  // in label-list order
};

inline SphereResult sphere(const FiniteMetricSpace& m, const std::string& center, const QuadScalar& radius) {
  const std::size_t c = m.index_of(center);
  if (radius.sign() < 0) throw DomainError("negative sphere radius " + radius.to_string());
  m.require_valid();
  SphereResult s{center, radius, {}};
  for (std::size_t x = 0; x < m.size(); ++x)
    if (m(c, x) == radius) s.members.push_back(m.label(x));
  return s;
}

// The distinct values of d[X^2], ascending, always starting with 0.
inline std::vector<QuadScalar> distance_set(const FiniteMetricSpace& m) {
  m.require_valid();
  std::vector<QuadScalar> values{QuadScalar(0)};
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) values.push_back(m(i, j));
  std::sort(values.begin(), values.end(), StructuralLess{});
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::sort(values.begin(), values.end(), ValueLess{});
  return values;
}

namespace detail {

// For every center, the sizes of its spheres at each radius of `radii` (parallel arrays).
inline std::vector<std::size_t> sphere_sizes(const FiniteMetricSpace& m, std::size_t c, const std::vector<QuadScalar>& radii) {
  std::vector<QuadScalar> row;
  row.reserve(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) row.push_back(m(c, x));
  std::sort(row.begin(), row.end(), ValueLess{});
  std::vector<std::size_t> sizes(radii.size(), 0);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    while (pos < row.size() && row[pos] < radii[k]) ++pos;
    while (pos < row.size() && row[pos] == radii[k]) {
      ++sizes[k];
      ++pos;
    }
  }
  return sizes;
}

}  // namespace detail

struct SphericityResult {
  std::size_t value = 0;
  std::string center;
  QuadScalar radius;
};

// Minimum over centers c and nonzero realized radii r of |S(c; r)|. The space is
// kappa-spherical iff value >= kappa. Ties go to the first (c, r) in label/radius order.
inline SphericityResult sphericity(const FiniteMetricSpace& m) {
  m.require_valid();
  if (m.size() < 2) throw DomainError("sphericity needs at least two points");
  const auto radii = distance_set(m);
  std::optional<SphericityResult> best;
  for (std::size_t c = 0; c < m.size(); ++c) {
    const auto sizes = detail::sphere_sizes(m, c, radii);
    for (std::size_t k = 1; k < radii.size(); ++k) {
      if (!best || sizes[k] < best->value) best = SphericityResult{sizes[k], m.label(c), radii[k]};
      if (best->value == 0) return *best;
    }
  }
  return *best;
}

// The largest sphere at a nonzero radius (first in label/radius order on ties).
inline SphereResult largest_sphere(const FiniteMetricSpace& m) {
  m.require_valid();
  const auto radii = distance_set(m);
  std::size_t best_c = 0;
  std::size_t best_k = 0;
  std::size_t best_size = 0;
  for (std::size_t c = 0; c < m.size(); ++c) {
    const auto sizes = detail::sphere_sizes(m, c, radii);
    for (std::size_t k = 1; k < radii.size(); ++k) {
      if (sizes[k] > best_size) {
        best_size = sizes[k];
        best_c = c;
        best_k = k;
      }
    }
  }
  if (best_size == 0) return SphereResult{m.label(0), QuadScalar(0), {m.label(0)}};
  return sphere(m, m.label(best_c), radii[best_k]);
}

struct CenterRadius {
  std::string center;
  QuadScalar radius;

  friend bool operator==(const CenterRadius&, const CenterRadius&) = default;
};

struct BanakhResult {
  bool holds = true;
  std::optional<CenterRadius> witness;
};

// Optional restriction of the Banakh quantifiers to a sub-window.
struct BanakhScope {
  std::optional<std::vector<std::string>> centers;
  std::optional<std::vector<QuadScalar>> radii;
};

// Every sphere S(c; r), r a nonzero realized distance, must be a doubleton {x, y}
// with d(x, y) = 2r. The sphere is taken around the quantified center c.
inline BanakhResult is_banakh_window(const FiniteMetricSpace& m, const BanakhScope& scope = {}) {
  m.require_valid();
  std::vector<std::size_t> centers;
  if (scope.centers) {
    for (const auto& c : *scope.centers) centers.push_back(m.index_of(c));
  } else {
    for (std::size_t c = 0; c < m.size(); ++c) centers.push_back(c);
  }
  std::vector<QuadScalar> radii;
  if (scope.radii) {
    radii = *scope.radii;
  } else {
    radii = distance_set(m);
    radii.erase(radii.begin());
  }
  for (std::size_t c : centers) {
    for (const auto& r : radii) {
      if (r.is_zero()) continue;
      std::vector<std::size_t> members;
      for (std::size_t x = 0; x < m.size(); ++x)
        if (m(c, x) == r) members.push_back(x);
      const bool ok = members.size() == 2 && m(members[0], members[1]) == r * Rational(2);
      if (!ok) return {false, CenterRadius{m.label(c), r}};
    }
  }
  return {};
}

// Points o with |S(o; r)| <= 1 for every realized r: no repeated distance in o's row.
inline std::vector<std::string> apex_candidates(const FiniteMetricSpace& m) {
  m.require_valid();
  std::vector<std::string> apexes;
  for (std::size_t o = 0; o < m.size(); ++o) {
    std::vector<QuadScalar> row;
    for (std::size_t x = 0; x < m.size(); ++x) row.push_back(m(o, x));
    std::sort(row.begin(), row.end(), StructuralLess{});
    if (std::adjacent_find(row.begin(), row.end()) == row.end()) apexes.push_back(m.label(o));
  }
  return apexes;
}

// Necessary conditions for a finite window of a ray. Empty spheres are reported,
// not failed: windowing alone breaks 1-sphericity at the far end.
struct RayWindowReport {
  bool subline = false;
  std::optional<LabelTriple> subline_witness;
  std::vector<std::string> apexes;
  std::vector<CenterRadius> sphericity_deficiencies;

  bool consistent() const { return subline && !apexes.empty(); }
};

inline RayWindowReport is_consistent_with_ray(const FiniteMetricSpace& m) {
  RayWindowReport report;
  const auto sub = is_subline(m);
  report.subline = sub.holds;
  report.subline_witness = sub.witness;
  report.apexes = apex_candidates(m);
  const auto radii = distance_set(m);
  for (std::size_t c = 0; c < m.size(); ++c) {
    const auto sizes = detail::sphere_sizes(m, c, radii);
    for (std::size_t k = 1; k < radii.size(); ++k)
      if (sizes[k] == 0) report.sphericity_deficiencies.push_back({m.label(c), radii[k]});
  }
  return report;
}

}  // namespace linemetric
