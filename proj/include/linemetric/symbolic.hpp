#pragma once

// Infinite subsets of R inside one quadratic field, represented exactly:
// subgroups, their nonnegative cones, unions of two cosets, and images under
// invertible additive maps. Membership is decidable for every form; finite
// windows (coefficient boxes) feed the finite-metric machinery.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "linemetric/additive_map.hpp"
#include "linemetric/error.hpp"
#include "linemetric/lattice.hpp"
#include "linemetric/line_embedding.hpp"
#include "linemetric/scalar.hpp"

namespace linemetric {

class SymbolicSet {
 public:
  struct Group {
    Lattice lattice;
  };
  // lattice intersected with [0, inf)
  struct Cone {
    Lattice lattice;
  };
  // (H + a) u (H + b)
  struct CosetPair {
    Lattice subgroup;
    QuadScalar a;
    QuadScalar b;
  };
  struct Image {
    AdditiveMap map;
    AdditiveMap inverse;
    std::shared_ptr<const SymbolicSet> source;
  };
  using Variant = std::variant<Group, Cone, CosetPair, Image>;

  static SymbolicSet group(Lattice l) {
    Lattice ambient = l;
    return SymbolicSet(Group{std::move(l)}, std::move(ambient));
  }
  static SymbolicSet cone(Lattice l) {
    Lattice ambient = l;
    return SymbolicSet(Cone{std::move(l)}, std::move(ambient));
  }
  static SymbolicSet cosets(Lattice h, QuadScalar a, QuadScalar b) {
    std::vector<QuadScalar> gens = h.generators();
    gens.push_back(a);
    gens.push_back(b);
    Lattice ambient(std::move(gens));
    return SymbolicSet(CosetPair{std::move(h), std::move(a), std::move(b)}, std::move(ambient));
  }
  static SymbolicSet image(const AdditiveMap& map, SymbolicSet source) {
    if (!map.is_invertible()) throw DomainError("image of a symbolic set needs an invertible map");
    Lattice ambient = image_lattice(map, source.ambient());
    auto src = std::make_shared<const SymbolicSet>(std::move(source));
    return SymbolicSet(Image{map, map.inverse(), std::move(src)}, std::move(ambient));
  }

  const Variant& variant() const noexcept { return v_; }

  // A lattice containing every member; windows are boxes in its canonical basis.
  const Lattice& ambient() const noexcept { return ambient_; }

  std::int64_t radicand() const {
    return std::visit(
        [this](const auto& s) -> std::int64_t {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Image>) {
            return s.map.radicand() != 1 ? s.map.radicand() : s.source->radicand();
          } else {
            return ambient_.radicand();
          }
        },
        v_);
  }

  bool contains(const QuadScalar& x) const {
    return std::visit(
        [&x](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Group>) {
            return s.lattice.contains(x);
          } else if constexpr (std::is_same_v<T, Cone>) {
            return x.sign() >= 0 && s.lattice.contains(x);
          } else if constexpr (std::is_same_v<T, CosetPair>) {
            return s.subgroup.contains(x - s.a) || s.subgroup.contains(x - s.b);
          } else {
            return s.source->contains(s.inverse(x));
          }
        },
        v_);
  }

  // Round-trips through parse_setspec.
  std::string to_spec() const {
    return std::visit(
        [](const auto& s) -> std::string {
          using T = std::decay_t<decltype(s)>;
          auto list = [](const std::vector<QuadScalar>& xs) {
            std::string out;
            for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i].to_string();
            return out;
          };
          if constexpr (std::is_same_v<T, Group>) {
            return "group:" + list(s.lattice.generators());
          } else if constexpr (std::is_same_v<T, Cone>) {
            return "cone:" + list(s.lattice.generators());
          } else if constexpr (std::is_same_v<T, CosetPair>) {
            return "cosets:" + list(s.subgroup.generators()) + ";" + s.a.to_string() + ";" + s.b.to_string();
          } else {
            return "image:" + s.map.to_string() + ":" + s.source->to_spec();
          }
        },
        v_);
  }

 private:
  SymbolicSet(Variant v, Lattice ambient) : v_(std::move(v)), ambient_(std::move(ambient)) {}

  Variant v_;
  Lattice ambient_;
};

inline bool member(const SymbolicSet& s, const QuadScalar& x) { return s.contains(x); }

// S(c; r) = {c - r, c + r} n S, ascending.
inline std::vector<QuadScalar> sphere_symbolic(const SymbolicSet& s, const QuadScalar& c, const QuadScalar& r) {
  if (r.sign() < 0) throw DomainError("negative sphere radius " + r.to_string());
  if (!s.contains(c)) throw DomainError("sphere center " + c.to_string() + " is not a member of " + s.to_spec());
  if (r.is_zero()) return {c};
  std::vector<QuadScalar> out;
  QuadScalar lo = c - r;
  QuadScalar hi = c + r;
  if (s.contains(lo)) out.push_back(std::move(lo));
  if (s.contains(hi)) out.push_back(std::move(hi));
  return out;
}

using BoxCoords = std::array<std::int64_t, 2>;

struct WindowPoint {
  QuadScalar value;
  BoxCoords coords{0, 0};  // coefficients in the ambient canonical basis
};

// Members whose ambient coordinates lie in [-N, N]^rank, in box (coordinate) order.
inline std::vector<WindowPoint> window_points(const SymbolicSet& s, std::int64_t bound) {
  if (bound < 0) throw DomainError("window bound must be nonnegative");
  const Lattice& amb = s.ambient();
  const std::int64_t span0 = amb.rank() >= 1 ? bound : 0;
  const std::int64_t span1 = amb.rank() >= 2 ? bound : 0;
  std::vector<WindowPoint> out;
  for (std::int64_t i = -span0; i <= span0; ++i) {
    for (std::int64_t j = -span1; j <= span1; ++j) {
      const BoxCoords c{i, j};
      QuadScalar x = amb.element(std::span<const std::int64_t>(c));
      if (s.contains(x)) out.push_back({std::move(x), c});
    }
  }
  return out;
}

struct Window {
  SymbolicSet source;
  std::int64_t coeff_bound;
  std::vector<QuadScalar> elements;  // ascending
};

inline Window window(const SymbolicSet& s, std::int64_t bound) {
  auto pts = window_points(s, bound);
  std::vector<QuadScalar> elems;
  elems.reserve(pts.size());
  for (auto& p : pts) elems.push_back(std::move(p.value));
  std::sort(elems.begin(), elems.end(), ValueLess{});
  return Window{s, bound, std::move(elems)};
}

struct RayConditionFailure {
  QuadScalar x;
  QuadScalar r;
};

// Both conditions are quantified over the window sample only; an empty report
// means "passed at scale N", not a proof.
struct RayConditionReport {
  QuadScalar apex;
  std::int64_t coeff_bound = 0;
  std::size_t points_checked = 0;
  std::size_t radii_checked = 0;
  std::vector<RayConditionFailure> cond1_failures;  // {x - r, x + r} misses S
  std::vector<QuadScalar> cond2_failures;           // both apex +- r in S

  bool passed() const { return cond1_failures.empty() && cond2_failures.empty(); }
};

namespace detail {

// Distinct positive values of pairwise differences of window points, ascending.
inline std::vector<QuadScalar> positive_differences(const SymbolicSet& s, const std::vector<WindowPoint>& pts) {
  std::vector<BoxCoords> diffs;
  diffs.reserve(pts.size() * pts.size());
  for (const auto& p : pts)
    for (const auto& q : pts) diffs.push_back({p.coords[0] - q.coords[0], p.coords[1] - q.coords[1]});
  std::sort(diffs.begin(), diffs.end());
  diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
  std::vector<QuadScalar> out;
  for (const auto& d : diffs) {
    QuadScalar r = s.ambient().element(std::span<const std::int64_t>(d));
    if (r.sign() > 0) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), ValueLess{});
  return out;
}

}  // namespace detail

// (1) for x in the window and r a window difference, {x - r, x + r} meets S;
// (2) at the apex o, {o - r, o + r} has at most one member. Every test is an
// exact membership query against S itself, so the window edge causes no false failures.
inline RayConditionReport check_ray_conditions(const SymbolicSet& s, const QuadScalar& apex, std::int64_t bound) {
  if (!s.contains(apex)) throw DomainError("apex " + apex.to_string() + " is not a member of " + s.to_spec());
  auto pts = window_points(s, bound);
  const auto radii = detail::positive_differences(s, pts);
  std::sort(pts.begin(), pts.end(), [](const WindowPoint& a, const WindowPoint& b) { return a.value < b.value; });

  RayConditionReport report;
  report.apex = apex;
  report.coeff_bound = bound;
  report.points_checked = pts.size();
  report.radii_checked = radii.size();
  for (const auto& p : pts) {
    for (const auto& r : radii) {
      if (!s.contains(p.value - r) && !s.contains(p.value + r)) report.cond1_failures.push_back({p.value, r});
    }
  }
  for (const auto& r : radii) {
    if (s.contains(apex - r) && s.contains(apex + r)) report.cond2_failures.push_back(r);
  }
  return report;
}

struct ClosureViolation {
  enum class Op { sum, difference };
  Op op;
  QuadScalar x;
  QuadScalar y;
  QuadScalar result;  // x + y or x - y
};

struct SubgroupReconstruction {
  Lattice lattice;
  std::map<std::string, QuadScalar> coordinates;  // translated and oriented
  std::vector<ClosureViolation> closure_report;
};

namespace detail {

using IntPoint = std::array<Integer, 2>;

inline Integer cross(const IntPoint& o, const IntPoint& a, const IntPoint& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Convex hull of lattice points, with an exact containment test.
class IntegerHull {
 public:
  explicit IntegerHull(std::vector<IntPoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) {
      hull_ = std::move(pts);
      return;
    }
    std::vector<IntPoint> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
      h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
      h[k++] = pts[i];
    }
    h.resize(k - 1);
    hull_ = std::move(h);
  }

  bool contains(const IntPoint& p) const {
    if (hull_.size() == 1) return p == hull_[0];
    if (hull_.size() == 2) {
      const auto& a = hull_[0];
      const auto& b = hull_[1];
      if (cross(a, b, p) != 0) return false;
      return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
             p[1] <= std::max(a[1], b[1]);
    }
    for (std::size_t i = 0; i < hull_.size(); ++i) {
      if (cross(hull_[i], hull_[(i + 1) % hull_.size()], p) < 0) return false;
    }
    return true;
  }

 private:
  std::vector<IntPoint> hull_;
};

}  // namespace detail

// Translate the smallest label to 0, orient so the nonzero coordinate nearest 0
// is positive, and take the generated lattice. A pair (x, y) is a closure
// violation when x + y (or x - y) has lattice coordinates inside the convex hull
// of the sample's lattice coordinates but is absent from the sample. A window of
// a true subgroup has none.
inline SubgroupReconstruction reconstruct_subgroup(const LineEmbedding& e) {
  if (e.size() < 2) throw DomainError("subgroup reconstruction needs at least two points");
  const QuadScalar shift = -e.coords().begin()->second;
  std::map<std::string, QuadScalar> coords;
  for (const auto& [label, x] : e.coords()) coords.emplace(label, x + shift);

  const QuadScalar* nearest = nullptr;
  QuadScalar nearest_abs;
  for (const auto& [label, x] : coords) {
    if (x.is_zero()) continue;
    QuadScalar ax = x.abs();
    if (!nearest || ax < nearest_abs || (ax == nearest_abs && x.sign() > 0)) {
      nearest = &x;
      nearest_abs = std::move(ax);
    }
  }
  if (nearest->sign() < 0) {
    for (auto& [label, x] : coords) x = -x;
  }

  std::vector<QuadScalar> values;
  for (const auto& [label, x] : coords) values.push_back(x);
  std::sort(values.begin(), values.end(), ValueLess{});
  Lattice lattice(values);

  std::vector<detail::IntPoint> points;
  for (const auto& x : values) {
    auto c = lattice.coordinates(x);
    if (!c) throw InternalInconsistency("sample point outside its own generated lattice");
    detail::IntPoint p{Integer(0), Integer(0)};
    for (std::size_t k = 0; k < c->size(); ++k) p[k] = (*c)[k];
    points.push_back(std::move(p));
  }
  const detail::IntegerHull hull(points);
  const std::set<detail::IntPoint> present(points.begin(), points.end());

  SubgroupReconstruction out{lattice, std::move(coords), {}};
  auto check = [&](ClosureViolation::Op op, std::size_t i, std::size_t j) {
    detail::IntPoint r;
    for (int k = 0; k < 2; ++k) {
      r[k] = points[i][k];
      if (op == ClosureViolation::Op::sum) r[k] += points[j][k];
      else r[k] -= points[j][k];
    }
    if (hull.contains(r) && !present.count(r)) {
      const std::array<Integer, 2> rc{r[0], r[1]};
      out.closure_report.push_back({op, values[i], values[j], lattice.element(std::span<const Integer>(rc))});
    }
  };
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (i <= j) check(ClosureViolation::Op::sum, i, j);
      if (i != j) check(ClosureViolation::Op::difference, i, j);
    }
  }
  return out;
}

namespace detail {

// Recursive-descent parser for set specs:
//
//   setspec := "group:" list | "cone:" list | "cosets:" list ";" scalar ";" scalar
//            | "image:[" rat "," rat ";" rat "," rat "]:" setspec
//   list    := scalar { "," scalar }
class SetSpecParser {
 public:
  SetSpecParser(std::string_view text, ScalarContext& ctx) : text_(text), ctx_(ctx) {}

  SymbolicSet parse() {
    SymbolicSet s = setspec();
    if (pos_ != text_.size()) fail("unexpected trailing text");
    return s;
  }

 private:
  SymbolicSet setspec() {
    if (accept("group:")) return SymbolicSet::group(Lattice(list()));
    if (accept("cone:")) return SymbolicSet::cone(Lattice(list()));
    if (accept("cosets:")) {
      auto h = list();
      expect(";");
      QuadScalar a = scalar(";");
      expect(";");
      QuadScalar b = scalar(";");
      return SymbolicSet::cosets(Lattice(std::move(h)), std::move(a), std::move(b));
    }
    if (accept("image:")) {
      expect("[");
      AdditiveMap::Matrix m;
      m[0][0] = rational(",");
      expect(",");
      m[0][1] = rational(";");
      expect(";");
      m[1][0] = rational(",");
      expect(",");
      m[1][1] = rational("]");
      expect("]");
      expect(":");
      const std::size_t at = pos_;
      SymbolicSet inner = setspec();
      const std::int64_t d = inner.radicand() != 1 ? inner.radicand() : ctx_.radicand.value_or(1);
      AdditiveMap map(m, d);
      if (!map.is_invertible()) fail_at("image map is singular", at);
      return SymbolicSet::image(map, std::move(inner));
    }
    fail("expected 'group:', 'cone:', 'cosets:' or 'image:'");
  }

  std::vector<QuadScalar> list() {
    std::vector<QuadScalar> out{scalar(",;")};
    while (accept(",")) out.push_back(scalar(",;"));
    return out;
  }

  std::string_view token(std::string_view stops) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && stops.find(text_[pos_]) == std::string_view::npos) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  QuadScalar scalar(std::string_view stops) {
    const std::size_t at = pos_;
    const auto tok = token(stops);
    try {
      QuadScalar x = parse_scalar(tok, ctx_, at + 1);
      ctx_.infer(x);
      return x;
    } catch (const RadicandMismatch& e) {
      throw ParseError(e.what(), 0, at + 1);
    }
  }

  Rational rational(std::string_view stops) {
    const std::size_t at = pos_;
    return parse_rational(token(stops), at + 1);
  }

  bool accept(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }

  void expect(std::string_view lit) {
    if (!accept(lit)) fail("expected '" + std::string(lit) + "'");
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const { throw ParseError(message, 0, at + 1); }

  std::string_view text_;
  ScalarContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SymbolicSet parse_setspec(std::string_view text, ScalarContext ctx = {}) {
  return detail::SetSpecParser(text, ctx).parse();
}

}  // namespace linemetric
