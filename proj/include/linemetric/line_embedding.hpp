#pragma once

// Isometric embeddings of finite metric spaces into the real line.
//
// embed_line is the constructive route: take a diameter pair (a, b) and map
// every x to d(a, x). On a subline that is not an l1-rectangle this is an
// isometry; the result is always re-verified on all pairs before it is returned.
// brute_force_embed is an independent exhaustive search used as an oracle, and
// decide_embeddable is the subline/rectangle decision with the construction
// attached.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linemetric/error.hpp"
#include "linemetric/metric_space.hpp"
#include "linemetric/scalar.hpp"

namespace linemetric {

// Label -> coordinate, with |f(x) - f(y)| = d(x, y) checked when created.
class LineEmbedding {
 public:
  static std::optional<LineEmbedding> certify(const FiniteMetricSpace& m, std::map<std::string, QuadScalar> coords) {
    if (coords.size() != m.size()) return std::nullopt;
    std::vector<const QuadScalar*> by_index(m.size(), nullptr);
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto it = coords.find(m.label(i));
      if (it == coords.end()) return std::nullopt;
      by_index[i] = &it->second;
    }
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j)
        if (!((*by_index[i] - *by_index[j]).abs() == m(i, j))) return std::nullopt;
    return LineEmbedding(std::move(coords));
  }

  const std::map<std::string, QuadScalar>& coords() const noexcept { return coords_; }
  const QuadScalar& at(const std::string& label) const {
    auto it = coords_.find(label);
    if (it == coords_.end()) throw DomainError("unknown label '" + label + "'");
    return it->second;
  }
  std::size_t size() const noexcept { return coords_.size(); }

  // (label, coordinate) ascending by coordinate.
  std::vector<std::pair<std::string, QuadScalar>> sorted_by_coordinate() const {
    std::vector<std::pair<std::string, QuadScalar>> out(coords_.begin(), coords_.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
  }

  // Image under x -> sign * x + shift; isometries of the line keep certification.
  LineEmbedding transformed(int sign, const QuadScalar& shift) const {
    std::map<std::string, QuadScalar> out;
    for (const auto& [label, x] : coords_) out.emplace(label, (sign < 0 ? -x : x) + shift);
    return LineEmbedding(std::move(out));
  }

  friend bool operator==(const LineEmbedding&, const LineEmbedding&) = default;

 private:
  explicit LineEmbedding(std::map<std::string, QuadScalar> coords) : coords_(std::move(coords)) {}

  std::map<std::string, QuadScalar> coords_;
};

// Quotient by the isometries of R: shift the minimum to 0, then of the two
// reflections keep the one whose coordinates (in label order) compare smaller.
inline LineEmbedding canonicalize(const LineEmbedding& e) {
  if (e.size() == 0) return e;
  const auto sorted = e.sorted_by_coordinate();
  const QuadScalar& lo = sorted.front().second;
  const QuadScalar& hi = sorted.back().second;
  LineEmbedding forward = e.transformed(+1, -lo);
  LineEmbedding reflected = e.transformed(-1, hi);
  const bool reflected_smaller = std::lexicographical_compare(
      reflected.coords().begin(), reflected.coords().end(), forward.coords().begin(), forward.coords().end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  return reflected_smaller ? reflected : forward;
}

inline std::optional<LineEmbedding> embed_line(const FiniteMetricSpace& m) {
  m.require_valid();
  const std::size_t n = m.size();
  std::map<std::string, QuadScalar> coords;
  if (n == 1) {
    coords.emplace(m.label(0), QuadScalar(0));
    return LineEmbedding::certify(m, std::move(coords));
  }
  // Diameter pair, ties broken by (label(a), label(b)).
  std::size_t a = 0;
  std::size_t b = 1;
  auto key = [&](std::size_t i, std::size_t j) {
    return m.label(i) < m.label(j) ? std::pair{i, j} : std::pair{j, i};
  };
  std::tie(a, b) = key(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto [x, y] = key(i, j);
      const auto c = m(x, y) <=> m(a, b);
      if (c > 0 || (c == 0 && std::pair{m.label(x), m.label(y)} < std::pair{m.label(a), m.label(b)})) {
        a = x;
        b = y;
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) coords.emplace(m.label(x), m(a, x));
  return LineEmbedding::certify(m, std::move(coords));
}

inline constexpr std::size_t brute_force_limit = 14;

// Exhaustive sign search: f(x0) = 0, f(x1) = d(x0, x1) for the two smallest
// labels, then f(x) = +-d(x0, x) for the rest, pruning on any violated pair.
inline std::optional<LineEmbedding> brute_force_embed(const FiniteMetricSpace& m) {
  if (m.size() > brute_force_limit) {
    throw DomainError("brute_force_embed is limited to " + std::to_string(brute_force_limit) + " points");
  }
  m.require_valid();
  std::vector<std::size_t> order(m.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return m.label(i) < m.label(j); });

  const std::size_t x0 = order[0];
  std::vector<QuadScalar> f(m.size());
  f[x0] = 0;

  std::function<bool(std::size_t)> place = [&](std::size_t pos) -> bool {
    if (pos == order.size()) return true;
    const std::size_t x = order[pos];
    const QuadScalar& r = m(x0, x);
    // The first point after x0 only takes the positive branch (reflection symmetry).
    const int signs = pos == 1 ? 1 : 2;
    for (int s = 0; s < signs; ++s) {
      f[x] = s == 0 ? r : -r;
      bool ok = true;
      for (std::size_t k = 1; k < pos && ok; ++k) {
        const std::size_t y = order[k];
        ok = (f[x] - f[y]).abs() == m(x, y);
      }
      if (ok && place(pos + 1)) return true;
    }
    return false;
  };
  if (!place(1)) return std::nullopt;

  std::map<std::string, QuadScalar> coords;
  for (std::size_t i = 0; i < m.size(); ++i) coords.emplace(m.label(i), f[i]);
  return LineEmbedding::certify(m, std::move(coords));
}

// Exactly one of embedding / rectangle / subline_failure is set.
struct EmbedDecision {
  bool embeddable = false;
  std::optional<LineEmbedding> embedding;
  std::optional<RectangleWitness> rectangle;
  std::optional<LabelTriple> subline_failure;
};

// Embeddable iff subline and not an l1-rectangle. When the decision says yes,
// embed_line must produce a certified embedding; anything else is a defect.
inline EmbedDecision decide_embeddable(const FiniteMetricSpace& m) {
  EmbedDecision decision;
  const auto sub = is_subline(m);
  if (!sub.holds) {
    decision.subline_failure = sub.witness;
    return decision;
  }
  if (auto rect = detect_l1_rectangle(m)) {
    decision.rectangle = std::move(rect);
    return decision;
  }
  auto embedding = embed_line(m);
  if (!embedding) {
    throw InternalInconsistency("subline without rectangle witness failed the constructive embedding");
  }
  decision.embeddable = true;
  decision.embedding = std::move(embedding);
  return decision;
}

// One "label<TAB>scalar" line per point, ascending by coordinate.
inline std::string format_embedding(const LineEmbedding& e) {
  std::ostringstream out;
  for (const auto& [label, x] : e.sorted_by_coordinate()) out << label << '\t' << x.to_string() << '\n';
  return out.str();
}

}  // namespace linemetric
