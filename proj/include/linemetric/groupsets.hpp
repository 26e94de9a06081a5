#pragma once

// Semiaffine and midconvex subsets of finite cyclic groups Z_n, decomposition
// search for semiaffine sets, and the shape of midconvex trace sets in
// windows [-N, N] of Z.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "linemetric/error.hpp"

namespace linemetric {

class CyclicSubset {
 public:
  explicit CyclicSubset(std::int64_t modulus) : modulus_(modulus) {
    if (modulus < 1) throw DomainError("modulus must be positive");
    bits_.assign(static_cast<std::size_t>(modulus), false);
  }

  // Elements are reduced mod n; repeats are harmless.
  static CyclicSubset from_elements(std::int64_t modulus, const std::vector<std::int64_t>& elements) {
    CyclicSubset s(modulus);
    for (auto x : elements) s.insert(x);
    return s;
  }

  // Subset whose k-th bit is bit k of mask.
  static CyclicSubset from_mask(std::int64_t modulus, std::uint64_t mask) {
    CyclicSubset s(modulus);
    for (std::int64_t k = 0; k < modulus; ++k)
      if (mask >> k & 1u) s.bits_[static_cast<std::size_t>(k)] = true;
    return s;
  }

  std::int64_t modulus() const noexcept { return modulus_; }
  std::int64_t reduce(std::int64_t x) const noexcept { return ((x % modulus_) + modulus_) % modulus_; }
  bool contains(std::int64_t x) const { return bits_[static_cast<std::size_t>(reduce(x))]; }
  void insert(std::int64_t x) { bits_[static_cast<std::size_t>(reduce(x))] = true; }
  void erase(std::int64_t x) { bits_[static_cast<std::size_t>(reduce(x))] = false; }

  std::vector<std::int64_t> elements() const {
    std::vector<std::int64_t> out;
    for (std::int64_t k = 0; k < modulus_; ++k)
      if (bits_[static_cast<std::size_t>(k)]) out.push_back(k);
    return out;
  }
  std::size_t size() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }
  bool empty() const { return size() == 0; }

  friend bool operator==(const CyclicSubset&, const CyclicSubset&) = default;

 private:
  std::int64_t modulus_;
  std::vector<bool> bits_;
};

// Subset of the window {-N, ..., N} of Z.
class WindowSubset {
 public:
  explicit WindowSubset(std::int64_t bound) : bound_(bound) {
    if (bound < 0) throw DomainError("window bound must be nonnegative");
    bits_.assign(static_cast<std::size_t>(2 * bound + 1), false);
  }

  static WindowSubset from_elements(std::int64_t bound, const std::vector<std::int64_t>& elements) {
    WindowSubset s(bound);
    for (auto x : elements) s.insert(x);
    return s;
  }

  std::int64_t bound() const noexcept { return bound_; }
  bool in_window(std::int64_t x) const noexcept { return -bound_ <= x && x <= bound_; }
  bool contains(std::int64_t x) const { return in_window(x) && bits_[static_cast<std::size_t>(x + bound_)]; }
  void insert(std::int64_t x) {
    if (!in_window(x)) {
      throw DomainError(std::to_string(x) + " lies outside the window [-" + std::to_string(bound_) + ", " +
                        std::to_string(bound_) + "]");
    }
    bits_[static_cast<std::size_t>(x + bound_)] = true;
  }

  std::vector<std::int64_t> elements() const {
    std::vector<std::int64_t> out;
    for (std::int64_t x = -bound_; x <= bound_; ++x)
      if (contains(x)) out.push_back(x);
    return out;
  }

  friend bool operator==(const WindowSubset&, const WindowSubset&) = default;

 private:
  std::int64_t bound_;
  std::vector<bool> bits_;
};

using GroupTriple = std::array<std::int64_t, 3>;

struct PredicateResult {
  bool holds = true;
  std::optional<GroupTriple> witness;  // (x, y, z) of the first failure
};

// For all x, y, z in S: x + y - z or x - y + z lies in S.
inline PredicateResult is_semiaffine(const CyclicSubset& s) {
  const auto elems = s.elements();
  for (auto x : elems)
    for (auto y : elems)
      for (auto z : elems)
        if (!s.contains(x + y - z) && !s.contains(x - y + z)) return {false, GroupTriple{x, y, z}};
  return {};
}

// Solutions z in [0, n) of 2z = t (mod n), ascending.
inline std::vector<std::int64_t> halves(std::int64_t t, std::int64_t n) {
  t = ((t % n) + n) % n;
  if (n % 2 == 1) return {(t * ((n + 1) / 2)) % n};
  if (t % 2 != 0) return {};
  return {t / 2, t / 2 + n / 2};
}

// For all x, y in S, every z with 2z = x + y lies in S.
inline PredicateResult is_midconvex(const CyclicSubset& s) {
  const auto elems = s.elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i; j < elems.size(); ++j)
      for (auto z : halves(elems[i] + elems[j], s.modulus()))
        if (!s.contains(z)) return {false, GroupTriple{elems[i], elems[j], z}};
  return {};
}

// The subgroup step * Z_n = {0, step, 2 step, ...} for a divisor step of n.
struct CyclicSubgroup {
  std::int64_t modulus;
  std::int64_t step;

  std::int64_t size() const noexcept { return modulus / step; }
  std::int64_t index() const noexcept { return step; }
  bool contains(std::int64_t x) const noexcept { return ((x % modulus) + modulus) % modulus % step == 0; }
  CyclicSubset as_subset() const {
    CyclicSubset s(modulus);
    for (std::int64_t x = 0; x < modulus; x += step) s.insert(x);
    return s;
  }
  friend bool operator==(const CyclicSubgroup&, const CyclicSubgroup&) = default;
};

// One subgroup per divisor, ascending by size.
inline std::vector<CyclicSubgroup> enumerate_subgroups(std::int64_t n) {
  if (n < 1) throw DomainError("modulus must be positive");
  std::vector<CyclicSubgroup> out;
  for (std::int64_t step = n; step >= 1; --step)
    if (n % step == 0) out.push_back({n, step});
  return out;
}

// S = (H + a) u (H + b)
struct CosetForm {
  CyclicSubgroup subgroup;
  std::int64_t a;
  std::int64_t b;
};

// S = (H \ C) + g, with C midconvex in H. C is stored re-indexed into
// Z_{|H|}: k stands for k * step.
struct ComplementForm {
  CyclicSubgroup subgroup;
  CyclicSubset removed;
  std::int64_t shift;
};

using SemiaffineDecomposition = std::variant<CosetForm, ComplementForm>;

inline CyclicSubset reconstruct(const SemiaffineDecomposition& dec) {
  return std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        const auto& h = f.subgroup;
        CyclicSubset out(h.modulus);
        if constexpr (std::is_same_v<T, CosetForm>) {
          for (std::int64_t x = 0; x < h.modulus; x += h.step) {
            out.insert(x + f.a);
            out.insert(x + f.b);
          }
        } else {
          for (std::int64_t k = 0; k < h.size(); ++k)
            if (!f.removed.contains(k)) out.insert(k * h.step + f.shift);
        }
        return out;
      },
      dec);
}

// Form (H + a) u (H + b) with a <= b in S is tried over every subgroup first,
// then (H \ C) + g; within a form, smaller H and then smaller a, b, g win.
inline std::optional<SemiaffineDecomposition> classify_semiaffine(const CyclicSubset& s) {
  const std::int64_t n = s.modulus();
  const auto subgroups = enumerate_subgroups(n);
  const auto elems = s.elements();
  for (const auto& h : subgroups) {
    const auto sz = static_cast<std::size_t>(h.size());
    if (elems.size() != sz && elems.size() != 2 * sz) continue;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = i; j < elems.size(); ++j) {
        CosetForm f{h, elems[i], elems[j]};
        if (reconstruct(f) == s) return f;
      }
    }
  }
  for (const auto& h : subgroups) {
    for (std::int64_t g = 0; g < n; ++g) {
      bool inside = true;
      for (auto x : elems) inside = inside && h.contains(x - g);
      if (!inside) continue;
      CyclicSubset removed(h.size());
      for (std::int64_t k = 0; k < h.size(); ++k)
        if (!s.contains(k * h.step + g)) removed.insert(k);
      if (is_midconvex(removed).holds) return ComplementForm{h, std::move(removed), g};
    }
  }
  return std::nullopt;
}

// T = [lo, hi] n (offset + step Z) with step odd. The edge flags mark an end
// that touches the window boundary, where T may continue outside the window.
struct TraceShape {
  bool empty = false;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t step = 1;
  std::int64_t offset = 0;  // lo mod step
  bool lo_at_edge = false;
  bool hi_at_edge = false;
};

inline std::optional<TraceShape> analyze_trace_set(const WindowSubset& t) {
  const auto elems = t.elements();
  if (elems.empty()) return TraceShape{true};
  TraceShape shape;
  shape.lo = elems.front();
  shape.hi = elems.back();
  shape.step = elems.size() >= 2 ? elems[1] - elems[0] : 1;
  for (std::size_t i = 1; i < elems.size(); ++i)
    if (elems[i] - elems[i - 1] != shape.step) return std::nullopt;
  if (shape.step % 2 == 0) return std::nullopt;
  shape.offset = ((shape.lo % shape.step) + shape.step) % shape.step;
  shape.lo_at_edge = shape.lo == -t.bound();
  shape.hi_at_edge = shape.hi == t.bound();
  return shape;
}

// Midconvexity inside the window: for x, y in T with x + y even, (x + y) / 2 in T.
// Midpoints of window members always lie in the window, so no constraint is skipped.
inline PredicateResult is_midconvex_in_window(const WindowSubset& t) {
  const auto elems = t.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i; j < elems.size(); ++j) {
      const std::int64_t sum = elems[i] + elems[j];
      if (sum % 2 != 0) continue;
      if (!t.contains(sum / 2)) return {false, GroupTriple{elems[i], elems[j], sum / 2}};
    }
  }
  return {};
}

}  // namespace linemetric
