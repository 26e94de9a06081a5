#pragma once

// Finitely generated subgroups of Q(sqrt d) (rank <= 2). A lattice L is stored
// as (1/D) * Lambda with D the least common denominator of its elements and
// Lambda a subgroup of Z^2 in (rational part, irrational part) coordinates,
// kept in Hermite normal form:
//
//   rank 2:  (a, b), (0, c)   a > 0, c > 0, 0 <= b < c
//   rank 1:  (a, b)           first nonzero entry positive
//
// The form is unique, so equality of lattices is equality of (D, basis).

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "linemetric/error.hpp"
#include "linemetric/scalar.hpp"

namespace linemetric {

using IntVec2 = std::array<Integer, 2>;

class Lattice {
 public:
  explicit Lattice(std::vector<QuadScalar> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw DomainError("a lattice needs at least one generator");
    ScalarContext ctx;
    for (const auto& g : generators_) ctx.infer(g);
    radicand_ = ctx.radicand.value_or(1);

    denominator_ = 1;
    for (const auto& g : generators_) {
      mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), g.rat_part().denominator().get_mpz_t());
      mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), g.irr_part().denominator().get_mpz_t());
    }
    std::vector<IntVec2> vectors;
    vectors.reserve(generators_.size());
    for (const auto& g : generators_) vectors.push_back(*scaled(g));
    basis_ = hermite_normal_form(std::move(vectors));
  }

  Lattice(std::initializer_list<QuadScalar> generators) : Lattice(std::vector<QuadScalar>(generators)) {}

  const std::vector<QuadScalar>& generators() const noexcept { return generators_; }
  std::int64_t radicand() const noexcept { return radicand_; }
  const Integer& denominator() const noexcept { return denominator_; }
  const std::vector<IntVec2>& basis() const noexcept { return basis_; }
  std::size_t rank() const noexcept { return basis_.size(); }

  // The canonical basis as field elements.
  std::vector<QuadScalar> basis_elements() const {
    std::vector<QuadScalar> out;
    for (const auto& v : basis_) out.push_back(to_scalar(v));
    return out;
  }

  // Integer coordinates of x in the canonical basis, or nullopt if x is not in L.
  std::optional<std::vector<Integer>> coordinates(const QuadScalar& x) const {
    check_field(x);
    if (!x.is_rational() && radicand_ == 1) return std::nullopt;
    auto v = scaled(x);
    if (!v) return std::nullopt;
    auto& [p, q] = *v;
    switch (basis_.size()) {
      case 0:
        if (p == 0 && q == 0) return std::vector<Integer>{};
        return std::nullopt;
      case 1: {
        const auto& [a, b] = basis_[0];
        if (a != 0) {
          if (!mpz_divisible_p(p.get_mpz_t(), a.get_mpz_t())) return std::nullopt;
          Integer k = p / a;
          if (q != k * b) return std::nullopt;
          return std::vector<Integer>{std::move(k)};
        }
        if (p != 0 || !mpz_divisible_p(q.get_mpz_t(), b.get_mpz_t())) return std::nullopt;
        return std::vector<Integer>{q / b};
      }
      default: {
        const auto& [a, b] = basis_[0];
        const Integer& c = basis_[1][1];
        if (!mpz_divisible_p(p.get_mpz_t(), a.get_mpz_t())) return std::nullopt;
        Integer k = p / a;
        Integer rest = q - k * b;
        if (!mpz_divisible_p(rest.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
        return std::vector<Integer>{std::move(k), rest / c};
      }
    }
  }

  bool contains(const QuadScalar& x) const { return coordinates(x).has_value(); }

  // sum_k coords[k] * basis[k]; coords beyond the rank are ignored.
  QuadScalar element(std::span<const std::int64_t> coords) const {
    Integer p = 0;
    Integer q = 0;
    for (std::size_t k = 0; k < basis_.size() && k < coords.size(); ++k) {
      const Integer c = static_cast<long>(coords[k]);
      p += c * basis_[k][0];
      q += c * basis_[k][1];
    }
    return to_scalar({p, q});
  }

  QuadScalar element(std::span<const Integer> coords) const {
    Integer p = 0;
    Integer q = 0;
    for (std::size_t k = 0; k < basis_.size() && k < coords.size(); ++k) {
      p += coords[k] * basis_[k][0];
      q += coords[k] * basis_[k][1];
    }
    return to_scalar({p, q});
  }

  friend bool operator==(const Lattice& l1, const Lattice& l2) {
    const bool irrational1 = l1.has_irrational_direction();
    const bool irrational2 = l2.has_irrational_direction();
    if (irrational1 && irrational2 && l1.radicand_ != l2.radicand_) {
      throw RadicandMismatch("lattices over sqrt(" + std::to_string(l1.radicand_) + ") and sqrt(" +
                             std::to_string(l2.radicand_) + ")");
    }
    return irrational1 == irrational2 && l1.denominator_ == l2.denominator_ && l1.basis_ == l2.basis_;
  }

  // "<1, 1*sqrt(2)>" from the canonical basis.
  std::string to_string() const {
    std::string out = "<";
    const auto elems = basis_elements();
    if (elems.empty()) out += "0";
    for (std::size_t i = 0; i < elems.size(); ++i) out += (i ? ", " : "") + elems[i].to_string();
    return out + ">";
  }

 private:
  bool has_irrational_direction() const {
    for (const auto& v : basis_)
      if (v[1] != 0) return true;
    return false;
  }

  void check_field(const QuadScalar& x) const {
    if (!x.is_rational() && radicand_ != 1 && x.radicand() != radicand_) {
      throw RadicandMismatch("scalar over sqrt(" + std::to_string(x.radicand()) + ") against lattice over sqrt(" +
                             std::to_string(radicand_) + ")");
    }
  }

  // D * x as an integer vector, or nullopt if D * x is not integral.
  std::optional<IntVec2> scaled(const QuadScalar& x) const {
    const mpq_class p = x.rat_part().mpq() * denominator_;
    const mpq_class q = x.irr_part().mpq() * denominator_;
    if (p.get_den() != 1 || q.get_den() != 1) return std::nullopt;
    return IntVec2{p.get_num(), q.get_num()};
  }

  QuadScalar to_scalar(const IntVec2& v) const {
    return QuadScalar(Rational(v[0], denominator_), Rational(v[1], denominator_), v[1] == 0 ? 1 : radicand_);
  }

  static std::vector<IntVec2> hermite_normal_form(std::vector<IntVec2> vs) {
    // Euclid on the first coordinate until at most one vector has it nonzero.
    for (;;) {
      std::size_t pivot = vs.size();
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i][0] == 0) continue;
        if (pivot == vs.size() || abs(vs[i][0]) < abs(vs[pivot][0])) pivot = i;
      }
      if (pivot == vs.size()) break;
      bool reduced = false;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i == pivot || vs[i][0] == 0) continue;
        Integer factor;
        mpz_tdiv_q(factor.get_mpz_t(), vs[i][0].get_mpz_t(), vs[pivot][0].get_mpz_t());
        vs[i][0] -= factor * vs[pivot][0];
        vs[i][1] -= factor * vs[pivot][1];
        reduced = true;
      }
      if (!reduced) break;
    }
    std::optional<IntVec2> head;
    Integer c = 0;
    for (auto& v : vs) {
      if (v[0] != 0) {
        head = v;
      } else {
        mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), v[1].get_mpz_t());
      }
    }
    std::vector<IntVec2> basis;
    if (!head) {
      if (c != 0) basis.push_back({Integer(0), c});
      return basis;
    }
    if ((*head)[0] < 0) {
      (*head)[0] = -(*head)[0];
      (*head)[1] = -(*head)[1];
    }
    if (c != 0) {
      Integer b;
      mpz_fdiv_r((b).get_mpz_t(), (*head)[1].get_mpz_t(), c.get_mpz_t());
      (*head)[1] = b;
      basis.push_back(*head);
      basis.push_back({Integer(0), c});
    } else {
      basis.push_back(*head);
    }
    return basis;
  }

  std::vector<QuadScalar> generators_;
  std::int64_t radicand_ = 1;
  Integer denominator_ = 1;
  std::vector<IntVec2> basis_;
};

inline bool lattice_membership(const Lattice& l, const QuadScalar& x) { return l.contains(x); }
inline bool lattice_equal(const Lattice& l1, const Lattice& l2) { return l1 == l2; }

}  // namespace linemetric
