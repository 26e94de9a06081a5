#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "linemetric/error.hpp"
#include "linemetric/lattice.hpp"
#include "linemetric/scalar.hpp"

namespace linemetric {

// Q-linear map on Q(sqrt d) written in (rational part, irrational part)
// coordinates: p + q*sqrt(d)  ->  (m11 p + m12 q) + (m21 p + m22 q) * sqrt(d).
class AdditiveMap {
 public:
  using Matrix = std::array<std::array<Rational, 2>, 2>;

  AdditiveMap() : AdditiveMap(Matrix{{{1, 0}, {0, 1}}}) {}
  explicit AdditiveMap(Matrix m, std::int64_t radicand = 1) : m_(std::move(m)), radicand_(radicand) {
    if (!is_squarefree(radicand)) throw DomainError("radicand " + std::to_string(radicand) + " is not a positive squarefree integer");
  }

  static AdditiveMap identity(std::int64_t radicand = 1) { return AdditiveMap(Matrix{{{1, 0}, {0, 1}}}, radicand); }
  static AdditiveMap diagonal(Rational rat_scale, Rational irr_scale, std::int64_t radicand = 1) {
    return AdditiveMap(Matrix{{{std::move(rat_scale), 0}, {0, std::move(irr_scale)}}}, radicand);
  }

  const Matrix& matrix() const noexcept { return m_; }
  std::int64_t radicand() const noexcept { return radicand_; }
  Rational determinant() const { return m_[0][0] * m_[1][1] - m_[0][1] * m_[1][0]; }
  bool is_invertible() const { return !determinant().is_zero(); }

  QuadScalar operator()(const QuadScalar& x) const {
    const std::int64_t d = field_of(x);
    const Rational& p = x.rat_part();
    const Rational& q = x.irr_part();
    Rational rat = m_[0][0] * p + m_[0][1] * q;
    Rational irr = m_[1][0] * p + m_[1][1] * q;
    if (!irr.is_zero() && d == 1) {
      throw DomainError("map sends the rational " + x.to_string() + " outside Q; give the map a radicand");
    }
    return QuadScalar(std::move(rat), std::move(irr), irr.is_zero() ? 1 : d);
  }

  AdditiveMap inverse() const {
    const Rational det = determinant();
    if (det.is_zero()) throw DomainError("additive map is singular");
    return AdditiveMap(Matrix{{{m_[1][1] / det, -m_[0][1] / det}, {-m_[1][0] / det, m_[0][0] / det}}}, radicand_);
  }

  // (this o other)(x) = this(other(x))
  AdditiveMap compose(const AdditiveMap& other) const {
    Matrix r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r[i][j] = m_[i][0] * other.m_[0][j] + m_[i][1] * other.m_[1][j];
    return AdditiveMap(std::move(r), radicand_ != 1 ? radicand_ : other.radicand_);
  }

  bool is_identity() const { return m_ == Matrix{{{1, 0}, {0, 1}}}; }

  friend bool operator==(const AdditiveMap& a, const AdditiveMap& b) { return a.m_ == b.m_; }

  // "[m11,m12;m21,m22]"
  std::string to_string() const {
    return "[" + m_[0][0].to_string() + "," + m_[0][1].to_string() + ";" + m_[1][0].to_string() + "," +
           m_[1][1].to_string() + "]";
  }

 private:
  std::int64_t field_of(const QuadScalar& x) const {
    if (x.is_rational()) return radicand_;
    if (radicand_ != 1 && radicand_ != x.radicand()) {
      throw RadicandMismatch("map over sqrt(" + std::to_string(radicand_) + ") applied to " + x.to_string());
    }
    return x.radicand();
  }

  Matrix m_;
  std::int64_t radicand_;
};

inline QuadScalar apply(const AdditiveMap& map, const QuadScalar& x) { return map(x); }

// Phi[L], generated by the images of L's generators and re-normalized.
inline Lattice image_lattice(const AdditiveMap& map, const Lattice& l) {
  if (!map.is_invertible()) throw DomainError("image_lattice needs an invertible map");
  std::vector<QuadScalar> images;
  for (const auto& g : l.generators()) images.push_back(map(g));
  return Lattice(std::move(images));
}

}  // namespace linemetric
