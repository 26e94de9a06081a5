#pragma once

// Exact scalars: arbitrary-precision rationals and elements p + q*sqrt(d) of a
// real quadratic field, plus the text grammar shared by every input format.
//
//   scalar := rat | [rat ("+"|"-")] rat "*sqrt(" uint ")"
//   rat    := ["-"] uint ["/" posuint]

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "linemetric/error.hpp"

namespace linemetric {

using Integer = mpz_class;

// Always stored reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  Rational(const Integer& numerator, const Integer& denominator) {
    if (denominator == 0) throw DomainError("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
  }

  static Rational from_mpq(mpq_class value) {
    value.canonicalize();
    Rational r;
    r.value_ = std::move(value);
    return r;
  }

  const mpq_class& mpq() const noexcept { return value_; }
  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  int sign() const noexcept { return sgn(value_); }
  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_integer() const noexcept { return value_.get_den() == 1; }

  Rational operator-() const { return from_raw(-value_); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  std::string to_string() const { return value_.get_str(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static Rational from_raw(mpq_class v) {
    Rational r;
    r.value_ = std::move(v);
    return r;
  }

  mpq_class value_;
};

namespace detail {

inline bool is_squarefree(std::int64_t n) {
  if (n < 1) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

}  // namespace detail

inline bool is_squarefree(std::int64_t n) { return detail::is_squarefree(n); }

// rat + irr * sqrt(radicand). A zero irrational part is stored with radicand 1,
// so a pure rational is compatible with every field and equality is structural.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(Rational value) : rat_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  QuadScalar(long value) : rat_(value) {}  // NOLINT(google-explicit-constructor)
  QuadScalar(int value) : rat_(value) {}  // NOLINT(google-explicit-constructor)

  QuadScalar(Rational rat, Rational irr, std::int64_t radicand)
      : rat_(std::move(rat)), irr_(std::move(irr)), radicand_(radicand) {
    if (!is_squarefree(radicand)) throw DomainError("radicand " + std::to_string(radicand) + " is not a positive squarefree integer");
    normalize();
  }

  static QuadScalar sqrt_of(std::int64_t radicand) { return QuadScalar(0, 1, radicand); }

  const Rational& rat_part() const noexcept { return rat_; }
  const Rational& irr_part() const noexcept { return irr_; }
  std::int64_t radicand() const noexcept { return radicand_; }
  bool is_rational() const noexcept { return irr_.is_zero(); }
  bool is_zero() const noexcept { return rat_.is_zero() && irr_.is_zero(); }

  // Exact sign of rat + irr*sqrt(d).
  int sign() const {
    const int p = rat_.sign();
    const int q = irr_.sign();
    if (q == 0) return p;
    if (p == 0 || p == q) return q;
    // Opposite signs: compare q^2 d against p^2.
    const mpq_class& pm = rat_.mpq();
    const mpq_class& qm = irr_.mpq();
    mpq_class lhs = qm * qm;
    lhs *= radicand_;
    const int c = cmp(lhs, pm * pm);
    return q * (c > 0 ? 1 : c < 0 ? -1 : 0);
  }

  QuadScalar operator-() const { return QuadScalar(-rat_, -irr_, radicand_, raw_tag{}); }
  QuadScalar abs() const { return sign() < 0 ? -*this : *this; }

  friend QuadScalar operator+(const QuadScalar& a, const QuadScalar& b) {
    return QuadScalar(a.rat_ + b.rat_, a.irr_ + b.irr_, common_radicand(a, b), normalize_tag{});
  }
  friend QuadScalar operator-(const QuadScalar& a, const QuadScalar& b) {
    return QuadScalar(a.rat_ - b.rat_, a.irr_ - b.irr_, common_radicand(a, b), normalize_tag{});
  }
  friend QuadScalar operator*(const QuadScalar& a, const QuadScalar& b) {
    const std::int64_t d = common_radicand(a, b);
    Rational rat = a.rat_ * b.rat_ + a.irr_ * b.irr_ * Rational(static_cast<long>(d));
    Rational irr = a.rat_ * b.irr_ + a.irr_ * b.rat_;
    return QuadScalar(std::move(rat), std::move(irr), d, normalize_tag{});
  }
  friend QuadScalar operator*(const Rational& k, const QuadScalar& x) {
    return QuadScalar(k * x.rat_, k * x.irr_, x.radicand_, normalize_tag{});
  }
  friend QuadScalar operator*(const QuadScalar& x, const Rational& k) { return k * x; }
  friend QuadScalar operator/(const QuadScalar& x, const Rational& k) {
    if (k.is_zero()) throw DomainError("division by zero");
    return QuadScalar(x.rat_ / k, x.irr_ / k, x.radicand_, normalize_tag{});
  }

  QuadScalar& operator+=(const QuadScalar& o) { return *this = *this + o; }
  QuadScalar& operator-=(const QuadScalar& o) { return *this = *this - o; }

  friend bool operator==(const QuadScalar& a, const QuadScalar& b) {
    return a.rat_ == b.rat_ && a.irr_ == b.irr_ && a.radicand_ == b.radicand_;
  }

  // Total order by real value. Throws RadicandMismatch across fields.
  friend std::strong_ordering operator<=>(const QuadScalar& a, const QuadScalar& b) {
    if (a.is_rational() && b.is_rational()) return a.rat_ <=> b.rat_;
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  // Radicand shared by a and b; a rational operand adopts the other's field.
  static std::int64_t common_radicand(const QuadScalar& a, const QuadScalar& b) {
    if (a.radicand_ == b.radicand_) return a.radicand_;
    if (a.radicand_ == 1) return b.radicand_;
    if (b.radicand_ == 1) return a.radicand_;
    throw RadicandMismatch("radicand mismatch: sqrt(" + std::to_string(a.radicand_) + ") vs sqrt(" +
                           std::to_string(b.radicand_) + ")");
  }

  // Canonical literal, e.g. "3/2", "1*sqrt(2)", "-3+2*sqrt(2)".
  std::string to_string() const {
    if (irr_.is_zero()) return rat_.to_string();
    const std::string root = "*sqrt(" + std::to_string(radicand_) + ")";
    if (rat_.is_zero()) return irr_.to_string() + root;
    return rat_.to_string() + (irr_.sign() > 0 ? "+" : "-") + irr_.abs().to_string() + root;
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadScalar& x) { return os << x.to_string(); }

 private:
  struct raw_tag {};
  struct normalize_tag {};

  QuadScalar(Rational rat, Rational irr, std::int64_t radicand, raw_tag)
      : rat_(std::move(rat)), irr_(std::move(irr)), radicand_(radicand) {}
  QuadScalar(Rational rat, Rational irr, std::int64_t radicand, normalize_tag)
      : rat_(std::move(rat)), irr_(std::move(irr)), radicand_(radicand) {
    normalize();
  }

  void normalize() {
    if (radicand_ == 1) {
      rat_ += irr_;
      irr_ = Rational();
    } else if (irr_.is_zero()) {
      radicand_ = 1;
    }
  }

  Rational rat_;
  Rational irr_;
  std::int64_t radicand_ = 1;
};

inline std::strong_ordering compare(const QuadScalar& a, const QuadScalar& b) { return a <=> b; }
inline QuadScalar abs(const QuadScalar& x) { return x.abs(); }
inline QuadScalar mul_by_rational(const Rational& k, const QuadScalar& x) { return k * x; }

// Cheap total order on the representation (not the value); for dedup and maps.
struct StructuralLess {
  bool operator()(const QuadScalar& a, const QuadScalar& b) const {
    if (a.radicand() != b.radicand()) return a.radicand() < b.radicand();
    if (auto c = a.rat_part() <=> b.rat_part(); c != 0) return c < 0;
    return a.irr_part() < b.irr_part();
  }
};

struct ValueLess {
  bool operator()(const QuadScalar& a, const QuadScalar& b) const { return a < b; }
};

// The radicand every scalar of one computation must share. Unset means "not yet
// known": the first sqrt literal fixes it (see infer()).
struct ScalarContext {
  std::optional<std::int64_t> radicand;

  static ScalarContext with(std::int64_t d) {
    if (!is_squarefree(d)) throw DomainError("radicand " + std::to_string(d) + " is not a positive squarefree integer");
    return ScalarContext{d};
  }

  // Adopt the field of x, or throw when x lives in a different one.
  void infer(const QuadScalar& x) {
    if (x.is_rational()) return;
    if (!radicand || *radicand == 1) {
      radicand = x.radicand();
    } else if (*radicand != x.radicand()) {
      throw RadicandMismatch("radicand mismatch: expected sqrt(" + std::to_string(*radicand) + "), got sqrt(" +
                             std::to_string(x.radicand()) + ")");
    }
  }
};

namespace detail {

class ScalarParser {
 public:
  ScalarParser(std::string_view text, std::size_t column_base) : text_(text), base_(column_base) {}

  QuadScalar parse(const ScalarContext& ctx) {
    if (text_.empty()) fail("empty scalar literal");
    Rational first = rational();
    if (at_end()) return QuadScalar(std::move(first));
    if (lookahead("*sqrt(")) {
      const std::int64_t d = radicand(ctx);
      expect_end();
      return QuadScalar(0, std::move(first), d);
    }
    const char op = text_[pos_];
    if (op != '+' && op != '-') fail(std::string("unexpected character '") + op + "'");
    ++pos_;
    Rational second = rational();
    if (!lookahead("*sqrt(")) fail("expected '*sqrt('");
    const std::int64_t d = radicand(ctx);
    expect_end();
    if (op == '-') second = -second;
    return QuadScalar(std::move(first), std::move(second), d);
  }

  Rational rational() {
    bool negative = false;
    if (!at_end() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    Integer num = digits("numerator");
    Integer den = 1;
    if (!at_end() && text_[pos_] == '/') {
      ++pos_;
      const std::size_t at = pos_;
      den = digits("denominator");
      if (den == 0) fail_at("zero denominator", at);
    }
    if (negative) num = -num;
    return Rational(num, den);
  }

  void expect_end() {
    if (!at_end()) fail(std::string("unexpected character '") + text_[pos_] + "'");
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  bool lookahead(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  Integer digits(const char* what) {
    const std::size_t start = pos_;
    while (!at_end() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ == start) fail(std::string("expected digits for ") + what);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::int64_t radicand(const ScalarContext& ctx) {
    const std::size_t at = pos_;
    const std::size_t start = pos_;
    while (!at_end() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ == start) fail("expected radicand digits");
    if (pos_ - start > 12) fail_at("radicand too large", at);
    const std::int64_t d = std::stoll(std::string(text_.substr(start, pos_ - start)));
    if (!is_squarefree(d)) fail_at("radicand " + std::to_string(d) + " is not a positive squarefree integer", at);
    if (at_end() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    if (d != 1 && ctx.radicand && *ctx.radicand != 1 && *ctx.radicand != d) {
      throw RadicandMismatch("radicand mismatch: expected sqrt(" +
                             std::to_string(*ctx.radicand) + "), got sqrt(" + std::to_string(d) + ")");
    }
    return d;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(message, 0, base_ + at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t base_;
};

}  // namespace detail

// column_base shifts reported columns when the literal sits inside a larger line.
inline QuadScalar parse_scalar(std::string_view text, const ScalarContext& ctx = {}, std::size_t column_base = 1) {
  return detail::ScalarParser(text, column_base).parse(ctx);
}

inline Rational parse_rational(std::string_view text, std::size_t column_base = 1) {
  detail::ScalarParser p(text, column_base);
  if (text.empty()) throw ParseError("empty rational literal", 0, column_base);
  Rational r = p.rational();
  p.expect_end();
  return r;
}

inline std::string format_scalar(const QuadScalar& x) { return x.to_string(); }

}  // namespace linemetric

template <>
struct std::hash<linemetric::QuadScalar> {
  std::size_t operator()(const linemetric::QuadScalar& x) const { return std::hash<std::string>{}(x.to_string()); }
};
