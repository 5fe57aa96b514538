#pragma once

#include <compare>
#include <string>

#include "ncg/bigint.hpp"

namespace ncg {

/// An element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)).
///
/// D is kept squarefree: a non-squarefree radicand passed to the
/// constructor has its square part folded into b. Values whose b is zero
/// are plain rationals and combine with elements of any field; two
/// irrational values combine only when their radicands agree.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(BigRational a, BigRational b, const BigInt& radicand);
  static QuadExt rational(BigRational a, const BigInt& radicand);
  /// sqrt(n) for a positive nonsquare n.
  static QuadExt sqrt(const BigInt& n);

  const BigRational& a() const { return a_; }
  const BigRational& b() const { return b_; }
  const BigInt& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  QuadExt conjugate() const;
  BigRational trace() const { return 2 * a_; }
  BigRational norm() const { return a_ * a_ - b_ * b_ * BigRational(d_); }
  /// Sign of the value under the embedding sqrt(D) > 0.
  int sign() const;
  BigInt floor() const;
  QuadExt inverse() const;

  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);
  QuadExt operator-() const;

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

  /// Component-wise equality (radicand ignored for rational values).
  friend bool operator==(const QuadExt& x, const QuadExt& y);
  /// Real-embedding order.
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y);

  /// Approximate value, for display only.
  double to_double() const;
  /// e.g. "-1 + sqrt(2)", "(1 + sqrt(5))/2", "2/3*sqrt(15)".
  std::string to_string() const;

 private:
  BigInt joint_radicand(const QuadExt& o) const;

  BigRational a_ = 0;
  BigRational b_ = 0;
  BigInt d_ = 1;
};

BigRational quad_trace(const QuadExt& x);
BigRational quad_norm(const QuadExt& x);

/// Parses "a+b*sqrt(D)" style text: integers, rationals, "sqrt(D)",
/// "P+sqrt(D)", "(P+sqrt(D))/Q", "(P-sqrt(D))/Q", "b*sqrt(D)".
QuadExt parse_quad(const std::string& text);

}  // namespace ncg
