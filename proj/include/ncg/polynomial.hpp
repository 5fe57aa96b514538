#pragma once

#include <string>
#include <vector>

#include "ncg/bigint.hpp"
#include "ncg/int_matrix.hpp"

namespace ncg {

/// Integer polynomial, coefficients stored lowest degree first with the
/// leading zeros trimmed; the zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);

  const std::vector<BigInt>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  BigInt coeff(std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }
  BigInt evaluate(const BigInt& x) const;
  BigRational evaluate(const BigRational& x) const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// e.g. "t^2 - 6t + 1"
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

/// t^2 - tr(A) t + det(A) for a 2x2 matrix.
IntPolynomial char_poly_2x2(const IntMatrix& a);

/// det(tI - A) for any square matrix (Faddeev-LeVerrier, exact).
IntPolynomial char_poly(const IntMatrix& a);

}  // namespace ncg
