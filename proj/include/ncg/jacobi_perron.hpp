#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncg/bigint.hpp"
#include "ncg/int_matrix.hpp"
#include "ncg/polynomial.hpp"
#include "ncg/quad_ext.hpp"

namespace ncg {

using DigitVector = std::vector<BigInt>;
using RationalVector = std::vector<BigRational>;

/// Closed rational interval, used for inputs that are not quadratic
/// (cubic vectors, decimal approximations). Endpoints are rounded outward
/// to multiples of 2^-precision after every operation.
struct Interval {
  BigRational lo;
  BigRational hi;

  static Interval point(const BigRational& x) { return {x, x}; }
  /// The decimal string read as x +- half a unit in its last digit.
  static Interval from_decimal(const std::string& text);
  bool is_point() const { return lo == hi; }
  bool contains(const BigRational& x) const { return lo <= x && x <= hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  BigRational width() const { return hi - lo; }
};

struct JPExpansion {
  std::size_t dim = 2;
  std::vector<DigitVector> digits;
  /// Some f_1 vanished: the input was reached exactly.
  bool terminated = false;
  /// Vector left after the last digit (interval expansions only).
  std::vector<Interval> remainder;
};

/// Block matrix (0 1; I b): first row e_n, rows 2..n are [I | b].
IntMatrix jp_step_matrix(const DigitVector& b);

/// Exact expansion of a vector of positive quadratic (or rational) numbers
/// sharing one field: b = floor(theta), f = theta - b,
/// theta <- (f_2/f_1, ..., f_{n-1}/f_1, 1/f_1).
JPExpansion jp_expand(const std::vector<QuadExt>& theta, std::size_t steps);

/// Same iteration on intervals. Throws PreconditionError when a floor or
/// the termination test cannot be decided at the given precision.
JPExpansion jp_expand(const std::vector<Interval>& theta, std::size_t steps, unsigned precision_bits = 256);

/// k-th entry: (B_1...B_k) e_n divided by its first coordinate, leading 1
/// dropped.
std::vector<RationalVector> jp_convergents(const JPExpansion& e);

/// Sup-norm distance between consecutive convergents. Reported only as a
/// drift diagnostic, never as a convergence verdict.
std::vector<BigRational> jp_convergent_drift(const std::vector<RationalVector>& convergents);

/// (1, theta) recovered from the digits and the remainder vector by
/// interval arithmetic; used to check that an expansion reconstructs its input.
std::vector<Interval> jp_reconstruct(const JPExpansion& e, const std::vector<Interval>& remainder);

struct JPPeriodicData {
  IntMatrix product;
  IntPolynomial char_poly;
  /// Least k <= (n-1)^2 + 1 with product^k strictly positive.
  unsigned primitivity_power = 0;
  /// Normalized power-iteration vectors (first coordinate 1 dropped).
  std::vector<RationalVector> approximants;
  /// Exact eigenvector tail (n = 2 only).
  std::optional<QuadExt> exact_theta;
  std::optional<QuadExt> exact_eigenvalue;
  /// jp_expand(exact_theta) repeats the period (n = 2 only).
  bool regenerates_period = false;
};

JPPeriodicData jp_periodic_eigenvector(const std::vector<DigitVector>& period, std::size_t iterations = 8);

/// Parses "1,0;0,1;2,3" into digit vectors.
std::vector<DigitVector> parse_digit_vectors(const std::string& text);

}  // namespace ncg
