#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "ncg/bigint.hpp"

namespace ncg {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Square matrix from row-major entries; the count must be a perfect square.
  static IntMatrix square_from(std::vector<BigInt> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<BigInt>& entries() const { return data_; }

  IntMatrix transpose() const;
  BigInt trace() const;
  /// Fraction-free (Bareiss) elimination.
  BigInt determinant() const;
  std::size_t rank() const;
  IntMatrix pow(unsigned n) const;
  bool is_nonnegative() const;
  bool is_positive() const;
  bool is_diagonal() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  IntMatrix& operator+=(const IntMatrix& o);
  IntMatrix& operator-=(const IntMatrix& o);
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const BigInt& k, IntMatrix a);
  IntMatrix operator-() const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  /// "(5,2;2,1)"
  std::string to_string() const;
  /// "5,2,2,1"
  std::string to_csv() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Parses row-major "a,b,c,d" into a square matrix.
IntMatrix parse_square_matrix(const std::string& text);

/// Inverse of a matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace ncg
