#include "ncg/int_matrix.hpp"

#include <sstream>

#include "ncg/error.hpp"

namespace ncg {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  for (auto& e : data_) e = 0;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw InputError("matrix entry count does not match its shape");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::square_from(std::vector<BigInt> entries) {
  std::size_t n = 0;
  while (n * n < entries.size()) ++n;
  if (n == 0 || n * n != entries.size()) {
    throw InputError("expected n*n matrix entries, got " + std::to_string(entries.size()));
  }
  return IntMatrix(n, n, std::move(entries));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

BigInt IntMatrix::trace() const {
  if (!is_square()) throw InputError("trace of a non-square matrix");
  BigInt t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

BigInt IntMatrix::determinant() const {
  if (!is_square()) throw InputError("determinant of a non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t IntMatrix::rank() const {
  IntMatrix m = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && m(p, c) == 0) ++p;
    if (p == rows_) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < rows_; ++i) {
      if (m(i, c) == 0) continue;
      BigInt a = m(r, c);
      BigInt b = m(i, c);
      for (std::size_t j = c; j < cols_; ++j) m(i, j) = m(i, j) * a - m(r, j) * b;
    }
    ++r;
  }
  return r;
}

IntMatrix IntMatrix::pow(unsigned n) const {
  if (!is_square()) throw InputError("power of a non-square matrix");
  IntMatrix result = identity(rows_);
  IntMatrix base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

bool IntMatrix::is_nonnegative() const {
  for (const auto& e : data_)
    if (e < 0) return false;
  return true;
}

bool IntMatrix::is_positive() const {
  for (const auto& e : data_)
    if (e <= 0) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

IntMatrix& IntMatrix::operator-=(const IntMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator*(const BigInt& k, IntMatrix a) {
  for (auto& e : a.data_) e *= k;
  return a;
}

IntMatrix IntMatrix::operator-() const { return BigInt(-1) * *this; }

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i > 0) os << ';';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) os << ',';
      os << (*this)(i, j).get_str();
    }
  }
  os << ')';
  return os.str();
}

std::string IntMatrix::to_csv() const {
  std::string s;
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (k > 0) s += ',';
    s += data_[k].get_str();
  }
  return s;
}

IntMatrix parse_square_matrix(const std::string& text) {
  std::vector<BigInt> entries;
  std::string cleaned;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') cleaned += c == ';' ? ',' : c;
  std::size_t start = 0;
  while (start <= cleaned.size()) {
    auto comma = cleaned.find(',', start);
    if (comma == std::string::npos) comma = cleaned.size();
    entries.push_back(parse_bigint(std::string_view(cleaned).substr(start, comma - start)));
    start = comma + 1;
  }
  return IntMatrix::square_from(std::move(entries));
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("inverse of a non-square matrix");
  std::size_t n = m.rows();
  BigInt det = m.determinant();
  if (det != 1 && det != -1) throw PreconditionError("matrix is not unimodular");
  // Gauss-Jordan over Z; pivots stay +-1 because the matrix is unimodular.
  IntMatrix a = m;
  IntMatrix inv = IntMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    // Euclidean reduction on column c below the diagonal
    for (;;) {
      std::size_t best = n;
      for (std::size_t r = c; r < n; ++r)
        if (a(r, c) != 0 && (best == n || abs(a(r, c)) < abs(a(best, c)))) best = r;
      if (best == n) throw InvariantError("singular matrix in unimodular_inverse");
      a.swap_rows(c, best);
      inv.swap_rows(c, best);
      bool done = true;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a(r, c) == 0) continue;
        BigInt q = floor_div(a(r, c), a(c, c));
        a.add_row_multiple(r, c, -q);
        inv.add_row_multiple(r, c, -q);
        if (a(r, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(c, c) == -1) {
      a.negate_row(c);
      inv.negate_row(c);
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t r = 0; r < c; ++r) {
      BigInt q = a(r, c);
      if (q == 0) continue;
      a.add_row_multiple(r, c, -q);
      inv.add_row_multiple(r, c, -q);
    }
  }
  return inv;
}

}  // namespace ncg
