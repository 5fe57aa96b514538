#include "ncg/polynomial.hpp"

#include "ncg/error.hpp"

namespace ncg {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

BigRational IntPolynomial::evaluate(const BigRational& x) const {
  BigRational v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + BigRational(*it);
  return v;
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = c_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    bool unit = mag == 1 && k > 0;
    if (!unit) s += mag.get_str();
    if (k >= 1) s += var;
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

IntPolynomial char_poly_2x2(const IntMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw InputError("char_poly_2x2 expects a 2x2 matrix");
  return IntPolynomial({a.determinant(), -a.trace(), 1});
}

IntPolynomial char_poly(const IntMatrix& a) {
  if (!a.is_square()) throw InputError("characteristic polynomial of a non-square matrix");
  std::size_t n = a.rows();
  // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    BigInt t = (a * m).trace();
    BigInt q;
    mpz_divexact_ui(q.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
    c[n - k] = -q;
  }
  return IntPolynomial(std::move(c));
}

}  // namespace ncg
