#include "ncg/bigint.hpp"

#include <cctype>

#include "ncg/error.hpp"

namespace ncg {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw InputError("division by zero");
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw InputError("division by zero");
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt floor(const BigRational& q) { return floor_div(q.get_num(), q.get_den()); }

BigInt mod(const BigInt& a, const BigInt& m) {
  if (m == 0) throw InputError("modulus is zero");
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw PreconditionError("square root of a negative integer");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const BigInt& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

SquarefreeSplit squarefree_split(const BigInt& n) {
  if (n <= 0) throw PreconditionError("squarefree part of a nonpositive integer");
  BigInt rest = n;
  BigInt square = 1;
  BigInt core = 1;
  // Strip primes up to the cube root of what remains; the cofactor then has
  // at most two prime factors and is squarefree unless it is a square.
  for (unsigned long q = 2;; ++q) {
    BigInt q3 = BigInt(q) * q * q;
    if (q3 > rest) break;
    unsigned count = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), q) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
      ++count;
    }
    for (unsigned i = 0; i < count / 2; ++i) square *= q;
    if (count % 2 == 1) core *= q;
  }
  if (rest > 1 && is_perfect_square(rest)) {
    square *= isqrt(rest);
  } else {
    core *= rest;
  }
  return {square, core};
}

bool is_squarefree(const BigInt& n) { return n > 0 && squarefree_split(n).square == 1; }

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  for (BigInt d = 3; d * d <= n; d += 2)
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
  return true;
}

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  bool ok = !s.empty();
  for (size_t i = 0; i < s.size() && ok; ++i) {
    char c = s[i];
    ok = std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && c == '-' && s.size() > 1);
  }
  if (!ok) throw InputError("not an integer: '" + std::string(text) + "'");
  return BigInt(s, 10);
}

BigRational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_bigint(text));
  return make_rational(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace ncg
