#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncg {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Builds a reduced rational num/den. Throws InputError when den == 0.
BigRational make_rational(const BigInt& num, const BigInt& den);

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);
BigInt floor(const BigRational& q);
/// Nonnegative remainder in [0, |m|).
BigInt mod(const BigInt& a, const BigInt& m);

BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);

/// Splits n > 0 as n = square^2 * core with core squarefree.
struct SquarefreeSplit {
  BigInt square;
  BigInt core;
};
SquarefreeSplit squarefree_split(const BigInt& n);
bool is_squarefree(const BigInt& n);

/// Deterministic trial division; intended for desk-scale inputs.
bool is_prime(const BigInt& n);

BigInt parse_bigint(std::string_view text);
/// Accepts "n" or "n/d".
BigRational parse_rational(std::string_view text);

std::string to_string(const BigInt& n);
/// "n" for integers, "n/d" otherwise.
std::string to_string(const BigRational& q);

}  // namespace ncg
