#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncg/bigint.hpp"
#include "ncg/contfrac.hpp"
#include "ncg/quad_ext.hpp"

namespace ncg {

/// Euler's criterion; p must be an odd prime.
int legendre_symbol(const BigInt& a, const BigInt& p);
/// Kronecker symbol (d/n) for n > 0.
int kronecker_symbol(const BigInt& d, const BigInt& n);

/// T_n(x) by the three-term recurrence.
BigRational chebyshev_t(unsigned n, const BigRational& x);

/// Least divisor d of n * prod_{q | n} (1 - chi(q)/q) with eps^d in
/// Z + (n omega) Z, chi the Kronecker character of the field discriminant.
unsigned long pi_function(const BigInt& d, const BigInt& n);
/// The bound n * prod (1 - chi(q)/q) that pi_function divides.
BigInt pi_bound(const BigInt& d, const BigInt& n);

/// y^2 = x^3 + a x + b or y^2 = x (x - 1)(x - lambda) over F_p.
struct EllipticCurveFp {
  enum class Form { Weierstrass, Legendre };
  Form form = Form::Weierstrass;
  std::uint32_t p = 3;
  std::uint32_t a = 0;  // Weierstrass a, or lambda
  std::uint32_t b = 0;

  static EllipticCurveFp weierstrass(const BigInt& a, const BigInt& b, const BigInt& p);
  static EllipticCurveFp legendre(const BigInt& lambda, const BigInt& p);
  /// Coefficients (c0, c1, c2) of the monic cubic, reduced mod p.
  std::vector<std::uint32_t> cubic() const;
  std::string to_string() const;
};

/// Largest prime accepted by the brute-force counter: 10^4 unless the
/// NCG_MAX_PRIME environment variable says otherwise.
std::uint64_t max_brute_force_prime();

/// Projective point count 1 + sum_x (1 + (f(x)/p)); Hasse bound asserted.
/// Dispatches to the AVX2 kernel when the CPU has it.
std::uint64_t count_points_bruteforce(const EllipticCurveFp& e);

namespace kernels {
/// sum over x in F_p of chi(f(x)), chi given as a table of p entries.
std::int64_t character_sum_scalar(const std::vector<std::uint32_t>& cubic, std::uint32_t p,
                                  const std::vector<std::int32_t>& chi);
std::int64_t character_sum_avx2(const std::vector<std::uint32_t>& cubic, std::uint32_t p,
                                const std::vector<std::int32_t>& chi);
bool avx2_available();
std::vector<std::int32_t> quadratic_character_table(std::uint32_t p);
}  // namespace kernels

/// a_p = p + 1 - #E(F_p).
long trace_of_frobenius(const EllipticCurveFp& e);

struct LocalizationRow {
  std::uint32_t p = 0;
  bool good = false;
  std::string skip_reason;
  long a_p = 0;
  std::uint32_t a_p_mod_p = 0;
  int chi = 0;         // ((b^2 - 4)/p)
  BigInt bound;        // p - chi
  std::vector<BigInt> divisors;
  /// First divisor d (ascending) and sign with a_p = sign * 2 T_d(b/2) mod p.
  std::optional<BigInt> matching_divisor;
  int matching_sign = 0;
  /// a_p = +-2 T_d(b/2) as integers for some divisor d.
  bool literal_equality = false;
  bool hasse_ok = false;
};

struct LocalizationReport {
  long b = 0;
  std::uint32_t p_max = 0;
  std::vector<LocalizationRow> rows;
  std::size_t good_rows = 0;
  std::size_t congruence_matches = 0;
  std::size_t literal_matches = 0;
  BigRational match_fraction;
};

/// Curve y^2 = x (x - 1)(x - (b - 2)/(b + 2)) at every prime p <= p_max.
LocalizationReport localization_report(long b, std::uint32_t p_max);

struct LegendreSumCheck {
  BigInt lambda;
  std::uint32_t p = 0;
  std::uint64_t count = 0;
  BigInt sum_mod_p;      // sum_{r<=k} C(k, r)^2 lambda^r mod p, k = (p-1)/2
  BigInt predicted_mod_p;  // 1 + p + (-1)^k S mod p
  bool congruence_holds = false;
  /// N = 1 - (-1)^k S mod p, the Hasse-invariant form of the same sum.
  bool opposite_sign_holds = false;
};

LegendreSumCheck legendre_sum_check(const BigInt& lambda, const BigInt& p);

/// 2 for p = 3 mod 8, 1 for p = 7 mod 8 (p prime, p = 3 mod 4 only).
int arithmetic_complexity(const BigInt& p);
/// 1 for p = 3 mod 8, 0 for p = 7 mod 8.
int q_rank(const BigInt& p);

struct QCurveRow {
  BigInt p;
  int rank = 0;
  PeriodicCF expansion;
  int complexity = 0;
  PeriodShape shape;
};

/// One row per prime p = 3 mod 4 up to p_max, asserting rank + 1 = complexity.
std::vector<QCurveRow> qcurve_table(const BigInt& p_max);

}  // namespace ncg
