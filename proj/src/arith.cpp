#include "ncg/arith.hpp"

#include <algorithm>

#include "ncg/error.hpp"

namespace ncg {

namespace {

void require_odd_prime(const BigInt& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_prime(p)) throw PreconditionError(to_string(p) + " is not an odd prime");
}

std::uint32_t small_prime(const BigInt& p) {
  require_odd_prime(p);
  if (p >= (BigInt(1) << 31)) throw PreconditionError("prime too large for point counting");
  return static_cast<std::uint32_t>(p.get_ui());
}

std::uint32_t residue(const BigInt& x, std::uint32_t p) { return static_cast<std::uint32_t>(mod(x, BigInt(p)).get_ui()); }

std::vector<std::pair<BigInt, unsigned>> factor(BigInt n) {
  std::vector<std::pair<BigInt, unsigned>> out;
  for (BigInt q = 2; q * q <= n; ++q) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) {
      n /= q;
      ++e;
    }
    if (e > 0) out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> ds{1};
  for (const auto& [q, e] : factor(n)) {
    std::size_t base = ds.size();
    BigInt qk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      qk *= q;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * qk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

BigInt field_discriminant(const BigInt& d) { return mod(d, 4) == 1 ? d : 4 * d; }

}  // namespace

int legendre_symbol(const BigInt& a, const BigInt& p) {
  require_odd_prime(p);
  BigInt r = mod(a, p);
  if (r == 0) return 0;
  BigInt e = (p - 1) / 2;
  BigInt out;
  mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  if (out == 1) return 1;
  ensure(out == p - 1, "Euler criterion gave neither 1 nor -1");
  return -1;
}

int kronecker_symbol(const BigInt& d, const BigInt& n) {
  if (n <= 0) throw InputError("Kronecker symbol needs a positive modulus");
  return mpz_kronecker(d.get_mpz_t(), n.get_mpz_t());
}

BigRational chebyshev_t(unsigned n, const BigRational& x) {
  BigRational prev = 1, cur = x;
  if (n == 0) return prev;
  for (unsigned k = 1; k < n; ++k) {
    BigRational next = 2 * x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt pi_bound(const BigInt& d, const BigInt& n) {
  if (d < 2 || !is_squarefree(d)) throw PreconditionError("D must be a squarefree integer >= 2");
  if (n < 1) throw PreconditionError("n must be positive");
  BigInt disc = field_discriminant(d);
  BigRational bound = BigRational(n);
  for (const auto& [q, e] : factor(n)) bound *= 1 - make_rational(kronecker_symbol(disc, q), q);
  if (bound.get_den() != 1) throw PreconditionError("divisor bound is not an integer");
  return bound.get_num();
}

unsigned long pi_function(const BigInt& d, const BigInt& n) {
  BigInt bound = pi_bound(d, n);
  QuadExt eps = fundamental_unit(d, 1);
  for (const auto& k : divisors(bound)) {
    if (!k.fits_ulong_p()) break;
    unsigned long kk = k.get_ui();
    QuadExt ek = power(eps, static_cast<unsigned>(kk));
    if (!in_order(ek, n)) continue;
    ensure(fundamental_unit(d, n) == ek, "fundamental unit of the suborder is not eps^pi(n)");
    ensure(fundamental_unit_from_period(d, n) == ek, "period unit of the suborder is not eps^pi(n)");
    return kk;
  }
  throw InvariantError("no divisor of the bound puts a power of eps in the suborder");
}

EllipticCurveFp EllipticCurveFp::weierstrass(const BigInt& a, const BigInt& b, const BigInt& p) {
  EllipticCurveFp e;
  e.form = Form::Weierstrass;
  e.p = small_prime(p);
  e.a = residue(a, e.p);
  e.b = residue(b, e.p);
  BigInt disc = 4 * a * a * a + 27 * b * b;
  if (mod(disc, p) == 0) throw PreconditionError("singular curve: 4a^3 + 27b^2 = 0 mod p");
  return e;
}

EllipticCurveFp EllipticCurveFp::legendre(const BigInt& lambda, const BigInt& p) {
  EllipticCurveFp e;
  e.form = Form::Legendre;
  e.p = small_prime(p);
  e.a = residue(lambda, e.p);
  if (e.a == 0 || e.a == 1) throw PreconditionError("singular Legendre curve: lambda = 0 or 1 mod p");
  return e;
}

std::vector<std::uint32_t> EllipticCurveFp::cubic() const {
  std::uint64_t m = p;
  if (form == Form::Weierstrass) return {b, a, 0};
  // x (x - 1)(x - l) = x^3 - (1 + l) x^2 + l x
  std::uint32_t c2 = static_cast<std::uint32_t>((2 * m - 1 - a) % m);
  return {0, a, c2};
}

std::string EllipticCurveFp::to_string() const {
  std::string ps = std::to_string(p);
  if (form == Form::Weierstrass) {
    std::string rhs = "x^3";
    if (a != 0) rhs += " + " + (a == 1 ? std::string() : std::to_string(a)) + "x";
    if (b != 0) rhs += " + " + std::to_string(b);
    return "y^2 = " + rhs + " over F_" + ps;
  }
  return "y^2 = x(x - 1)(x - " + std::to_string(a) + ") over F_" + ps;
}

LocalizationReport localization_report(long b, std::uint32_t p_max) {
  if (b < 3) throw PreconditionError("b must be at least 3");
  LocalizationReport rep;
  rep.b = b;
  rep.p_max = p_max;
  const BigInt bb = b;
  const BigRational half_b = make_rational(bb, 2);
  for (std::uint32_t p = 2; p <= p_max; ++p) {
    if (!is_prime(BigInt(p))) continue;
    LocalizationRow row;
    row.p = p;
    BigInt pp = p;
    if (p == 2) {
      row.skip_reason = "even prime";
    } else if (mod(bb + 2, pp) == 0) {
      row.skip_reason = "p divides b + 2";
    } else if (mod(bb - 2, pp) == 0) {
      row.skip_reason = "singular reduction (lambda = 0 mod p)";
    }
    if (!row.skip_reason.empty()) {
      rep.rows.push_back(std::move(row));
      continue;
    }
    BigInt inv;
    BigInt den = mod(bb + 2, pp);
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
    BigInt lambda = mod((bb - 2) * inv, pp);
    EllipticCurveFp e = EllipticCurveFp::legendre(lambda, pp);
    row.good = true;
    row.a_p = trace_of_frobenius(e);
    row.hasse_ok = BigInt(row.a_p) * row.a_p <= 4 * pp;
    row.a_p_mod_p = residue(BigInt(row.a_p), p);
    row.chi = legendre_symbol(bb * bb - 4, pp);
    row.bound = pp - row.chi;
    row.divisors = divisors(row.bound);
    for (const auto& d : row.divisors) {
      BigRational t = 2 * chebyshev_t(static_cast<unsigned>(d.get_ui()), half_b);
      ensure(t.get_den() == 1, "2 T_d(b/2) is not an integer");
      BigInt v = t.get_num();
      if (BigInt(row.a_p) == v || BigInt(row.a_p) == -v) row.literal_equality = true;
      if (!row.matching_divisor) {
        if (mod(BigInt(row.a_p) - v, pp) == 0) {
          row.matching_divisor = d;
          row.matching_sign = 1;
        } else if (mod(BigInt(row.a_p) + v, pp) == 0) {
          row.matching_divisor = d;
          row.matching_sign = -1;
        }
      }
    }
    ++rep.good_rows;
    if (row.matching_divisor) ++rep.congruence_matches;
    if (row.literal_equality) ++rep.literal_matches;
    rep.rows.push_back(std::move(row));
  }
  rep.match_fraction = rep.good_rows == 0 ? BigRational(0)
                                          : make_rational(BigInt(static_cast<unsigned long>(rep.congruence_matches)),
                                                          BigInt(static_cast<unsigned long>(rep.good_rows)));
  return rep;
}

LegendreSumCheck legendre_sum_check(const BigInt& lambda, const BigInt& p) {
  LegendreSumCheck out;
  out.lambda = lambda;
  EllipticCurveFp e = EllipticCurveFp::legendre(lambda, p);
  out.p = e.p;
  out.count = count_points_bruteforce(e);
  unsigned long k = (e.p - 1) / 2;
  BigInt s = 0, lam_r = 1, binom;
  for (unsigned long r = 0; r <= k; ++r) {
    mpz_bin_uiui(binom.get_mpz_t(), k, r);
    s = mod(s + binom * binom * lam_r, p);
    lam_r = mod(lam_r * lambda, p);
  }
  out.sum_mod_p = s;
  BigInt sign = k % 2 == 0 ? 1 : -1;
  out.predicted_mod_p = mod(1 + p + sign * s, p);
  BigInt n_mod_p = mod(BigInt(static_cast<unsigned long>(out.count)), p);
  out.congruence_holds = n_mod_p == out.predicted_mod_p;
  out.opposite_sign_holds = n_mod_p == mod(1 - sign * s, p);
  return out;
}

namespace {

void require_three_mod_four(const BigInt& p) {
  if (p < 3 || !is_prime(p) || mod(p, 4) != 3)
    throw PreconditionError("only primes p = 3 mod 4 are supported (general complexity is not implemented)");
}

}  // namespace

int arithmetic_complexity(const BigInt& p) {
  require_three_mod_four(p);
  PeriodShape shape = classify_period(p, cf_expand(QuadSurd::sqrt(p)));
  ensure(shape.kind != PeriodKind::Other, "period of sqrt(p) is neither culminating nor almost culminating");
  return mod(p, 8) == 3 ? 2 : 1;
}

int q_rank(const BigInt& p) {
  require_three_mod_four(p);
  return mod(p, 8) == 3 ? 1 : 0;
}

std::vector<QCurveRow> qcurve_table(const BigInt& p_max) {
  std::vector<QCurveRow> rows;
  for (BigInt p = 3; p <= p_max; p += 4) {
    if (!is_prime(p)) continue;
    QCurveRow r;
    r.p = p;
    r.rank = q_rank(p);
    r.expansion = cf_expand(QuadSurd::sqrt(p));
    r.shape = classify_period(p, r.expansion);
    r.complexity = arithmetic_complexity(p);
    ensure(r.rank + 1 == r.complexity, "rank + 1 != complexity at p = " + to_string(p));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ncg
