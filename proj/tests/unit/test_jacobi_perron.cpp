#include <doctest.h>

#include "ncg/contfrac.hpp"
#include "ncg/error.hpp"
#include "ncg/jacobi_perron.hpp"
#include "random_util.hpp"

using namespace ncg;

namespace {

DigitVector dv(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

// Root of t^3 - t - 1 bracketed by bisection to within 2^-bits.
Interval plastic_root(unsigned bits) {
  BigRational lo = 1, hi = 2;
  BigRational eps = make_rational(1, BigInt(1) << bits);
  while (hi - lo > eps) {
    BigRational mid = (lo + hi) / 2;
    if (mid * mid * mid - mid - 1 < 0)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("two-dimensional expansion is the continued fraction") {
  for (long d = 2; d <= 50; ++d) {
    if (is_perfect_square(BigInt(d))) continue;
    JPExpansion e = jp_expand(std::vector<QuadExt>{QuadExt::sqrt(d)}, 20);
    PeriodicCF cf = cf_expand(QuadSurd::sqrt(d));
    REQUIRE(e.digits.size() == 20);
    for (std::size_t k = 0; k < 20; ++k) CHECK(e.digits[k] == DigitVector{cf.term(k)});
  }
}

TEST_CASE("small expansions") {
  JPExpansion r2 = jp_expand(std::vector<QuadExt>{QuadExt::sqrt(2)}, 4);
  CHECK(r2.digits == std::vector<DigitVector>{dv({1}), dv({2}), dv({2}), dv({2})});
  CHECK_FALSE(r2.terminated);

  JPExpansion half = jp_expand(std::vector<QuadExt>{QuadExt::rational(make_rational(3, 2), 1)}, 10);
  CHECK(half.digits == std::vector<DigitVector>{dv({1}), dv({2})});
  CHECK(half.terminated);

  auto conv = jp_convergents(r2);
  REQUIRE(conv.size() >= 3);
  CHECK(conv[0][0] == 1);
  CHECK(conv[1][0] == make_rational(3, 2));
  CHECK(conv[2][0] == make_rational(7, 5));

  CHECK_THROWS_AS(jp_expand(std::vector<QuadExt>{}, 3), InputError);
  CHECK_THROWS_AS(jp_expand(std::vector<QuadExt>{QuadExt::sqrt(2) - QuadExt::rational(2, 2)}, 3), PreconditionError);
}

TEST_CASE("golden ratio convergents are Fibonacci ratios") {
  QuadExt phi = (QuadExt::rational(1, 5) + QuadExt::sqrt(5)) / QuadExt::rational(2, 5);
  JPExpansion e = jp_expand(std::vector<QuadExt>{phi}, 15);
  auto conv = jp_convergents(e);
  BigInt a = 1, b = 1;
  for (const auto& c : conv) {
    CHECK(c[0] == make_rational(b, a));
    BigInt next = a + b;
    a = b;
    b = next;
  }
}

TEST_CASE("convergents approximate within 1/q^2") {
  for (long d : {2L, 3L, 7L, 19L, 43L}) {
    QuadExt x = QuadExt::sqrt(d);
    auto conv = jp_convergents(jp_expand(std::vector<QuadExt>{x}, 12));
    for (const auto& c : conv) {
      BigRational q = BigRational(c[0].get_den());
      QuadExt diff = x - QuadExt::rational(c[0], d);
      QuadExt bound = QuadExt::rational(1 / (q * q), d);
      CHECK(((diff < bound) && (diff > -bound)));
    }
  }
}

TEST_CASE("interval expansion agrees with exact expansion on rationals") {
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = static_cast<std::size_t>(testing::uniform(1, 3));
    std::vector<QuadExt> exact;
    std::vector<Interval> ivs;
    for (std::size_t i = 0; i < n; ++i) {
      BigRational r = make_rational(testing::uniform(1, 500), testing::uniform(1, 60));
      exact.push_back(QuadExt::rational(r, 1));
      ivs.push_back(Interval::point(r));
    }
    JPExpansion a = jp_expand(exact, 40);
    JPExpansion b = jp_expand(ivs, 40);
    CHECK(a.digits == b.digits);
    CHECK(a.terminated == b.terminated);
  }
}

TEST_CASE("cubic vector expansion reconstructs its input") {
  Interval t = plastic_root(400);
  Interval t2{t.lo * t.lo, t.hi * t.hi};
  JPExpansion e = jp_expand(std::vector<Interval>{t, t2}, 12, 300);
  CHECK_FALSE(e.terminated);
  CHECK(e.digits.size() == 12);
  auto back = jp_reconstruct(e, e.remainder);
  REQUIRE(back.size() == 2);
  CHECK(back[0].overlaps(t));
  CHECK(back[1].overlaps(t2));
  CHECK(back[0].width() < make_rational(1, 1000000));

  auto conv = jp_convergents(e);
  BigRational mid = (t.lo + t.hi) / 2;
  CHECK(abs(conv.back()[0] - mid) < make_rational(1, 1000));
  auto drift = jp_convergent_drift(conv);
  CHECK(drift.size() + 1 == conv.size());

  // Too little precision for many steps is detected, not guessed.
  CHECK_THROWS_AS(jp_expand(std::vector<Interval>{Interval::from_decimal("1.3247"), Interval::from_decimal("1.7549")}, 40, 256),
                  PreconditionError);
}

TEST_CASE("from_decimal") {
  Interval x = Interval::from_decimal("1.25");
  CHECK(x.lo == make_rational(249, 200));
  CHECK(x.hi == make_rational(251, 200));
  CHECK_THROWS_AS(Interval::from_decimal("1.2.5"), InputError);
  CHECK_THROWS_AS(Interval::from_decimal("abc"), InputError);
}

TEST_CASE("periodic eigenvectors") {
  JPPeriodicData two = jp_periodic_eigenvector({dv({2})});
  REQUIRE(two.exact_theta.has_value());
  CHECK(*two.exact_theta == QuadExt::rational(1, 2) + QuadExt::sqrt(2));
  CHECK(two.regenerates_period);
  CHECK(two.primitivity_power == 2);

  JPPeriodicData one = jp_periodic_eigenvector({dv({1})});
  QuadExt phi = (QuadExt::rational(1, 5) + QuadExt::sqrt(5)) / QuadExt::rational(2, 5);
  REQUIRE(one.exact_theta.has_value());
  CHECK(*one.exact_theta == phi);
  CHECK(one.char_poly.to_string() == "t^2 - t - 1");

  // Power iteration approaches the exact tail.
  double target = phi.to_double();
  CHECK(std::abs(one.approximants.back()[0].get_d() - target) < 1e-3);

  CHECK_THROWS_AS(jp_periodic_eigenvector({dv({0})}), InputError);
  CHECK_THROWS_AS(jp_periodic_eigenvector({dv({1, 2}), dv({1})}), InputError);
  try {
    jp_periodic_eigenvector({dv({0, 0})});
    FAIL("expected a primitivity failure");
  } catch (const PreconditionError& err) {
    CHECK(std::string(err.what()).find("(n-1)^2+1") != std::string::npos);
  }

  JPPeriodicData three = jp_periodic_eigenvector({dv({1, 1})});
  CHECK(three.primitivity_power >= 1);
  CHECK(three.primitivity_power <= 5);
  CHECK(three.product.determinant() == 1);
}

TEST_CASE("periodic two-dimensional tails regenerate") {
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<DigitVector> period;
    long len = testing::uniform(1, 4);
    for (long k = 0; k < len; ++k) period.push_back(dv({testing::uniform(1, 9)}));
    JPPeriodicData d = jp_periodic_eigenvector(period);
    CHECK(d.regenerates_period);
  }
}

TEST_CASE("parse_digit_vectors") {
  auto v = parse_digit_vectors("1,0;0,1;2,3");
  REQUIRE(v.size() == 3);
  CHECK(v[2] == dv({2, 3}));
  CHECK_THROWS_AS(parse_digit_vectors("1,;2"), InputError);
}
