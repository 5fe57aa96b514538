#include <doctest.h>

#include "ncg/error.hpp"
#include "ncg/invariants.hpp"
#include "random_util.hpp"

using namespace ncg;

namespace {

IntMatrix m2(long a, long b, long c, long d) { return IntMatrix{{a, b}, {c, d}}; }

TraceForm form(std::initializer_list<std::initializer_list<long>> rows) {
  TraceForm q;
  for (const auto& r : rows) {
    std::vector<BigRational> row;
    for (long x : r) row.emplace_back(x);
    q.gram.push_back(row);
  }
  return q;
}

QuadExt q(const std::string& s) { return parse_quad(s); }

// Applies U (rows u0, u1) to the basis: new_i = sum_j U_ij v_j.
std::vector<QuadExt> change_basis(const std::vector<QuadExt>& v, const IntMatrix& u) {
  std::vector<QuadExt> out;
  for (std::size_t i = 0; i < 2; ++i) {
    QuadExt acc = QuadExt::rational(0, v[0].radicand());
    for (std::size_t j = 0; j < 2; ++j) acc += QuadExt::rational(BigRational(u(i, j)), v[0].radicand()) * v[j];
    out.push_back(acc);
  }
  return out;
}

}  // namespace

TEST_CASE("perron_data examples") {
  CHECK(perron_data(m2(5, 2, 2, 1)).theta == q("-1+sqrt(2)"));
  CHECK(perron_data(m2(5, 1, 4, 1)).theta == q("-2+2*sqrt(2)"));
  PerronData c = perron_data(m2(4, 3, 5, 4));
  CHECK(c.theta == QuadExt(0, make_rational(1, 3), 15));
  CHECK(c.lambda == q("4+sqrt(15)"));
  CHECK(c.radicand == 15);
}

TEST_CASE("perron_data rejections") {
  CHECK_THROWS_AS(perron_data(m2(1, 1, 0, 1)), PreconditionError);
  CHECK_THROWS_AS(perron_data(m2(2, 0, 0, 1)), PreconditionError);  // rational eigenvalue
  CHECK_THROWS_AS(perron_data(m2(-5, 2, 2, 1)), PreconditionError);
  CHECK_THROWS_AS(perron_data(IntMatrix::identity(3)), InputError);
}

TEST_CASE("perron_data exactness on random nonnegative matrices") {
  int accepted = 0;
  for (int trial = 0; trial < 400; ++trial) {
    IntMatrix a = testing::random_matrix(2, 2, 0, 12);
    try {
      PerronData p = perron_data(a);  // asserts A v = lambda v internally
      CHECK(p.theta.sign() >= 0);
      ++accepted;
    } catch (const PreconditionError&) {
    }
  }
  CHECK(accepted > 100);
}

TEST_CASE("trace forms of the worked examples") {
  TraceForm a = trace_form({2, {q("1"), q("-1+sqrt(2)")}});
  CHECK(a.to_string() == "2x^2 - 4xy + 6y^2");
  CHECK(module_determinant(a) == 8);
  CHECK(module_signature(a) == 2);
  TraceForm b = trace_form({2, {q("1"), q("-2+2*sqrt(2)")}});
  CHECK(b.to_string() == "2x^2 - 8xy + 24y^2");
  CHECK(module_determinant(b) == 32);
  TraceForm c = trace_form({15, {q("1"), QuadExt(0, make_rational(1, 3), 15)}});
  CHECK(c.gram[1][1] == make_rational(10, 3));
  CHECK(c.gram[0][1] == 0);
  CHECK(module_determinant(c) == make_rational(20, 3));
  TraceForm d = trace_form({2, {q("1"), q("sqrt(2)")}});
  CHECK(module_determinant(d) == 8);
  CHECK_THROWS_AS(trace_form({2, {q("1"), q("3")}}), PreconditionError);
  CHECK_THROWS_AS(trace_form({2, {q("1"), q("sqrt(2)"), q("sqrt(2)")}}), InputError);
}

TEST_CASE("module_signature") {
  CHECK(module_signature(form({{1, 0}, {0, -1}})) == 0);
  CHECK(module_signature(form({{-1, 0}, {0, -1}})) == -2);
  CHECK(module_signature(form({{0, 1}, {1, 0}})) == 0);
  CHECK(module_signature(form({{0, 1, 0}, {1, 0, 0}, {0, 0, 5}})) == 1);
  CHECK_THROWS_AS(module_signature(form({{1, 1}, {1, 1}})), PreconditionError);
}

TEST_CASE("conductor_delta") {
  CHECK(conductor_delta(2, 1) == 8);
  CHECK(conductor_delta(2, 2) == 32);
  CHECK(conductor_delta(5, 1) == 5);
  CHECK_THROWS_AS(conductor_delta(4, 1), PreconditionError);
  CHECK_THROWS_AS(conductor_delta(2, 0), PreconditionError);
  for (long d = 2; d <= 50; ++d) {
    if (!is_squarefree(BigInt(d))) continue;
    for (long f = 1; f <= 5; ++f) {
      QuadExt fw = QuadExt::rational(f, d) * order_generator(d);
      CHECK(module_determinant(trace_form({d, {QuadExt::rational(1, d), fw}})) == conductor_delta(d, f));
    }
  }
}

TEST_CASE("determinant and signature are invariant under unimodular basis change") {
  for (int trial = 0; trial < 200; ++trial) {
    long d = testing::uniform(2, 60);
    while (!is_squarefree(BigInt(d))) d = testing::uniform(2, 60);
    std::vector<QuadExt> v = {QuadExt(make_rational(testing::uniform(-9, 9), testing::uniform(1, 5)), 0, d),
                              QuadExt(make_rational(testing::uniform(-9, 9), testing::uniform(1, 5)),
                                      make_rational(testing::uniform(1, 9), testing::uniform(1, 5)), d)};
    if (v[0].sign() == 0) v[0] = QuadExt::rational(1, d);
    IntMatrix u = testing::random_gl2(6);
    TraceForm before = trace_form({d, v});
    TraceForm after = trace_form({d, change_basis(v, u)});
    CHECK(module_determinant(before) == module_determinant(after));
    CHECK(module_signature(before) == module_signature(after));
  }
}

TEST_CASE("scaling law") {
  for (int trial = 0; trial < 50; ++trial) {
    long d = 3;
    BigRational k = make_rational(testing::uniform(1, 20), testing::uniform(1, 20));
    std::vector<QuadExt> v = {QuadExt::rational(1, d), QuadExt(testing::uniform(-5, 5), testing::uniform(1, 5), d)};
    std::vector<QuadExt> w = {QuadExt::rational(k, d) * v[0], QuadExt::rational(k, d) * v[1]};
    CHECK(module_determinant(trace_form({d, w})) == k * k * k * k * module_determinant(trace_form({d, v})));
  }
}

TEST_CASE("handelman_report examples") {
  ComparisonReport r = handelman_report(m2(5, 2, 2, 1), m2(5, 1, 4, 1));
  CHECK(r.verdict == Verdict::Distinguished);
  CHECK(r.a.delta == 8);
  CHECK(r.b.delta == 32);
  CHECK(r.delta_differs_raw);
  CHECK(r.a.alexander.to_string() == "t^2 - 6t + 1");
  CHECK(r.b.alexander == r.a.alexander);
  REQUIRE(r.gauss.has_value());
  CHECK_FALSE(r.gauss->same_class);
  CHECK(r.gauss_agrees);

  ComparisonReport same = handelman_report(m2(5, 2, 2, 1), m2(5, 2, 2, 1));
  CHECK(same.verdict == Verdict::Inconclusive);
  CHECK(same.gauss->same_class);

  ComparisonReport s15 = handelman_report(m2(4, 3, 5, 4), m2(4, 15, 1, 4));
  CHECK(s15.verdict == Verdict::Distinguished);
  CHECK(s15.a.delta == make_rational(20, 3));
  CHECK(s15.b.delta == make_rational(4, 15));
  CHECK(s15.a.cited_discrepancy.has_value());
  CHECK(s15.b.cited_discrepancy.has_value());
  CHECK_FALSE(s15.gauss->same_class);
}

TEST_CASE("conjugate pairs are never distinguished") {
  int tested = 0;
  for (int trial = 0; trial < 20000 && tested < 150; ++trial) {
    std::vector<BigInt> period;
    for (long k = testing::uniform(1, 4); k > 0; --k) period.push_back(testing::uniform(1, 5));
    IntMatrix a = matrix_from_period(period);
    BigInt tr = a.trace();
    if (tr * tr - 4 * a.determinant() <= 0 || is_perfect_square(tr * tr - 4 * a.determinant())) continue;
    IntMatrix u = testing::random_gl2(3);
    IntMatrix b = u * a * unimodular_inverse(u);
    if (!b.is_nonnegative()) continue;
    ComparisonReport r = handelman_report(a, b);
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK(r.gauss->same_class);
    ++tested;
  }
  CHECK(tested > 20);
}
