#include "ncg/contfrac.hpp"

#include <algorithm>
#include <map>

#include "ncg/error.hpp"

namespace ncg {

QuadSurd QuadSurd::make(BigInt p, BigInt q, BigInt n) {
  if (q == 0) throw InputError("surd denominator is zero");
  if (n <= 0) throw PreconditionError("surd radicand must be positive");
  if (is_perfect_square(n)) throw InputError("radicand is a perfect square");
  BigInt r = n - p * p;
  if (!mpz_divisible_p(r.get_mpz_t(), q.get_mpz_t())) {
    BigInt aq = abs(q);
    p *= aq;
    n *= aq * aq;
    q *= aq;
  }
  return {std::move(p), std::move(q), std::move(n)};
}

QuadSurd QuadSurd::from_quad(const QuadExt& x) {
  if (x.is_rational()) throw InputError("radicand is a perfect square (rational input)");
  BigInt den = lcm(x.a().get_den(), x.b().get_den());
  BigInt an = x.a().get_num() * (den / x.a().get_den());
  BigInt bn = x.b().get_num() * (den / x.b().get_den());
  BigInt n = bn * bn * x.radicand();
  if (bn < 0) return make(-an, -den, n);
  return make(an, den, n);
}

QuadSurd QuadSurd::sqrt(const BigInt& d) { return make(0, 1, d); }

QuadExt QuadSurd::value() const { return QuadExt(make_rational(p, q), make_rational(1, q), n); }

std::string QuadSurd::to_string() const {
  std::string num = p == 0 ? "sqrt(" + n.get_str() + ")" : p.get_str() + "+sqrt(" + n.get_str() + ")";
  if (q == 1) return p == 0 ? num : "(" + num + ")";
  return "(" + num + ")/" + q.get_str();
}

QuadSurd parse_surd(const std::string& text) { return QuadSurd::from_quad(parse_quad(text)); }

std::vector<BigInt> least_rotation(const std::vector<BigInt>& seq) {
  std::vector<BigInt> best = seq;
  std::vector<BigInt> rot = seq;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

std::vector<BigInt> primitive_block(const std::vector<BigInt>& seq) {
  std::size_t n = seq.size();
  for (std::size_t len = 1; len < n; ++len) {
    if (n % len != 0) continue;
    bool ok = true;
    for (std::size_t k = len; k < n && ok; ++k) ok = seq[k] == seq[k - len];
    if (ok) return {seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(len)};
  }
  return seq;
}

std::string join_terms(const std::vector<BigInt>& v, const std::string& sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) s += sep;
    s += v[k].get_str();
  }
  return s;
}

PeriodicCF PeriodicCF::normalized() const {
  PeriodicCF r{preperiod, primitive_block(period)};
  while (!r.preperiod.empty() && !r.period.empty() && r.preperiod.back() == r.period.back()) {
    std::rotate(r.period.rbegin(), r.period.rbegin() + 1, r.period.rend());
    r.preperiod.pop_back();
  }
  return r;
}

std::vector<BigInt> PeriodicCF::canonical_period() const { return least_rotation(period); }

BigInt PeriodicCF::term(std::size_t k) const {
  if (k < preperiod.size()) return preperiod[k];
  if (period.empty()) throw InputError("continued fraction has no period");
  return period[(k - preperiod.size()) % period.size()];
}

std::string PeriodicCF::to_string(bool marker) const {
  std::string s = "[";
  s += join_terms(preperiod, ", ");
  if (!period.empty()) {
    if (!preperiod.empty()) s += ", ";
    if (marker) s += "~";
    s += join_terms(period, ",");
  }
  return s + "]";
}

namespace {

BigInt surd_floor(const BigInt& p, const BigInt& q, const BigInt& s) {
  // s = floor(sqrt(N)), sqrt(N) irrational
  if (q > 0) return floor_div(p + s, q);
  return floor_div(-p - s - 1, -q);
}

}  // namespace

PeriodicCF cf_expand(const QuadSurd& x) {
  QuadSurd c = QuadSurd::make(x.p, x.q, x.n);
  BigInt s = isqrt(c.n);
  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  std::vector<BigInt> digits;
  BigInt p = c.p;
  BigInt q = c.q;
  for (;;) {
    auto [it, inserted] = seen.emplace(std::make_pair(p, q), digits.size());
    if (!inserted) {
      auto start = static_cast<std::ptrdiff_t>(it->second);
      PeriodicCF cf;
      cf.preperiod.assign(digits.begin(), digits.begin() + start);
      cf.period.assign(digits.begin() + start, digits.end());
      return cf;
    }
    BigInt a = surd_floor(p, q, s);
    digits.push_back(a);
    BigInt p_next = a * q - p;
    BigInt r = c.n - p_next * p_next;
    ensure(mpz_divisible_p(r.get_mpz_t(), q.get_mpz_t()) != 0, "cf_expand: Q does not divide N - P^2");
    q = r / q;
    p = std::move(p_next);
  }
}

IntMatrix matrix_from_period(const std::vector<BigInt>& period) {
  if (period.empty()) throw InputError("empty period");
  IntMatrix m = IntMatrix::identity(2);
  for (const auto& a : period) {
    IntMatrix step(2, 2, {a, 1, 1, 0});
    m = m * step;
  }
  return m;
}

QuadExt cf_evaluate(const PeriodicCF& cf, const BigInt& radicand_hint) {
  if (cf.period.empty()) throw InputError("continued fraction has no period");
  for (const auto& a : cf.period)
    if (a < 1) throw InputError("period entries must be positive");
  IntMatrix m = matrix_from_period(cf.period);
  const BigInt& p = m(0, 0);
  const BigInt& pp = m(0, 1);
  const BigInt& q = m(1, 0);
  const BigInt& qp = m(1, 1);
  // y = (p y + pp)/(q y + qp), positive root
  BigInt disc = (p - qp) * (p - qp) + 4 * q * pp;
  QuadExt y;
  if (radicand_hint > 0) {
    BigInt core = squarefree_split(radicand_hint).core;
    BigInt ratio = disc / core;
    ensure(ratio * core == disc && is_perfect_square(ratio), "cf_evaluate: value not in Q(sqrt(" + radicand_hint.get_str() + "))");
    y = QuadExt(make_rational(p - qp, 2 * q), make_rational(isqrt(ratio), 2 * q), core);
  } else {
    y = QuadExt(make_rational(p - qp, 2 * q), make_rational(1, 2 * q), disc);
  }
  for (auto it = cf.preperiod.rbegin(); it != cf.preperiod.rend(); ++it) {
    y = QuadExt::rational(BigRational(*it), y.radicand()) + y.inverse();
  }
  return y;
}

QuadSurd fixed_point(const IntMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw InputError("fixed_point expects a 2x2 matrix");
  const BigInt& a = m(0, 0);
  const BigInt& c = m(1, 0);
  const BigInt& d = m(1, 1);
  BigInt disc = m.trace() * m.trace() - 4 * m.determinant();
  if (disc <= 0 || is_perfect_square(disc)) {
    throw PreconditionError("matrix " + m.to_string() + " is not hyperbolic (tr^2 - 4 det = " + disc.get_str() + ")");
  }
  if (c == 0) throw PreconditionError("matrix " + m.to_string() + " has c = 0: degenerate fixed-point equation");
  return QuadSurd::make(a - d, 2 * c, disc);
}

SimilarityVerdict gauss_similar(const IntMatrix& a, const IntMatrix& b) {
  auto normalize = [](const IntMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw InputError("gauss_similar expects 2x2 matrices");
    BigInt det = m.determinant();
    if (det != 1 && det != -1) throw PreconditionError("matrix " + m.to_string() + " has determinant " + det.get_str() + ", expected +-1");
    return m.trace() <= -2 ? IntMatrix(-m) : m;
  };
  IntMatrix na = normalize(a);
  IntMatrix nb = normalize(b);
  SimilarityVerdict v;
  v.det_a = a.determinant();
  v.det_b = b.determinant();
  v.fixed_point_a = fixed_point(na);
  v.fixed_point_b = fixed_point(nb);
  v.expansion_a = cf_expand(v.fixed_point_a);
  v.expansion_b = cf_expand(v.fixed_point_b);
  v.period_a = v.expansion_a.canonical_period();
  v.period_b = v.expansion_b.canonical_period();
  v.same_class = v.period_a == v.period_b;
  return v;
}

QuadExt order_generator(const BigInt& d) {
  if (mod(d, 4) == 1) return QuadExt(make_rational(1, 2), make_rational(1, 2), d);
  return QuadExt(0, 1, d);
}

std::optional<std::pair<BigInt, BigInt>> omega_coordinates(const QuadExt& x) {
  if (x.is_rational()) {
    if (x.a().get_den() != 1) return std::nullopt;
    return std::make_pair(x.a().get_num(), BigInt(0));
  }
  BigRational u;
  BigRational v;
  if (mod(x.radicand(), 4) == 1) {
    v = 2 * x.b();
    u = x.a() - x.b();
  } else {
    v = x.b();
    u = x.a();
  }
  if (u.get_den() != 1 || v.get_den() != 1) return std::nullopt;
  return std::make_pair(u.get_num(), v.get_num());
}

bool in_order(const QuadExt& x, const BigInt& f) {
  auto uv = omega_coordinates(x);
  return uv && mpz_divisible_p(uv->second.get_mpz_t(), f.get_mpz_t()) != 0;
}

QuadExt power(const QuadExt& x, unsigned n) {
  QuadExt r = QuadExt::rational(1, x.radicand());
  QuadExt base = x;
  while (n > 0) {
    if (n & 1U) r *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return r;
}

namespace {

void check_radicand(const BigInt& d, const BigInt& f) {
  if (d < 2 || !is_squarefree(d)) throw PreconditionError("invalid D = " + d.get_str() + ": expected squarefree D >= 2");
  if (f < 1) throw PreconditionError("conductor must be positive");
}

}  // namespace

QuadExt fundamental_unit_from_period(const BigInt& d, const BigInt& f) {
  check_radicand(d, f);
  QuadExt theta = QuadExt::rational(BigRational(f), d) * order_generator(d);
  QuadSurd x = QuadSurd::from_quad(theta);
  PeriodicCF cf = cf_expand(x);
  // complete quotient at the start of the period
  QuadExt y = cf_evaluate(PeriodicCF{{}, cf.period}, d);
  IntMatrix m = matrix_from_period(cf.period);
  QuadExt eps = QuadExt::rational(BigRational(m(1, 0)), d) * y + QuadExt::rational(BigRational(m(1, 1)), d);
  ensure(eps.norm() == 1 || eps.norm() == -1, "period unit has norm other than +-1");
  ensure(eps > QuadExt::rational(1, d), "period unit is not > 1");
  ensure(in_order(eps, f), "period unit is not in the order");
  return eps;
}

QuadExt fundamental_unit(const BigInt& d, const BigInt& f) {
  check_radicand(d, f);
  QuadExt eps = fundamental_unit_from_period(d, 1);
  QuadExt acc = eps;
  for (;;) {
    if (in_order(acc, f)) return acc;
    acc *= eps;
  }
}

MuirTable::MuirTable(std::vector<BigInt> quotients, int depth) : quotients_(std::move(quotients)), depth_(depth) {
  int last = static_cast<int>(quotients_.size()) - 1;
  if (last < 0) throw InputError("Muir symbols need at least one quotient");
  if (depth < -2 || depth > last) {
    throw InputError("Muir depth " + std::to_string(depth) + " out of range [-2, " + std::to_string(last) + "]");
  }
  a_.resize(quotients_.size());
  b_.resize(quotients_.size());
  for (int j = 0; j <= last; ++j) {
    int top = std::min(depth_, last - j);
    auto& a = a_[static_cast<std::size_t>(j)];
    auto& b = b_[static_cast<std::size_t>(j)];
    a = {BigInt(0), BigInt(1)};
    b = {BigInt(1), BigInt(0)};
    for (int i = 0; i <= top; ++i) {
      const BigInt& q = quotients_[static_cast<std::size_t>(i + j)];
      std::size_t k = static_cast<std::size_t>(i + 2);
      a.push_back(q * a[k - 1] + a[k - 2]);
      b.push_back(q * b[k - 1] + b[k - 2]);
    }
  }
}

int MuirTable::max_index(int j) const {
  if (j < 0 || j >= static_cast<int>(a_.size())) throw InputError("Muir column index out of range");
  return static_cast<int>(a_[static_cast<std::size_t>(j)].size()) - 3;
}

const BigInt& MuirTable::at(const std::vector<std::vector<BigInt>>& t, int i, int j) const {
  if (i < -2 || i > max_index(j)) {
    throw InputError("Muir index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  }
  return t[static_cast<std::size_t>(j)][static_cast<std::size_t>(i + 2)];
}

MuirTable muir_symbols(const std::vector<BigInt>& quotients, int depth) { return MuirTable(quotients, depth); }

std::optional<RadicandSolution> period_radicand(const std::vector<BigInt>& x, const BigInt& m) {
  if (x.size() < 2) throw InputError("candidate needs x_0 and at least one period term");
  std::size_t big_p = x.size() - 1;
  for (const auto& v : x)
    if (v < 1) throw InputError("candidate terms must be positive");
  for (std::size_t i = 1; i < big_p; ++i)
    if (x[i] != x[big_p - i]) throw InputError("candidate x_1..x_{P-1} is not palindromic");
  const BigInt& x0 = x[0];
  const BigInt& xp = x[big_p];
  bool even_case = xp == 2 * x0;
  if (!even_case && xp != 2 * x0 - 1) throw InputError("candidate needs x_P = 2 x_0 or x_P = 2 x_0 - 1");

  MuirTable t(x, static_cast<int>(big_p));
  int pi = static_cast<int>(big_p);
  BigInt sign = pi % 2 == 0 ? 1 : -1;  // (-1)^P
  const BigInt& a2 = t.a_sym(pi - 2, 1);
  const BigInt& a3 = t.a_sym(pi - 3, 1);
  const BigInt& b3 = t.b_sym(pi - 3, 1);
  if (xp != m * a2 - sign * a3 * b3) return std::nullopt;

  BigRational dq = BigRational(xp * xp, 4) + BigRational(m * a3 - sign * b3 * b3);
  dq.canonicalize();
  if (!even_case) dq *= 4;
  ensure(dq.get_den() == 1, "radicand formula produced a non-integer");
  RadicandSolution sol;
  sol.d = dq.get_num();
  sol.squarefree = is_squarefree(sol.d);
  if (sol.d < 2 || is_perfect_square(sol.d)) return sol;
  sol.surd = even_case ? QuadSurd::sqrt(sol.d) : QuadSurd::make(1, 2, sol.d);
  sol.expansion = cf_expand(sol.surd);
  std::vector<BigInt> tail(x.begin() + 1, x.end());
  PeriodicCF expected = PeriodicCF{{x0}, tail}.normalized();
  sol.reproduces = sol.expansion == expected;
  return sol;
}

std::string to_string(PeriodKind kind) {
  switch (kind) {
    case PeriodKind::Culminating: return "culminating";
    case PeriodKind::AlmostCulminating: return "almost-culminating";
    case PeriodKind::Other: return "other";
  }
  return "other";
}

PeriodShape classify_period(const BigInt& p, const PeriodicCF& cf) {
  if (cf.preperiod.size() != 1 || cf.period.empty() || cf.period.back() != 2 * cf.preperiod[0]) {
    throw InputError("expansion " + cf.to_string() + " is not of the form [a0, ~x1,...,2a0]");
  }
  if (!is_prime(p) || mod(p, 4) != 3) throw PreconditionError(p.get_str() + " is not a prime = 3 mod 4");
  PeriodShape shape;
  shape.length = cf.period.size();
  shape.length_mod4 = shape.length % 4;
  ensure(shape.length % 2 == 0, "period of sqrt(" + p.get_str() + ") has odd length");
  bool three_mod8 = mod(p, 8) == 3;
  ensure((shape.length_mod4 == 2) == three_mod8, "period length of sqrt(" + p.get_str() + ") violates the mod 8 parity law");
  std::size_t k = shape.length / 2;
  const BigInt& x0 = cf.preperiod[0];
  const BigInt& xk = cf.period[k - 1];
  const BigInt& xk1 = k >= 2 ? cf.period[k - 2] : x0;
  if (xk == x0) {
    shape.kind = PeriodKind::Culminating;
  } else if (xk == x0 - 1 && xk1 == 1) {
    shape.kind = PeriodKind::AlmostCulminating;
  }
  return shape;
}

}  // namespace ncg
