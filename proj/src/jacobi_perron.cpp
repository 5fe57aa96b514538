#include "ncg/jacobi_perron.hpp"

#include <cctype>

#include "ncg/error.hpp"

namespace ncg {

namespace {

BigRational round_down(const BigRational& x, unsigned bits) {
  BigInt scaled = floor(x * BigRational(BigInt(1) << bits));
  return make_rational(scaled, BigInt(1) << bits);
}

BigRational round_up(const BigRational& x, unsigned bits) {
  BigRational s = x * BigRational(BigInt(1) << bits);
  BigInt scaled = ceil_div(s.get_num(), s.get_den());
  return make_rational(scaled, BigInt(1) << bits);
}

Interval outward(Interval x, unsigned bits) {
  // exact points stay exact so rational inputs terminate
  if (x.is_point()) return x;
  return {round_down(x.lo, bits), round_up(x.hi, bits)};
}

std::size_t check_dimension(std::size_t components) {
  if (components == 0) throw InputError("Jacobi-Perron input needs at least one component (n >= 2)");
  return components + 1;
}

}  // namespace

Interval Interval::from_decimal(const std::string& text) {
  std::string digits;
  std::size_t frac = 0;
  bool seen_point = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw InputError("malformed decimal '" + text + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && digits.empty())) {
      digits += c;
      if (seen_point) ++frac;
    } else {
      throw InputError("malformed decimal '" + text + "'");
    }
  }
  BigInt scale = 1;
  for (std::size_t k = 0; k < frac; ++k) scale *= 10;
  BigRational mid = make_rational(parse_bigint(digits), scale);
  BigRational half = make_rational(1, 2 * scale);
  return {mid - half, mid + half};
}

IntMatrix jp_step_matrix(const DigitVector& b) {
  std::size_t n = b.size() + 1;
  IntMatrix m(n, n);
  m(0, n - 1) = 1;
  for (std::size_t i = 1; i < n; ++i) {
    m(i, i - 1) = 1;
    m(i, n - 1) = b[i - 1];
  }
  return m;
}

JPExpansion jp_expand(const std::vector<QuadExt>& theta, std::size_t steps) {
  JPExpansion e;
  e.dim = check_dimension(theta.size());
  if (steps == 0) throw InputError("Jacobi-Perron expansion needs at least one step");
  for (const auto& t : theta)
    if (t.sign() <= 0) throw PreconditionError("Jacobi-Perron input has a zero or negative component: " + t.to_string());
  std::vector<QuadExt> x = theta;
  for (std::size_t k = 0; k < steps; ++k) {
    DigitVector b;
    std::vector<QuadExt> f;
    for (const auto& t : x) {
      b.push_back(t.floor());
      f.push_back(t - QuadExt::rational(BigRational(b.back()), t.radicand()));
    }
    e.digits.push_back(std::move(b));
    if (f[0].sign() == 0) {
      e.terminated = true;
      break;
    }
    std::vector<QuadExt> next;
    for (std::size_t i = 1; i < f.size(); ++i) next.push_back(f[i] / f[0]);
    next.push_back(f[0].inverse());
    x = std::move(next);
  }
  return e;
}

JPExpansion jp_expand(const std::vector<Interval>& theta, std::size_t steps, unsigned precision_bits) {
  JPExpansion e;
  e.dim = check_dimension(theta.size());
  if (steps == 0) throw InputError("Jacobi-Perron expansion needs at least one step");
  for (const auto& t : theta) {
    if (t.lo > t.hi) throw InputError("interval with lo > hi");
    if (t.lo <= 0) throw PreconditionError("Jacobi-Perron input has a component that is not provably positive");
  }
  std::vector<Interval> x;
  for (const auto& t : theta) x.push_back(outward(t, precision_bits));
  for (std::size_t k = 0; k < steps; ++k) {
    DigitVector b;
    std::vector<Interval> f;
    for (const auto& t : x) {
      BigInt fl = floor(t.lo);
      if (floor(t.hi) != fl) {
        throw PreconditionError("floor undecidable at step " + std::to_string(k + 1) + " with " +
                                std::to_string(precision_bits) + " bits: increase the input precision");
      }
      b.push_back(fl);
      f.push_back({t.lo - BigRational(fl), t.hi - BigRational(fl)});
    }
    e.digits.push_back(std::move(b));
    const Interval& f1 = f[0];
    if (f1.is_point() && f1.lo == 0) {
      e.terminated = true;
      x = std::move(f);
      break;
    }
    if (f1.lo <= 0) {
      throw PreconditionError("termination undecidable at step " + std::to_string(k + 1) + ": increase the input precision");
    }
    std::vector<Interval> next;
    for (std::size_t i = 1; i < f.size(); ++i) next.push_back(outward({f[i].lo / f1.hi, f[i].hi / f1.lo}, precision_bits));
    next.push_back(outward({1 / f1.hi, 1 / f1.lo}, precision_bits));
    x = std::move(next);
  }
  e.remainder = std::move(x);
  return e;
}

std::vector<RationalVector> jp_convergents(const JPExpansion& e) {
  std::vector<RationalVector> out;
  std::size_t n = e.dim;
  IntMatrix prod = IntMatrix::identity(n);
  for (const auto& b : e.digits) {
    prod = prod * jp_step_matrix(b);
    const BigInt& first = prod(0, n - 1);
    if (first == 0) continue;
    RationalVector v;
    for (std::size_t i = 1; i < n; ++i) v.push_back(make_rational(prod(i, n - 1), first));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<BigRational> jp_convergent_drift(const std::vector<RationalVector>& convergents) {
  std::vector<BigRational> drift;
  for (std::size_t k = 1; k < convergents.size(); ++k) {
    BigRational worst = 0;
    for (std::size_t i = 0; i < convergents[k].size(); ++i) {
      BigRational d = abs(convergents[k][i] - convergents[k - 1][i]);
      if (d > worst) worst = d;
    }
    drift.push_back(worst);
  }
  return drift;
}

std::vector<Interval> jp_reconstruct(const JPExpansion& e, const std::vector<Interval>& remainder) {
  std::size_t n = e.dim;
  if (remainder.size() + 1 != n) throw InputError("remainder has the wrong dimension");
  IntMatrix prod = IntMatrix::identity(n);
  for (const auto& b : e.digits) prod = prod * jp_step_matrix(b);
  // v = prod * (1, remainder); entries of prod are nonnegative
  std::vector<Interval> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigRational lo = BigRational(prod(i, 0));
    BigRational hi = lo;
    for (std::size_t j = 1; j < n; ++j) {
      lo += BigRational(prod(i, j)) * remainder[j - 1].lo;
      hi += BigRational(prod(i, j)) * remainder[j - 1].hi;
    }
    v[i] = {lo, hi};
  }
  if (v[0].lo <= 0) throw PreconditionError("reconstruction has a nonpositive leading coordinate");
  std::vector<Interval> theta;
  for (std::size_t i = 1; i < n; ++i) theta.push_back({v[i].lo / v[0].hi, v[i].hi / v[0].lo});
  return theta;
}

JPPeriodicData jp_periodic_eigenvector(const std::vector<DigitVector>& period, std::size_t iterations) {
  if (period.empty()) throw InputError("empty Jacobi-Perron period");
  std::size_t n = period.front().size() + 1;
  for (const auto& b : period) {
    if (b.size() + 1 != n) throw InputError("digit vectors of different lengths");
    for (const auto& v : b) {
      if (v < 0) throw InputError("Jacobi-Perron digits must be nonnegative");
      if (n == 2 && v < 1) throw InputError("two-dimensional Jacobi-Perron digits must be positive");
    }
  }
  JPPeriodicData out;
  out.product = IntMatrix::identity(n);
  for (const auto& b : period) out.product = out.product * jp_step_matrix(b);
  out.char_poly = char_poly(out.product);

  unsigned bound = static_cast<unsigned>((n - 1) * (n - 1) + 1);
  IntMatrix pw = out.product;
  for (unsigned k = 1; k <= bound; ++k) {
    if (pw.is_positive()) {
      out.primitivity_power = k;
      break;
    }
    pw = pw * out.product;
  }
  if (out.primitivity_power == 0) {
    throw PreconditionError("period product is not primitive: no power up to (n-1)^2+1 = " + std::to_string(bound) +
                            " is strictly positive");
  }

  std::vector<BigInt> v(n, BigInt(1));
  for (std::size_t it = 0; it < iterations; ++it) {
    std::vector<BigInt> w(n, BigInt(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i] += out.product(i, j) * v[j];
    BigInt g = 0;
    for (const auto& x : w) g = gcd(g, x);
    for (auto& x : w) x /= g;
    v = std::move(w);
    RationalVector approx;
    for (std::size_t i = 1; i < n; ++i) approx.push_back(make_rational(v[i], v[0]));
    out.approximants.push_back(std::move(approx));
  }

  if (n == 2) {
    const IntMatrix& m = out.product;
    BigInt tr = m.trace();
    BigInt disc = tr * tr - 4 * m.determinant();
    if (disc > 0 && !is_perfect_square(disc)) {
      QuadExt lambda(make_rational(tr, 2), make_rational(1, 2), disc);
      QuadExt theta = (lambda - QuadExt::rational(BigRational(m(0, 0)), lambda.radicand())) /
                      QuadExt::rational(BigRational(m(0, 1)), lambda.radicand());
      out.exact_eigenvalue = lambda;
      out.exact_theta = theta;
      JPExpansion again = jp_expand(std::vector<QuadExt>{theta}, 2 * period.size());
      std::vector<DigitVector> expected = period;
      expected.insert(expected.end(), period.begin(), period.end());
      out.regenerates_period = again.digits == expected;
      ensure(out.regenerates_period, "expansion of the periodic eigenvector does not repeat the period");
    }
  }
  return out;
}

std::vector<DigitVector> parse_digit_vectors(const std::string& text) {
  std::vector<DigitVector> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto semi = text.find(';', start);
    if (semi == std::string::npos) semi = text.size();
    std::string part = text.substr(start, semi - start);
    DigitVector b;
    std::size_t s = 0;
    while (s <= part.size()) {
      auto comma = part.find(',', s);
      if (comma == std::string::npos) comma = part.size();
      b.push_back(parse_bigint(std::string_view(part).substr(s, comma - s)));
      s = comma + 1;
    }
    out.push_back(std::move(b));
    start = semi + 1;
  }
  return out;
}

}  // namespace ncg
