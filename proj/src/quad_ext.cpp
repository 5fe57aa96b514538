#include "ncg/quad_ext.hpp"

#include <cctype>
#include <cmath>

#include "ncg/error.hpp"

namespace ncg {

QuadExt::QuadExt(BigRational a, BigRational b, const BigInt& radicand) : a_(std::move(a)), b_(std::move(b)) {
  if (radicand <= 0) throw PreconditionError("radicand must be positive");
  a_.canonicalize();
  b_.canonicalize();
  auto split = squarefree_split(radicand);
  d_ = split.core;
  b_ *= BigRational(split.square);
  if (d_ == 1) {
    // sqrt(square) is rational
    a_ += b_;
    b_ = 0;
  }
}

QuadExt QuadExt::rational(BigRational a, const BigInt& radicand) { return QuadExt(std::move(a), 0, radicand); }

QuadExt QuadExt::sqrt(const BigInt& n) {
  if (n <= 0 || is_perfect_square(n)) throw InputError("radicand is a perfect square or nonpositive");
  return QuadExt(0, 1, n);
}

BigInt QuadExt::joint_radicand(const QuadExt& o) const {
  if (is_rational()) return o.d_;
  if (o.is_rational() || o.d_ == d_) return d_;
  throw PreconditionError("mixed radicands: sqrt(" + d_.get_str() + ") vs sqrt(" + o.d_.get_str() + ")");
}

QuadExt QuadExt::conjugate() const {
  QuadExt r = *this;
  r.b_ = -r.b_;
  return r;
}

int QuadExt::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // a and b*sqrt(D) have opposite signs: compare squares
  BigRational lhs = a_ * a_;
  BigRational rhs = b_ * b_ * BigRational(d_);
  if (lhs > rhs) return sa;
  return sb;  // equality impossible for irrational sqrt(D)
}

BigInt QuadExt::floor() const {
  if (is_rational()) return ncg::floor(a_);
  // value = (an + bn*sqrt(D)) / den with den > 0
  BigInt den = lcm(a_.get_den(), b_.get_den());
  BigInt an = a_.get_num() * (den / a_.get_den());
  BigInt bn = b_.get_num() * (den / b_.get_den());
  BigInt s = isqrt(bn * bn * d_);  // floor(|bn| sqrt(D))
  BigInt fl = bn > 0 ? s : -s - 1;
  return floor_div(an + fl, den);
}

QuadExt QuadExt::inverse() const {
  BigRational n = norm();
  if (n == 0) throw PreconditionError("division by zero in Q(sqrt(D))");
  QuadExt r = conjugate();
  r.a_ /= n;
  r.b_ /= n;
  return r;
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  d_ = joint_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  d_ = joint_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  BigInt d = joint_radicand(o);
  BigRational a = a_ * o.a_ + b_ * o.b_ * BigRational(d);
  BigRational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d;
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  d_ = joint_radicand(o);
  return *this *= o.inverse();
}

QuadExt QuadExt::operator-() const {
  QuadExt r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

bool operator==(const QuadExt& x, const QuadExt& y) {
  if (x.a_ != y.a_ || x.b_ != y.b_) return false;
  return x.is_rational() || x.d_ == y.d_;
}

std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
  int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double QuadExt::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d()); }

std::string QuadExt::to_string() const {
  if (is_rational()) return ncg::to_string(a_);
  BigInt den = lcm(a_.get_den(), b_.get_den());
  BigInt an = a_.get_num() * (den / a_.get_den());
  BigInt bn = b_.get_num() * (den / b_.get_den());
  std::string root = "sqrt(" + d_.get_str() + ")";
  BigInt mag = abs(bn);
  std::string coeff = mag == 1 ? root : mag.get_str() + "*" + root;
  std::string num;
  if (an == 0) {
    num = (bn < 0 ? "-" : "") + coeff;
  } else {
    num = an.get_str() + (bn < 0 ? " - " : " + ") + coeff;
  }
  if (den == 1) return num;
  if (an == 0) return num + "/" + den.get_str();
  return "(" + num + ")/" + den.get_str();
}

BigRational quad_trace(const QuadExt& x) { return x.trace(); }
BigRational quad_norm(const QuadExt& x) { return x.norm(); }

namespace {

// expr := term (('+'|'-') term)*
// term := unary (('*'|'/') unary)*
// unary := '-' unary | atom
// atom := integer | 'sqrt' '(' integer ')' | '(' expr ')'
class QuadParser {
 public:
  explicit QuadParser(const std::string& s) : s_(s) {}

  QuadExt parse() {
    QuadExt v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("cannot parse quadratic number '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  QuadExt expr() {
    QuadExt v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  QuadExt term() {
    QuadExt v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        QuadExt d = unary();
        if (d.a() == 0 && d.b() == 0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  QuadExt unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }
  BigInt integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return BigInt(s_.substr(start, pos_ - start), 10);
  }
  QuadExt atom() {
    skip();
    if (eat('(')) {
      QuadExt v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      BigInt n = integer();
      if (!eat(')')) fail("missing ')'");
      if (n <= 0) fail("sqrt of a nonpositive integer");
      return QuadExt(0, 1, n);
    }
    return QuadExt::rational(BigRational(integer()), 1);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

QuadExt parse_quad(const std::string& text) { return QuadParser(text).parse(); }

}  // namespace ncg
