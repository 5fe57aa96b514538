#include "ncg/invariants.hpp"

#include "ncg/error.hpp"

namespace ncg {

namespace {

QuadExt q_rational(const BigRational& r, const BigInt& d) { return QuadExt::rational(r, d); }

std::string coefficient_term(const BigRational& c, const std::string& monomial, bool first) {
  if (c == 0) return "";
  std::string out;
  BigRational mag = abs(c);
  if (first)
    out = c < 0 ? "-" : "";
  else
    out = c < 0 ? " - " : " + ";
  if (mag != 1) out += mag.get_den() == 1 ? to_string(mag) : "(" + to_string(mag) + ")";
  return out + monomial;
}

// Cited values for the two sqrt(15) matrices; both disagree with the
// direct trace computation and are reported as such.
std::optional<std::string> cited_note(const QuadExt& theta) {
  if (theta == QuadExt(0, make_rational(1, 3), 15))
    return "cited form 2x^2 + 18y^2 with determinant 36 disagrees with the direct trace computation";
  if (theta == QuadExt(0, make_rational(1, 15), 15))
    return "cited determinant 900 disagrees with the direct trace computation";
  return std::nullopt;
}

}  // namespace

PerronData perron_data(const IntMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw InputError("Perron data needs a 2x2 matrix");
  if (!a.is_nonnegative()) throw PreconditionError("matrix has negative entries");
  BigInt tr = a.trace();
  BigInt disc = tr * tr - 4 * a.determinant();
  if (disc <= 0) throw PreconditionError("matrix is not hyperbolic (tr^2 - 4 det <= 0)");
  if (is_perfect_square(disc)) throw PreconditionError("Perron eigenvalue is rational (tr^2 - 4 det is a perfect square)");
  PerronData out;
  out.matrix = a;
  out.lambda = QuadExt(make_rational(tr, 2), make_rational(1, 2), disc);
  out.radicand = out.lambda.radicand();
  const BigInt& d = out.radicand;
  if (a(0, 1) != 0) {
    out.theta = (out.lambda - q_rational(BigRational(a(0, 0)), d)) / q_rational(BigRational(a(0, 1)), d);
  } else {
    QuadExt den = out.lambda - q_rational(BigRational(a(1, 1)), d);
    if (den.sign() == 0 || a(1, 0) == 0) throw PreconditionError("eigenvector tail undefined (zero row)");
    out.theta = q_rational(BigRational(a(1, 0)), d) / den;
  }
  QuadExt top = q_rational(BigRational(a(0, 0)), d) + q_rational(BigRational(a(0, 1)), d) * out.theta;
  QuadExt bottom = q_rational(BigRational(a(1, 0)), d) + q_rational(BigRational(a(1, 1)), d) * out.theta;
  ensure(top == out.lambda && bottom == out.lambda * out.theta, "A (1, theta) != lambda (1, theta)");
  ensure(out.lambda > q_rational(1, d), "Perron eigenvalue is not > 1");
  return out;
}

std::string TraceForm::to_string() const {
  if (gram.size() != 2) throw InputError("form rendering is rank 2 only");
  std::string out = coefficient_term(gram[0][0], "x^2", true);
  out += coefficient_term(2 * gram[0][1], "xy", out.empty());
  out += coefficient_term(gram[1][1], "y^2", out.empty());
  return out.empty() ? "0" : out;
}

TraceForm trace_form(const PseudoLattice& lattice) {
  const auto& v = lattice.basis;
  if (v.size() != 2) throw InputError("pseudo-lattice basis must have rank 2");
  BigRational coord_det = v[0].a() * v[1].b() - v[0].b() * v[1].a();
  if (coord_det == 0) throw PreconditionError("pseudo-lattice basis is linearly dependent over Q");
  TraceForm q;
  q.gram.assign(v.size(), std::vector<BigRational>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) q.gram[i][j] = quad_trace(v[i] * v[j]);
  return q;
}

BigRational module_determinant(const TraceForm& q) {
  RationalMatrix m = q.gram;
  std::size_t n = m.size();
  BigRational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      BigRational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

int module_signature(const TraceForm& q) {
  if (module_determinant(q) == 0) throw PreconditionError("trace form is degenerate (zero determinant)");
  RationalMatrix m = q.gram;
  std::size_t n = m.size();
  int sig = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t j = k + 1;
      while (j < n && m[j][j] == 0) ++j;
      if (j < n) {
        std::swap(m[j], m[k]);
        for (auto& row : m) std::swap(row[j], row[k]);
      } else {
        j = k + 1;
        while (j < n && m[k][j] == 0) ++j;
        ensure(j < n, "nondegenerate form has a zero row");
        // e_k <- e_k + e_j makes the diagonal entry 2 m[k][j]
        for (std::size_t c = 0; c < n; ++c) m[k][c] += m[j][c];
        for (std::size_t r = 0; r < n; ++r) m[r][k] += m[r][j];
      }
    }
    const BigRational pivot = m[k][k];
    sig += pivot > 0 ? 1 : -1;
    for (std::size_t i = k + 1; i < n; ++i) {
      BigRational f = m[i][k] / pivot;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      for (std::size_t j = k; j < n; ++j) m[j][i] = m[i][j];
    }
  }
  return sig;
}

BigInt conductor_delta(const BigInt& d, const BigInt& f) {
  if (d < 2 || !is_squarefree(d)) throw PreconditionError("D must be a squarefree integer >= 2");
  if (f < 1) throw PreconditionError("conductor must be positive");
  BigInt base = f * f * d;
  return mod(d, 4) == 1 ? base : 4 * base;
}

BigRational cycle_min_determinant(const QuadExt& theta) {
  PeriodicCF cf = cf_expand(QuadSurd::from_quad(theta)).normalized();
  QuadExt x = cf_evaluate(PeriodicCF{{}, cf.period}, theta.radicand());
  QuadExt one = QuadExt::rational(1, theta.radicand());
  std::optional<BigRational> best;
  for (const auto& a : cf.period) {
    BigRational delta = module_determinant(trace_form({theta.radicand(), {one, x}}));
    if (!best || delta < *best) best = delta;
    x = (x - QuadExt::rational(BigRational(a), theta.radicand())).inverse();
  }
  return *best;
}

MatrixInvariants matrix_invariants(const IntMatrix& a) {
  MatrixInvariants out;
  out.perron = perron_data(a);
  const BigInt& d = out.perron.radicand;
  out.form = trace_form({d, {QuadExt::rational(1, d), out.perron.theta}});
  out.delta = module_determinant(out.form);
  out.delta_cycle_min = cycle_min_determinant(out.perron.theta);
  out.signature = module_signature(out.form);
  out.alexander = char_poly_2x2(a);
  out.cited_discrepancy = cited_note(out.perron.theta);
  return out;
}

std::string to_string(Verdict v) { return v == Verdict::Distinguished ? "DISTINGUISHED" : "INCONCLUSIVE"; }

ComparisonReport handelman_report(const IntMatrix& a, const IntMatrix& b) {
  ComparisonReport r;
  r.a = matrix_invariants(a);
  r.b = matrix_invariants(b);
  if (r.a.perron.radicand != r.b.perron.radicand) r.differing.push_back("D");
  if (r.a.delta_cycle_min != r.b.delta_cycle_min) r.differing.push_back("delta");
  if (r.a.signature != r.b.signature) r.differing.push_back("signature");
  r.delta_differs_raw = r.a.delta != r.b.delta;
  r.verdict = r.differing.empty() ? Verdict::Inconclusive : Verdict::Distinguished;
  if (abs(a.determinant()) == 1 && abs(b.determinant()) == 1) {
    r.gauss = gauss_similar(a, b);
    r.gauss_agrees = !(r.gauss->same_class && r.verdict == Verdict::Distinguished);
  }
  return r;
}

}  // namespace ncg
