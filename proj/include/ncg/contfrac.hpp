#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncg/bigint.hpp"
#include "ncg/int_matrix.hpp"
#include "ncg/quad_ext.hpp"

namespace ncg {

/// (P + sqrt(N)) / Q with N a positive nonsquare and Q | N - P^2.
///
/// N is not required to be squarefree: sqrt(12) or (3 + sqrt(8))/2 are
/// ordinary states of the expansion, so the radicand is kept as given.
struct QuadSurd {
  BigInt p;
  BigInt q;
  BigInt n;

  /// Rescales numerator and denominator so that Q divides N - P^2.
  static QuadSurd make(BigInt p, BigInt q, BigInt n);
  static QuadSurd from_quad(const QuadExt& x);
  /// sqrt(D)
  static QuadSurd sqrt(const BigInt& d);

  QuadExt value() const;
  std::string to_string() const;
  friend bool operator==(const QuadSurd&, const QuadSurd&) = default;
};

QuadSurd parse_surd(const std::string& text);

/// Eventually periodic regular continued fraction [pre..., ~period...].
struct PeriodicCF {
  std::vector<BigInt> preperiod;
  std::vector<BigInt> period;

  /// Same value with the shortest preperiod and a primitive period.
  PeriodicCF normalized() const;
  /// Lexicographically least cyclic rotation of the period.
  std::vector<BigInt> canonical_period() const;
  BigInt term(std::size_t k) const;
  /// "[2, ~1,1,1,4]", "[~2]"; with marker = false: "[2, 1,1,1,4]".
  std::string to_string(bool marker = true) const;
  friend bool operator==(const PeriodicCF&, const PeriodicCF&) = default;
};

std::vector<BigInt> least_rotation(const std::vector<BigInt>& seq);
/// Shortest block whose repetition gives seq.
std::vector<BigInt> primitive_block(const std::vector<BigInt>& seq);
std::string join_terms(const std::vector<BigInt>& v, const std::string& sep = ",");

/// Throws InputError when the radicand is a perfect square.
PeriodicCF cf_expand(const QuadSurd& x);
/// The quadratic number a continued fraction converges to. A known radicand
/// of the field (radicand_hint) avoids factoring the period discriminant.
QuadExt cf_evaluate(const PeriodicCF& cf, const BigInt& radicand_hint = 0);

/// Root of c x^2 + (d - a) x - b = 0 on the +sqrt branch.
QuadSurd fixed_point(const IntMatrix& a);

struct SimilarityVerdict {
  bool same_class = false;
  QuadSurd fixed_point_a, fixed_point_b;
  PeriodicCF expansion_a, expansion_b;
  std::vector<BigInt> period_a, period_b;  // canonical rotations
  BigInt det_a, det_b;
};

/// Period comparison of the fixed points. Both matrices must be hyperbolic
/// with determinant +-1; a trace <= -2 is made positive by negation.
SimilarityVerdict gauss_similar(const IntMatrix& a, const IntMatrix& b);

/// Product of (a_i, 1; 1, 0) in order.
IntMatrix matrix_from_period(const std::vector<BigInt>& period);

/// omega = (1 + sqrt(D))/2 when D = 1 mod 4, sqrt(D) otherwise.
QuadExt order_generator(const BigInt& d);
/// Coordinates (u, v) of x in the basis {1, omega}, if x is integral.
std::optional<std::pair<BigInt, BigInt>> omega_coordinates(const QuadExt& x);
/// x lies in Z + (f omega) Z.
bool in_order(const QuadExt& x, const BigInt& f);

/// Smallest unit > 1 of Z + (f omega) Z, as the least power of the
/// maximal-order unit lying in the suborder.
QuadExt fundamental_unit(const BigInt& d, const BigInt& f = 1);
/// Same unit via the period of f*omega, independently of the power search.
QuadExt fundamental_unit_from_period(const BigInt& d, const BigInt& f);
QuadExt power(const QuadExt& x, unsigned n);

/// Continuants A_{i,j} = K(a_j..a_{j+i}), B_{i,j} = K(a_{j+1}..a_{j+i})
/// with A_{-1,j} = 1, A_{-2,j} = 0, B_{-1,j} = 0, B_{-2,j} = 1, both
/// satisfying X_{i,j} = a_{i+j} X_{i-1,j} + X_{i-2,j}.
class MuirTable {
 public:
  MuirTable(std::vector<BigInt> quotients, int depth);

  const BigInt& a_sym(int i, int j) const { return at(a_, i, j); }
  const BigInt& b_sym(int i, int j) const { return at(b_, i, j); }
  int depth() const { return depth_; }
  const std::vector<BigInt>& quotients() const { return quotients_; }
  /// Highest i stored for column j.
  int max_index(int j) const;

 private:
  const BigInt& at(const std::vector<std::vector<BigInt>>& t, int i, int j) const;

  std::vector<BigInt> quotients_;
  int depth_;
  std::vector<std::vector<BigInt>> a_;  // a_[j][i + 2]
  std::vector<std::vector<BigInt>> b_;
};

MuirTable muir_symbols(const std::vector<BigInt>& quotients, int depth);

struct RadicandSolution {
  BigInt d;
  bool squarefree = false;
  /// sqrt(D) when x_P = 2 x_0, (1 + sqrt(D))/2 when x_P = 2 x_0 - 1.
  QuadSurd surd;
  PeriodicCF expansion;
  /// cf_expand(surd) equals the candidate [x_0; x_1..x_P].
  bool reproduces = false;
};

/// Checks x_P = m A_{P-2,1} - (-1)^P A_{P-3,1} B_{P-3,1} for the candidate
/// (x_0, ..., x_P) and returns D = x_P^2/4 + m A_{P-3,1} - (-1)^P B_{P-3,1}^2
/// (times 4 in the odd case) with a cross-check against cf_expand.
/// m ranges over all integers: odd periods need m <= 0 (sqrt(13): m = 0,
/// sqrt(58): m = -2).
std::optional<RadicandSolution> period_radicand(const std::vector<BigInt>& candidate, const BigInt& m);

enum class PeriodKind { Culminating, AlmostCulminating, Other };
std::string to_string(PeriodKind kind);

struct PeriodShape {
  std::size_t length = 0;
  std::size_t length_mod4 = 0;
  PeriodKind kind = PeriodKind::Other;
};

/// Shape of the period of sqrt(p), p prime = 3 mod 4; asserts the parity law
/// (P even, P = 2 mod 4 exactly when p = 3 mod 8).
PeriodShape classify_period(const BigInt& p, const PeriodicCF& cf);

}  // namespace ncg
