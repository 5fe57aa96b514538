#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncg/bigint.hpp"
#include "ncg/contfrac.hpp"
#include "ncg/int_matrix.hpp"
#include "ncg/polynomial.hpp"
#include "ncg/quad_ext.hpp"

namespace ncg {

using RationalMatrix = std::vector<std::vector<BigRational>>;

/// Perron-Frobenius data of a nonnegative hyperbolic 2x2 matrix, with the
/// eigenvector scaled to (1, theta).
struct PerronData {
  IntMatrix matrix;
  QuadExt lambda;
  QuadExt theta;
  BigInt radicand;
};

PerronData perron_data(const IntMatrix& a);

/// Z v_1 + ... + Z v_n inside Q(sqrt(D)).
struct PseudoLattice {
  BigInt radicand;
  std::vector<QuadExt> basis;
};

/// Gram matrix Tr(v_i v_j).
struct TraceForm {
  RationalMatrix gram;

  /// "2x^2 - 4xy + 6y^2" (rank 2 only).
  std::string to_string() const;
};

TraceForm trace_form(const PseudoLattice& lattice);
BigRational module_determinant(const TraceForm& q);
/// Positive minus negative diagonal entries after symmetric reduction over Q.
int module_signature(const TraceForm& q);
/// f^2 D for D = 1 mod 4, 4 f^2 D otherwise.
BigInt conductor_delta(const BigInt& d, const BigInt& f);

/// Smallest module determinant of Z + Z x over the purely periodic complete
/// quotients x of theta. Unlike the determinant of Z + Z theta itself, this
/// depends only on the GL(2,Z) orbit of theta.
BigRational cycle_min_determinant(const QuadExt& theta);

struct MatrixInvariants {
  PerronData perron;
  TraceForm form;
  BigRational delta;
  BigRational delta_cycle_min;
  int signature = 0;
  IntPolynomial alexander;
  /// Disagreement with a cited value for this matrix, if one is on record.
  std::optional<std::string> cited_discrepancy;
};

MatrixInvariants matrix_invariants(const IntMatrix& a);

enum class Verdict { Distinguished, Inconclusive };
std::string to_string(Verdict v);

struct ComparisonReport {
  MatrixInvariants a;
  MatrixInvariants b;
  Verdict verdict = Verdict::Inconclusive;
  /// Names of the invariants that differ: "D", "delta", "signature".
  std::vector<std::string> differing;
  bool delta_differs_raw = false;
  /// Present when both determinants are +-1.
  std::optional<SimilarityVerdict> gauss;
  /// False only when the periods say same class while the invariants differ.
  bool gauss_agrees = true;
};

/// Compares (D, delta, signature). Delta is compared through its cycle
/// minimum so that conjugate matrices are never told apart; the raw values
/// are reported alongside.
ComparisonReport handelman_report(const IntMatrix& a, const IntMatrix& b);

}  // namespace ncg
