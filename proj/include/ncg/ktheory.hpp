#pragma once

#include <string>
#include <vector>

#include "ncg/bigint.hpp"
#include "ncg/int_matrix.hpp"

namespace ncg {

/// S = U A V with U, V unimodular and S diagonal, d_i | d_{i+1}.
struct SmithForm {
  IntMatrix u;
  IntMatrix s;
  IntMatrix v;

  /// Diagonal of S (length min(rows, cols)).
  std::vector<BigInt> diagonal() const;
};

/// Pivot: smallest nonzero |entry|, ties broken by lowest (row, col).
SmithForm smith_normal_form(const IntMatrix& a);

/// Z^r + Z/d_1 + ... + Z/d_k with d_i >= 2 and d_i | d_{i+1}.
struct FinGenAbelianGroup {
  unsigned free_rank = 0;
  std::vector<BigInt> torsion;

  /// Builds the canonical form from arbitrary cyclic orders (0 = Z, 1 dropped).
  static FinGenAbelianGroup from_cyclic_orders(const std::vector<BigInt>& orders);
  /// Order of the torsion subgroup.
  BigInt torsion_order() const;
  /// "0", "Z", "Z^2", "Z/4", "Z + Z/6", "Z/2 + Z/2".
  std::string to_string() const;
  FinGenAbelianGroup direct_sum(const FinGenAbelianGroup& o) const;
  friend bool operator==(const FinGenAbelianGroup&, const FinGenAbelianGroup&) = default;
};

/// Z^n / A Z^n.
FinGenAbelianGroup cokernel(const IntMatrix& a);
/// K_0 = Z^n / (I - B^T) Z^n.
FinGenAbelianGroup ck_k0(const IntMatrix& b);
/// K_1 = ker(I - B^T), free of rank n - rank(I - B^T).
FinGenAbelianGroup ck_k1(const IntMatrix& b);
/// H_1 of the mapping torus of A: Z + Z^n / (A - I) Z^n. For a 2x2 A that
/// is nonnegative with det 1 and |tr| > 2 this is checked against Z + K_0(A).
FinGenAbelianGroup torus_bundle_h1(const IntMatrix& a);

}  // namespace ncg
