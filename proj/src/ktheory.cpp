#include "ncg/ktheory.hpp"

#include <algorithm>

#include "ncg/error.hpp"

namespace ncg {

namespace {

struct Reducer {
  IntMatrix u, s, v;

  void swap_rows(std::size_t a, std::size_t b) {
    s.swap_rows(a, b);
    u.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    s.swap_cols(a, b);
    v.swap_cols(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const BigInt& k) {
    s.add_row_multiple(dst, src, k);
    u.add_row_multiple(dst, src, k);
  }
  void add_col(std::size_t dst, std::size_t src, const BigInt& k) {
    s.add_col_multiple(dst, src, k);
    v.add_col_multiple(dst, src, k);
  }
  void negate_row(std::size_t r) {
    s.negate_row(r);
    u.negate_row(r);
  }

  // Smallest nonzero |entry| in the block starting at (k, k).
  bool find_pivot(std::size_t k, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    BigInt best;
    for (std::size_t i = k; i < s.rows(); ++i)
      for (std::size_t j = k; j < s.cols(); ++j) {
        const BigInt& x = s(i, j);
        if (x == 0) continue;
        if (!found || abs(x) < best) {
          found = true;
          best = abs(x);
          pr = i;
          pc = j;
        }
      }
    return found;
  }

  // Clears row and column k; returns false if a remainder was left behind.
  bool eliminate(std::size_t k) {
    bool clean = true;
    for (std::size_t i = k + 1; i < s.rows(); ++i) {
      if (s(i, k) == 0) continue;
      add_row(i, k, -floor_div(s(i, k), s(k, k)));
      if (s(i, k) != 0) clean = false;
    }
    for (std::size_t j = k + 1; j < s.cols(); ++j) {
      if (s(k, j) == 0) continue;
      add_col(j, k, -floor_div(s(k, j), s(k, k)));
      if (s(k, j) != 0) clean = false;
    }
    return clean;
  }
};

}  // namespace

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> d;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) d.push_back(s(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  Reducer r{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      std::size_t pr = k, pc = k;
      if (!r.find_pivot(k, pr, pc)) break;
      r.swap_rows(k, pr);
      r.swap_cols(k, pc);
      if (!r.eliminate(k)) continue;
      // Row and column are clear; the pivot must divide the rest of the
      // block, otherwise fold an offending row in and reduce again.
      bool divides = true;
      for (std::size_t i = k + 1; i < a.rows() && divides; ++i)
        for (std::size_t j = k + 1; j < a.cols(); ++j)
          if (!mpz_divisible_p(r.s(i, j).get_mpz_t(), r.s(k, k).get_mpz_t())) {
            r.add_row(k, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (r.s(k, k) < 0) r.negate_row(k);
  }
  SmithForm out{std::move(r.u), std::move(r.s), std::move(r.v)};
  ensure(out.u * a * out.v == out.s, "Smith form identity S = U A V failed");
  ensure(out.s.is_diagonal(), "Smith form is not diagonal");
  return out;
}

FinGenAbelianGroup FinGenAbelianGroup::from_cyclic_orders(const std::vector<BigInt>& orders) {
  FinGenAbelianGroup g;
  std::vector<BigInt> finite;
  for (const auto& d : orders) {
    BigInt m = abs(d);
    if (m == 0)
      ++g.free_rank;
    else if (m != 1)
      finite.push_back(m);
  }
  // Invariant factors of a diagonal matrix via its own Smith form.
  if (!finite.empty()) {
    IntMatrix diag(finite.size(), finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) diag(i, i) = finite[i];
    for (const auto& d : smith_normal_form(diag).diagonal())
      if (d != 1) g.torsion.push_back(d);
  }
  return g;
}

BigInt FinGenAbelianGroup::torsion_order() const {
  BigInt n = 1;
  for (const auto& d : torsion) n *= d;
  return n;
}

std::string FinGenAbelianGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& d : torsion) parts.push_back("Z/" + ncg::to_string(d));
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

FinGenAbelianGroup FinGenAbelianGroup::direct_sum(const FinGenAbelianGroup& o) const {
  std::vector<BigInt> orders(free_rank + o.free_rank, BigInt(0));
  orders.insert(orders.end(), torsion.begin(), torsion.end());
  orders.insert(orders.end(), o.torsion.begin(), o.torsion.end());
  return from_cyclic_orders(orders);
}

FinGenAbelianGroup cokernel(const IntMatrix& a) {
  if (!a.is_square()) throw InputError("cokernel needs a square matrix");
  return FinGenAbelianGroup::from_cyclic_orders(smith_normal_form(a).diagonal());
}

namespace {

IntMatrix i_minus_bt(const IntMatrix& b) {
  if (!b.is_square() || b.empty()) throw InputError("Cuntz-Krieger matrix must be square");
  if (!b.is_nonnegative()) throw PreconditionError("Cuntz-Krieger matrix must have nonnegative entries");
  return IntMatrix::identity(b.rows()) - b.transpose();
}

}  // namespace

FinGenAbelianGroup ck_k0(const IntMatrix& b) {
  IntMatrix m = i_minus_bt(b);
  FinGenAbelianGroup g = cokernel(m);
  BigInt det = m.determinant();
  if (det != 0) ensure(g.free_rank == 0 && g.torsion_order() == abs(det), "K_0 order differs from |det(I - B^T)|");
  return g;
}

FinGenAbelianGroup ck_k1(const IntMatrix& b) {
  IntMatrix m = i_minus_bt(b);
  FinGenAbelianGroup g;
  g.free_rank = static_cast<unsigned>(m.rows() - m.rank());
  return g;
}

FinGenAbelianGroup torus_bundle_h1(const IntMatrix& a) {
  if (!a.is_square() || a.empty()) throw InputError("monodromy must be square");
  if (abs(a.determinant()) != 1) throw PreconditionError("monodromy must have determinant +-1");
  FinGenAbelianGroup h1 = FinGenAbelianGroup{1, {}}.direct_sum(cokernel(a - IntMatrix::identity(a.rows())));
  if (a.rows() == 2 && a.determinant() == 1 && abs(a.trace()) > 2 && a.is_nonnegative()) {
    ensure(h1 == FinGenAbelianGroup{1, {}}.direct_sum(ck_k0(a)), "H_1 differs from Z + K_0");
  }
  return h1;
}

}  // namespace ncg
