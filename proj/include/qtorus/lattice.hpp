#pragma once

#include <optional>
#include <utility>

#include "qtorus/integer.hpp"

namespace qtorus {

/// Row Hermite normal form: pivot entries positive, entries above each pivot
/// reduced into [0, pivot), zero rows at the bottom.
struct HermiteResult {
  IntMatrix h;
  IntMatrix u;  // unimodular, u * m == h
  int rank = 0;
};

HermiteResult hermite_normal_form(const IntMatrix& m);

bool is_hermite_normal_form(const IntMatrix& h);

struct SmithDecomposition {
  IntMatrix u;  // unimodular
  IntMatrix d;  // diagonal, d_1 | d_2 | ... , entries nonnegative
  IntMatrix v;  // unimodular, u * m * v == d
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

Int determinant(const IntMatrix& m);

/// Inverse of a unimodular integer matrix (throws if not unimodular).
IntMatrix unimodular_inverse(const IntMatrix& w);

/// Integer kernel {a in Z^n : m * a = 0}, returned as rows of a basis matrix
/// in Hermite normal form (possibly 0 x n).
IntMatrix integer_kernel(const IntMatrix& m);

/// Particular solution of m * x = b over Z, if one exists.
std::optional<IntVector> solve_diophantine(const IntMatrix& m, const IntVector& b);

/// A subgroup of Z^n stored by its unique HNF row basis.
class Sublattice {
 public:
  explicit Sublattice(int ambient_rank);
  Sublattice(int ambient_rank, const IntMatrix& generators);

  static Sublattice zero(int ambient_rank) { return Sublattice(ambient_rank); }
  static Sublattice full(int ambient_rank);

  int ambient_rank() const { return ambient_rank_; }
  int rank() const { return static_cast<int>(basis_.rows()); }
  const IntMatrix& basis() const { return basis_; }
  RowVector basis_row(int i) const { return basis_.row(i); }

  bool contains(const IntVector& v) const;
  /// Coordinates of v in the HNF basis; nullopt when v is not a member.
  std::optional<IntVector> coordinates(const IntVector& v) const;

  bool operator==(const Sublattice& other) const;
  bool operator!=(const Sublattice& other) const { return !(*this == other); }

 private:
  int ambient_rank_;
  IntMatrix basis_;  // rank x ambient_rank, HNF, no zero rows
};

/// Kernel of mixed free/torsion constraints:
/// {a : g_free * a = 0 and g_tors * a = 0 (mod n)}.
Sublattice kernel_mixed(const IntMatrix& g_free, const IntMatrix& g_tors, const Int& n);

Sublattice saturation(const Sublattice& l);

/// Remark-style finite-index overgroup: A' with C <= A', [Z^n : A'] finite
/// and A'/C torsion-free.
Sublattice finite_index_adjust(const Sublattice& c, int ambient_rank);

/// Rows completing the basis of a saturated lattice s to a basis of Z^n.
IntMatrix saturated_complement(const Sublattice& s);

Sublattice lattice_sum(const Sublattice& l1, const Sublattice& l2);
Sublattice lattice_intersection(const Sublattice& l1, const Sublattice& l2);

/// Index [l2 : l1]; nullopt means infinite. Throws unless l1 <= l2.
std::optional<Int> lattice_index(const Sublattice& l1, const Sublattice& l2);

}  // namespace qtorus
