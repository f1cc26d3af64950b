#pragma once

#include <map>
#include <memory>
#include <vector>

#include "qtorus/lattice.hpp"
#include "qtorus/scalars.hpp"

namespace qtorus {

/// Presentation of a quantum Laurent polynomial algebra of rank n: the
/// alternating matrix of additive logarithms g_ij of the multiparameters,
/// with values in Gamma = Z/N + Z^m.
class AlgebraSpec {
 public:
  AlgebraSpec(int rank, long torsion_order, int free_params);

  int rank() const { return n_; }
  long torsion_order() const { return torsion_; }
  int free_params() const { return m_; }

  /// g_ii = 0 and g_ji = -g_ij are maintained automatically.
  void set_q(int i, int j, const GammaElement& g);
  const GammaElement& g(int i, int j) const { return entries_[index(i, j)]; }

  GammaElement zero_gamma() const { return GammaElement(torsion_, m_); }
  bool all_zero() const;

  bool operator==(const AlgebraSpec& o) const;
  bool operator!=(const AlgebraSpec& o) const { return !(*this == o); }

 private:
  std::size_t index(int i, int j) const;

  int n_;
  long torsion_;
  int m_;
  std::vector<GammaElement> entries_;  // full n x n, row-major
};

using SpecPtr = std::shared_ptr<const AlgebraSpec>;

/// Commutator bicharacter: beta(a, b) = sum_{i,j} a_i b_j g_ij.
GammaElement beta_form(const AlgebraSpec& spec, const IntVector& a, const IntVector& b);

/// Normal-ordering 2-cocycle: lambda(a, b) = sum_{i > j} a_i b_j g_ij.
GammaElement cocycle(const AlgebraSpec& spec, const IntVector& a, const IntVector& b);

/// Group commutator of the units x^a, x^b; equals beta_form.
GammaElement commutator_units(const AlgebraSpec& spec, const IntVector& a, const IntVector& b);

/// Gamma-correction of the ordered product prod_k (x^{rows_k})^{powers_k}:
/// the product equals embed_unit(gamma) * x^{sum_k powers_k rows_k}.
GammaElement ordered_monomial_gamma(const AlgebraSpec& spec, const IntMatrix& rows,
                                    const IntVector& powers);

/// Element of the algebra in the normal-ordered monomial basis.
class TorusElement {
 public:
  using Support = std::map<std::vector<Int>, Coefficient>;

  explicit TorusElement(SpecPtr spec) : spec_(std::move(spec)) {}

  static TorusElement zero(SpecPtr spec) { return TorusElement(std::move(spec)); }
  static TorusElement one(SpecPtr spec);
  static TorusElement monomial(SpecPtr spec, const IntVector& exponent);
  static TorusElement monomial(SpecPtr spec, const IntVector& exponent, const Coefficient& c);

  const SpecPtr& spec() const { return spec_; }
  const Support& support() const { return support_; }

  bool is_zero() const { return support_.empty(); }
  /// Singleton support with a unit coefficient.
  bool is_unit() const;

  TorusElement operator+(const TorusElement& o) const;
  TorusElement operator-(const TorusElement& o) const;
  TorusElement operator-() const;
  TorusElement operator*(const TorusElement& o) const;
  TorusElement scaled(const Coefficient& c) const;
  bool operator==(const TorusElement& o) const;
  bool operator!=(const TorusElement& o) const { return !(*this == o); }

  /// Inverse of a unit element.
  TorusElement unit_inverse() const;

  void add_term(const IntVector& exponent, const Coefficient& c);

 private:
  SpecPtr spec_;
  Support support_;
};

bool is_commutative_sublattice(const AlgebraSpec& spec, const Sublattice& b);

/// Radical of the commutator bicharacter; its exponents span the center.
Sublattice center_lattice(const AlgebraSpec& spec);
bool has_trivial_center(const AlgebraSpec& spec);

/// New presentation on the basis given by the rows of the unimodular u.
AlgebraSpec rebase(const AlgebraSpec& spec, const IntMatrix& u);

/// Transports an element to the rebased presentation so that transport
/// commutes with multiplication.
TorusElement rebase_element(const TorusElement& alpha, const IntMatrix& u);

/// Raises g_ij to the s-th power on the (i, j > r) block, fixing the rest.
AlgebraSpec power_cocycle_spec(const AlgebraSpec& spec, int r, const Int& s);

/// Spec of the subalgebra supported on b, on b's HNF basis.
AlgebraSpec sub_spec(const AlgebraSpec& spec, const Sublattice& b);

}  // namespace qtorus
