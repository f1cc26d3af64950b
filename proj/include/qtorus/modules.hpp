#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qtorus/algebra.hpp"
#include "qtorus/commutative.hpp"

namespace qtorus {

/// Finite box of Laurent exponents: d components over [-k, k]^r.
struct TruncationWindow {
  long k = 0;
  int r = 0;
  int d = 1;
  Int dimension() const;
};

using ModuleVector = std::vector<TorusElement>;

/// Module free of rank d over the commutative subalgebra on the first r rows
/// of the split basis, with semilinear action matrices for the remaining
/// generators. All internal data lives in the rebased coordinates where C is
/// spanned by the first r unit vectors.
class CFiniteModule {
 public:
  using ElemMatrix = std::vector<std::vector<TorusElement>>;

  CFiniteModule(SpecPtr spec, const IntMatrix& split, int r, int d,
                std::vector<ElemMatrix> actions);

  const SpecPtr& spec() const { return spec_; }
  const SpecPtr& rspec() const { return rspec_; }
  const IntMatrix& split() const { return split_; }
  int r() const { return r_; }
  int d() const { return d_; }
  /// Action of generator j in rebased coordinates, r <= j < n.
  const ElemMatrix& action(int j) const;
  const ElemMatrix& action_inverse(int j) const;

  /// tau_j on coefficients supported in C.
  TorusElement twist(int j, const TorusElement& f) const;
  TorusElement twist_inverse(int j, const TorusElement& f) const;

  bool supported_in_c(const TorusElement& f) const;

  ModuleVector zero_vector() const;
  ModuleVector generator(int i) const;
  /// Left action of alpha (over rspec) on a coordinate vector.
  ModuleVector act(const TorusElement& alpha, const ModuleVector& v) const;

  /// Largest exponent magnitude appearing in the action matrices and their
  /// inverses.
  long action_support_radius() const;

 private:
  SpecPtr spec_;
  SpecPtr rspec_;
  IntMatrix split_;
  int r_;
  int d_;
  std::vector<ElemMatrix> actions_;
  mutable std::vector<std::optional<ElemMatrix>> inverses_;
};

/// Determinant over the commutative subalgebra (cofactor expansion).
TorusElement commutative_determinant(const SpecPtr& spec, const CFiniteModule::ElemMatrix& m);

struct ConsistencyReport {
  bool pass = false;
  std::vector<std::pair<int, int>> failing_pairs;  // rebased generator indices
  std::vector<int> non_invertible;
};

/// A_i tau_i(A_j) = embed(beta(e_i, e_j)) A_j tau_j(A_i) for all pairs, plus
/// invertibility of every action matrix.
ConsistencyReport check_consistency(const CFiniteModule& m);

/// Induced module on coset representatives of Z^n / (C + E); chi assigns a
/// unit coefficient to each E-basis vector. d equals the index of C + E.
CFiniteModule induce_cyclic(SpecPtr spec, const Sublattice& c, const Sublattice& e,
                            const std::vector<Coefficient>& chi);

struct ExteriorReport {
  bool identity_ok = false;
  std::vector<std::pair<int, int>> failing_pairs;
  bool power_module_consistent = false;
  bool pass = false;
};

/// det(A_i) tau_i(det(A_j)) = embed(beta(e_i,e_j))^d det(A_j) tau_j(det(A_i));
/// the determinants form a rank-one module over power_cocycle_spec(spec, r, d).
ExteriorReport exterior_top(const CFiniteModule& m);

struct GrowthEstimate {
  int degree = -1;
  std::vector<Int> dims;
  bool stable = false;
};

/// Window dimensions of span{x^a v : |a| <= k} and the exact finite-difference
/// degree of their growth.
GrowthEstimate gk_growth_estimate(const CFiniteModule& m, const ModuleVector& v, long k_max);

/// Nonzero annihilator of v supported in B with window exponents up to
/// deg_bound, or nothing.
std::optional<TorusElement> torsion_search(const CFiniteModule& m, const Sublattice& b,
                                           const ModuleVector& v, long deg_bound);

/// Maximum candidate rank whose torsion_search finds no annihilator for any
/// free generator. A semi-decision lower bound.
int dimension_probe(const CFiniteModule& m, long deg_bound,
                    const std::vector<Sublattice>& candidates);

/// Coordinate sublattices, the module's own C, and commutative witnesses.
std::vector<Sublattice> default_dimension_candidates(const CFiniteModule& m, long search_bound);

CFiniteModule direct_sum(const CFiniteModule& m1, const CFiniteModule& m2);

struct CyclicityReport {
  Int span_rank;
  long interior_radius = 0;
  Int interior_dim;
  Int attained;
  Rational ratio;
  bool interior_saturated = false;
  bool center_trivial = false;
};

/// Containment of the interior truncation window in span{x^a v : |a| <= k}.
CyclicityReport cyclicity_probe(const CFiniteModule& m, const ModuleVector& v, long k);

}  // namespace qtorus
