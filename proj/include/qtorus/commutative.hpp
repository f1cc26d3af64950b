#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtorus/algebra.hpp"

namespace qtorus {

struct MaxCommutativeResult {
  int rank = 0;
  Sublattice witness = Sublattice::zero(0);
  bool exact = false;
};

/// Largest-rank sublattice on which the commutator bicharacter vanishes.
/// Exact when a single free form is present (N = 1, m = 1) or the spec is
/// commutative; otherwise a bounded heuristic search with entries up to
/// search_bound.
MaxCommutativeResult max_commutative_rank(const AlgebraSpec& spec, long search_bound);

/// Monomials mu_j = x^{c_j} (C-coordinates) and exponent s such that the
/// units mu_j x_j^s pairwise commute; their exponents span E.
struct ComplementSolution {
  std::vector<IntVector> c;  // C-coordinates of mu_{r+1}..mu_n
  Int s;
  IntMatrix e_generators;  // raw rows c_j + s * b_j
  Sublattice e = Sublattice::zero(0);
};

/// Solves beta(c_i, b_j) - beta(c_j, b_i) + s * beta(b_i, b_j) = 0 for a
/// commutative saturated C completed by rows b_j. Generic torsion order one:
/// a single integer kernel with minimal s >= 1; otherwise s = 1..s_max with
/// a congruence solve at each step.
std::optional<ComplementSolution> complement_solver(const AlgebraSpec& spec, const Sublattice& c,
                                                    const Int& s_max);

struct ComplementReport {
  bool rank_sum_ok = false;
  bool index_finite = false;
  Int index;  // valid when index_finite
  bool e_commutative = false;
  Sublattice intersection = Sublattice::zero(0);
  bool pass = false;
};

ComplementReport verify_virtual_complement(const AlgebraSpec& spec, const Sublattice& c,
                                           const Sublattice& e);

struct HolonomicReport {
  int commutative_rank = 0;
  bool rank_exact = false;
  bool certified = false;
  std::string status;
};

/// Finite-length certificate: gk_estimate + max commutative rank = n with an
/// exact rank computation.
HolonomicReport holonomic_certificate(const AlgebraSpec& spec, int gk_estimate, long search_bound);

}  // namespace qtorus
