#include "qtorus/commutative.hpp"

#include <stdexcept>

namespace qtorus {

namespace {

/// Integer matrix of the single free form (fast path, N = 1, m = 1).
IntMatrix free_form_matrix(const AlgebraSpec& spec) {
  const int n = spec.rank();
  IntMatrix b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = (i == j) ? Int(0) : spec.g(i, j).free()(0);
  }
  return b;
}

bool orthogonal_to_basis(const AlgebraSpec& spec, const Sublattice& l, const IntVector& v) {
  for (int i = 0; i < l.rank(); ++i) {
    if (!beta_form(spec, l.basis_row(i).transpose(), v).is_zero()) return false;
  }
  return true;
}

/// Deterministic sweep of candidate vectors in increasing max-norm, greedily
/// extending an orthogonal family. No saturation: torsion constraints are not
/// stable under division.
Sublattice greedy_extend(const AlgebraSpec& spec, Sublattice l, long bound) {
  const int n = spec.rank();
  long b = bound;
  while (b > 1) {
    double count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<double>(2 * b + 1);
    if (count <= 100000) break;
    --b;
  }
  std::vector<long> digits(static_cast<std::size_t>(n), -b);
  IntVector v(n);
  for (long norm = 1; norm <= b; ++norm) {
    std::fill(digits.begin(), digits.end(), -norm);
    while (true) {
      long max_abs = 0;
      for (long d : digits) max_abs = std::max(max_abs, std::abs(d));
      if (max_abs == norm) {
        for (int i = 0; i < n; ++i) v(i) = digits[static_cast<std::size_t>(i)];
        if (orthogonal_to_basis(spec, l, v) && !l.contains(v)) {
          l = lattice_sum(l, Sublattice(n, v.transpose()));
        }
      }
      int pos = n - 1;
      while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == norm) {
        digits[static_cast<std::size_t>(pos)] = -norm;
        --pos;
      }
      if (pos < 0) break;
      ++digits[static_cast<std::size_t>(pos)];
    }
  }
  return l;
}

/// Reduces v against the HNF rows of k (top to bottom, floor division at each
/// pivot) for a deterministic representative modulo the row span.
IntVector hnf_reduce(IntVector v, const IntMatrix& k) {
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    Eigen::Index p = 0;
    while (p < k.cols() && k(i, p) == 0) ++p;
    if (p == k.cols()) continue;
    Int q = floor_div(v(p), k(i, p));
    if (q != 0) v -= q * k.row(i).transpose();
  }
  return v;
}

}  // namespace

MaxCommutativeResult max_commutative_rank(const AlgebraSpec& spec, long search_bound) {
  if (search_bound < 1) throw std::invalid_argument("max_commutative_rank: bound must be >= 1");
  const int n = spec.rank();
  if (spec.all_zero()) return {n, Sublattice::full(n), true};

  if (spec.torsion_order() == 1 && spec.free_params() == 1) {
    IntMatrix b = free_form_matrix(spec);
    const int h = hermite_normal_form(b).rank / 2;
    Sublattice l(n, integer_kernel(b));
    while (l.rank() < n - h) {
      IntMatrix orth = integer_kernel(IntMatrix(l.basis() * b));
      bool extended = false;
      for (Eigen::Index i = 0; i < orth.rows() && !extended; ++i) {
        IntVector v = orth.row(i).transpose();
        if (!l.contains(v)) {
          l = saturation(lattice_sum(l, Sublattice(n, v.transpose())));
          extended = true;
        }
      }
      if (!extended) throw std::logic_error("max_commutative_rank: isotropic extension stalled");
    }
    return {l.rank(), l, true};
  }

  Sublattice l = greedy_extend(spec, center_lattice(spec), search_bound);
  return {l.rank(), l, false};
}

std::optional<ComplementSolution> complement_solver(const AlgebraSpec& spec, const Sublattice& c,
                                                    const Int& s_max) {
  const int n = spec.rank();
  if (c.ambient_rank() != n) {
    throw std::invalid_argument("complement_solver: ambient rank mismatch");
  }
  if (!is_commutative_sublattice(spec, c)) {
    throw std::invalid_argument("complement_solver: C is not commutative");
  }
  if (saturation(c) != c) {
    throw std::invalid_argument("complement_solver: Z^n/C has torsion; apply finite_index_adjust");
  }
  if (s_max < 1) throw std::invalid_argument("complement_solver: s_max must be >= 1");

  const int r = c.rank();
  const int k = n - r;
  const int m = spec.free_params();
  const long big_n = spec.torsion_order();
  IntMatrix b = saturated_complement(c);

  auto assemble = [&](const IntVector& cvec, const Int& s) {
    ComplementSolution sol;
    sol.s = s;
    sol.e_generators = IntMatrix(k, n);
    for (int j = 0; j < k; ++j) {
      IntVector cj = cvec.segment(static_cast<Eigen::Index>(j) * r, r);
      sol.c.push_back(cj);
      RowVector row = s * b.row(j);
      for (int a = 0; a < r; ++a) row += cj(a) * c.basis_row(a);
      sol.e_generators.row(j) = row;
    }
    sol.e = Sublattice(n, sol.e_generators);
    return sol;
  };

  const int pairs = k * (k - 1) / 2;
  if (pairs == 0 || (big_n == 1 && m == 0)) {
    ComplementSolution sol = assemble(IntVector::Zero(k * r), Int(1));
    if (!is_commutative_sublattice(spec, sol.e)) return std::nullopt;
    return sol;
  }

  // beta(C_a, b_j) and beta(b_i, b_j)
  std::vector<std::vector<GammaElement>> gb(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    for (int a = 0; a < r; ++a) {
      gb[static_cast<std::size_t>(j)].push_back(
          beta_form(spec, c.basis_row(a).transpose(), b.row(j).transpose()));
    }
  }
  auto bb = [&](int i, int j) {
    return beta_form(spec, b.row(i).transpose(), b.row(j).transpose());
  };

  if (big_n == 1) {
    // one homogeneous system in (c, s); minimal s from the kernel
    IntMatrix mat = IntMatrix::Zero(pairs * m, k * r + 1);
    int row = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        for (int t = 0; t < m; ++t) {
          for (int a = 0; a < r; ++a) {
            mat(row, i * r + a) = gb[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)].free()(t);
            mat(row, j * r + a) = -gb[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)].free()(t);
          }
          mat(row, k * r) = bb(i, j).free()(t);
          ++row;
        }
      }
    }
    IntMatrix kernel = integer_kernel(mat);
    Int g = 0;
    IntVector v = IntVector::Zero(k * r + 1);
    for (Eigen::Index i = 0; i < kernel.rows(); ++i) {
      const Int& rs = kernel(i, k * r);
      if (rs == 0) continue;
      Int g2, x, y;
      mpz_gcdext(g2.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t(), rs.get_mpz_t());
      v = x * v + y * kernel.row(i).transpose();
      g = g2;
    }
    if (g == 0) return std::nullopt;
    IntMatrix fixed_s = IntMatrix::Zero(mat.rows() + 1, k * r + 1);
    fixed_s.topRows(mat.rows()) = mat;
    fixed_s(mat.rows(), k * r) = 1;
    v = hnf_reduce(v, integer_kernel(fixed_s));
    ComplementSolution sol = assemble(v.head(k * r), g);
    if (!is_commutative_sublattice(spec, sol.e)) return std::nullopt;
    return sol;
  }

  // torsion mode: s * (free part) = 0 exactly, s * (torsion part) = 0 mod N
  for (Int s = 1; s <= s_max; s += 1) {
    Int np = Int(big_n) / gcd(Int(big_n), s);
    IntMatrix mat = IntMatrix::Zero(pairs * (m + 1), k * r + pairs);
    IntVector rhs = IntVector::Zero(pairs * (m + 1));
    int row = 0, pair = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        GammaElement rest = bb(i, j);
        for (int t = 0; t < m; ++t) {
          for (int a = 0; a < r; ++a) {
            mat(row, i * r + a) = gb[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)].free()(t);
            mat(row, j * r + a) = -gb[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)].free()(t);
          }
          rhs(row) = -s * rest.free()(t);
          ++row;
        }
        for (int a = 0; a < r; ++a) {
          mat(row, i * r + a) = gb[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)].tors();
          mat(row, j * r + a) = -gb[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)].tors();
        }
        mat(row, k * r + pair) = np;
        rhs(row) = -s * rest.tors();
        ++row;
        ++pair;
      }
    }
    auto x = solve_diophantine(mat, rhs);
    if (!x) continue;
    IntVector v = hnf_reduce(*x, integer_kernel(mat));
    ComplementSolution sol = assemble(v.head(k * r), s);
    if (!is_commutative_sublattice(spec, sol.e)) continue;
    return sol;
  }
  return std::nullopt;
}

ComplementReport verify_virtual_complement(const AlgebraSpec& spec, const Sublattice& c,
                                           const Sublattice& e) {
  const int n = spec.rank();
  ComplementReport rep;
  rep.rank_sum_ok = c.rank() + e.rank() == n;
  Sublattice sum = lattice_sum(c, e);
  if (sum.rank() == n) {
    auto idx = lattice_index(sum, Sublattice::full(n));
    rep.index_finite = idx.has_value();
    if (idx) rep.index = *idx;
  }
  rep.e_commutative = is_commutative_sublattice(spec, e);
  rep.intersection = lattice_intersection(c, e);
  rep.pass = rep.rank_sum_ok && rep.index_finite && rep.e_commutative;
  return rep;
}

HolonomicReport holonomic_certificate(const AlgebraSpec& spec, int gk_estimate,
                                      long search_bound) {
  MaxCommutativeResult mc = max_commutative_rank(spec, search_bound);
  HolonomicReport rep;
  rep.commutative_rank = mc.rank;
  rep.rank_exact = mc.exact;
  if (!mc.exact) {
    rep.status = "inconclusive (heuristic rank)";
  } else if (gk_estimate + mc.rank == spec.rank()) {
    rep.certified = true;
    rep.status = "finite length by dimension criterion";
  } else {
    rep.status = "criterion not met";
  }
  return rep;
}

}  // namespace qtorus
