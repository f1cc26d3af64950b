#include "qtorus/lattice.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace qtorus {

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    return Rational(Int(s));
  }
  return make_rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  if (r.get_den() == 1) {
    os << r.get_num();
  } else {
    os << r.get_num() << "/" << r.get_den();
  }
  return os.str();
}

HermiteResult hermite_normal_form(const IntMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  HermiteResult res;
  res.h = m;
  res.u = IntMatrix::Identity(rows, rows);
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;

  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    // Euclidean sweep: gather the column gcd into position (row, col).
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index i = row; i < rows; ++i) {
        if (h(i, col) != 0 && (best < 0 || cmp(abs(h(i, col)), abs(h(best, col))) < 0)) {
          best = i;
        }
      }
      if (best < 0) break;
      if (best != row) {
        h.row(best).swap(h.row(row));
        u.row(best).swap(u.row(row));
      }
      bool cleared = true;
      for (Eigen::Index i = row + 1; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        Int q = h(i, col) / h(row, col);  // truncated; leftovers handled next pass
        h.row(i) -= q * h.row(row);
        u.row(i) -= q * u.row(row);
        if (h(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      h.row(row) = -h.row(row);
      u.row(row) = -u.row(row);
    }
    for (Eigen::Index i = 0; i < row; ++i) {
      Int q = floor_div(h(i, col), h(row, col));
      if (q != 0) {
        h.row(i) -= q * h.row(row);
        u.row(i) -= q * u.row(row);
      }
    }
    ++row;
  }
  res.rank = static_cast<int>(row);
  return res;
}

bool is_hermite_normal_form(const IntMatrix& h) {
  Eigen::Index prev_pivot = -1;
  bool seen_zero_row = false;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    Eigen::Index pivot = -1;
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (h(i, j) != 0) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (pivot <= prev_pivot) return false;
    if (h(i, pivot) <= 0) return false;
    for (Eigen::Index k = 0; k < i; ++k) {
      if (h(k, pivot) < 0 || cmp(h(k, pivot), h(i, pivot)) >= 0) return false;
    }
    prev_pivot = pivot;
  }
  return true;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  SmithDecomposition res;
  res.d = m;
  res.u = IntMatrix::Identity(rows, rows);
  res.v = IntMatrix::Identity(cols, cols);
  IntMatrix& a = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;

  const Eigen::Index t_max = std::min(rows, cols);
  for (Eigen::Index t = 0; t < t_max; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing submatrix to (t, t).
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < rows; ++i) {
        for (Eigen::Index j = t; j < cols; ++j) {
          if (a(i, j) != 0 && (pi < 0 || cmp(abs(a(i, j)), abs(a(pi, pj))) < 0)) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi < 0) break;
      if (pi != t) {
        a.row(pi).swap(a.row(t));
        u.row(pi).swap(u.row(t));
      }
      if (pj != t) {
        a.col(pj).swap(a.col(t));
        v.col(pj).swap(v.col(t));
      }
      bool dirty = false;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Int q = a(i, t) / a(t, t);
        a.row(i) -= q * a.row(t);
        u.row(i) -= q * u.row(t);
        if (a(i, t) != 0) dirty = true;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Int q = a(t, j) / a(t, t);
        a.col(j) -= q * a.col(t);
        v.col(j) -= q * v.col(t);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // Enforce the divisibility chain.
      bool fixed = true;
      for (Eigen::Index i = t + 1; i < rows && fixed; ++i) {
        for (Eigen::Index j = t + 1; j < cols && fixed; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            a.row(t) += a.row(i);
            u.row(t) += u.row(i);
            fixed = false;
          }
        }
      }
      if (fixed) break;
    }
    if (t < rows && a(t, t) < 0) {
      a.row(t) = -a.row(t);
      u.row(t) = -u.row(t);
    }
  }
  return res;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  // Fraction-free (Bareiss) elimination over Z.
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index i = k + 1; i < n; ++i) {
        if (a(i, k) != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return 0;
      a.row(k).swap(a.row(swap_row));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

IntMatrix unimodular_inverse(const IntMatrix& w) {
  if (w.rows() != w.cols()) throw std::invalid_argument("unimodular_inverse: matrix not square");
  HermiteResult hr = hermite_normal_form(w);
  if (hr.h != IntMatrix::Identity(w.rows(), w.cols())) {
    throw std::invalid_argument("unimodular_inverse: matrix is not unimodular");
  }
  return hr.u;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  // Left kernel of m^T: rows of U opposite zero rows of HNF(m^T).
  IntMatrix mt = m.transpose();
  HermiteResult hr = hermite_normal_form(mt);
  const Eigen::Index n = m.cols();
  IntMatrix gens(n - hr.rank, n);
  for (Eigen::Index i = hr.rank; i < n; ++i) {
    gens.row(i - hr.rank) = hr.u.row(i);
  }
  return hermite_normal_form(gens).h.topRows(gens.rows());
}

std::optional<IntVector> solve_diophantine(const IntMatrix& m, const IntVector& b) {
  SmithDecomposition s = smith_normal_form(m);
  IntVector c = s.u * b;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  IntVector y = IntVector::Zero(cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    Int d = (i < cols) ? s.d(i, i) : Int(0);
    if (d != 0) {
      if (c(i) % d != 0) return std::nullopt;
      y(i) = c(i) / d;
    } else if (c(i) != 0) {
      return std::nullopt;
    }
  }
  return s.v * y;
}

Sublattice::Sublattice(int ambient_rank) : ambient_rank_(ambient_rank), basis_(0, ambient_rank) {
  if (ambient_rank < 0) throw std::invalid_argument("Sublattice: negative ambient rank");
}

Sublattice::Sublattice(int ambient_rank, const IntMatrix& generators) : ambient_rank_(ambient_rank) {
  if (generators.cols() != ambient_rank) {
    throw std::invalid_argument("Sublattice: generator width does not match ambient rank");
  }
  HermiteResult hr = hermite_normal_form(generators);
  basis_ = hr.h.topRows(hr.rank);
}

Sublattice Sublattice::full(int ambient_rank) {
  return Sublattice(ambient_rank, IntMatrix::Identity(ambient_rank, ambient_rank));
}

std::optional<IntVector> Sublattice::coordinates(const IntVector& v) const {
  if (v.size() != ambient_rank_) {
    throw std::invalid_argument("Sublattice: vector size does not match ambient rank");
  }
  IntVector residual = v;
  IntVector coords = IntVector::Zero(rank());
  for (int i = 0; i < rank(); ++i) {
    Eigen::Index pivot = -1;
    for (Eigen::Index j = 0; j < ambient_rank_; ++j) {
      if (basis_(i, j) != 0) {
        pivot = j;
        break;
      }
    }
    if (residual(pivot) % basis_(i, pivot) != 0) return std::nullopt;
    coords(i) = residual(pivot) / basis_(i, pivot);
    residual -= coords(i) * basis_.row(i).transpose();
  }
  if (!residual.isZero(0)) return std::nullopt;
  return coords;
}

bool Sublattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

bool Sublattice::operator==(const Sublattice& other) const {
  return ambient_rank_ == other.ambient_rank_ && basis_.rows() == other.basis_.rows() &&
         basis_ == other.basis_;
}

Sublattice kernel_mixed(const IntMatrix& g_free, const IntMatrix& g_tors, const Int& n) {
  if (n < 1) throw std::invalid_argument("kernel_mixed: modulus must be >= 1");
  const Eigen::Index amb = g_free.cols() > 0 ? g_free.cols() : g_tors.cols();
  if (g_free.rows() > 0 && g_tors.rows() > 0 && g_free.cols() != g_tors.cols()) {
    throw std::invalid_argument("kernel_mixed: mismatched widths");
  }
  const Eigen::Index p = g_free.rows();
  const Eigen::Index t = g_tors.rows();
  // Stack [[G_free, 0], [G_tors, N I]]; one pure-integer kernel, projected.
  IntMatrix stacked = IntMatrix::Zero(p + t, amb + t);
  if (p > 0) stacked.topLeftCorner(p, amb) = g_free;
  if (t > 0) {
    stacked.bottomLeftCorner(t, amb) = g_tors;
    stacked.bottomRightCorner(t, t) = n * IntMatrix::Identity(t, t);
  }
  IntMatrix kern = integer_kernel(stacked);
  IntMatrix projected = kern.leftCols(amb);
  return Sublattice(static_cast<int>(amb), projected);
}

Sublattice saturation(const Sublattice& l) {
  IntMatrix perp = integer_kernel(l.basis());
  IntMatrix sat = integer_kernel(perp);
  return Sublattice(l.ambient_rank(), sat);
}

IntMatrix saturated_complement(const Sublattice& s) {
  const int n = s.ambient_rank();
  const int r = s.rank();
  if (r == 0) return IntMatrix::Identity(n, n);
  SmithDecomposition snf = smith_normal_form(s.basis());
  for (int i = 0; i < r; ++i) {
    if (snf.d(i, i) != 1) {
      throw std::invalid_argument("saturated_complement: lattice is not saturated");
    }
  }
  IntMatrix vinv = unimodular_inverse(snf.v);
  return vinv.bottomRows(n - r);
}

Sublattice finite_index_adjust(const Sublattice& c, int ambient_rank) {
  if (c.ambient_rank() != ambient_rank) {
    throw std::invalid_argument("finite_index_adjust: ambient rank mismatch");
  }
  Sublattice sat = saturation(c);
  IntMatrix comp = saturated_complement(sat);
  IntMatrix gens(c.rank() + comp.rows(), ambient_rank);
  gens.topRows(c.rank()) = c.basis();
  gens.bottomRows(comp.rows()) = comp;
  return Sublattice(ambient_rank, gens);
}

Sublattice lattice_sum(const Sublattice& l1, const Sublattice& l2) {
  if (l1.ambient_rank() != l2.ambient_rank()) {
    throw std::invalid_argument("lattice_sum: ambient rank mismatch");
  }
  IntMatrix gens(l1.rank() + l2.rank(), l1.ambient_rank());
  gens.topRows(l1.rank()) = l1.basis();
  gens.bottomRows(l2.rank()) = l2.basis();
  return Sublattice(l1.ambient_rank(), gens);
}

Sublattice lattice_intersection(const Sublattice& l1, const Sublattice& l2) {
  if (l1.ambient_rank() != l2.ambient_rank()) {
    throw std::invalid_argument("lattice_intersection: ambient rank mismatch");
  }
  const int n = l1.ambient_rank();
  const int r1 = l1.rank();
  const int r2 = l2.rank();
  if (r1 == 0 || r2 == 0) return Sublattice::zero(n);
  // Rows (x, y) of the left kernel of [B1; -B2] satisfy x B1 = y B2.
  IntMatrix stacked(r1 + r2, n);
  stacked.topRows(r1) = l1.basis();
  stacked.bottomRows(r2) = -l2.basis();
  HermiteResult hr = hermite_normal_form(stacked);
  IntMatrix gens(r1 + r2 - hr.rank, n);
  for (Eigen::Index i = hr.rank; i < r1 + r2; ++i) {
    gens.row(i - hr.rank) = hr.u.row(i).leftCols(r1) * l1.basis();
  }
  return Sublattice(n, gens);
}

std::optional<Int> lattice_index(const Sublattice& l1, const Sublattice& l2) {
  if (l1.ambient_rank() != l2.ambient_rank()) {
    throw std::invalid_argument("lattice_index: ambient rank mismatch");
  }
  IntMatrix coords(l1.rank(), l2.rank());
  for (int i = 0; i < l1.rank(); ++i) {
    auto c = l2.coordinates(l1.basis_row(i).transpose());
    if (!c) throw std::invalid_argument("lattice_index: first lattice is not contained in second");
    coords.row(i) = c->transpose();
  }
  if (l1.rank() != l2.rank()) return std::nullopt;
  Int det = determinant(coords);
  return abs(det);
}

}  // namespace qtorus
