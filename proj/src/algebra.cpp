#include "qtorus/algebra.hpp"

#include <stdexcept>

namespace qtorus {

AlgebraSpec::AlgebraSpec(int rank, long torsion_order, int free_params)
    : n_(rank), torsion_(torsion_order), m_(free_params) {
  if (rank < 1) throw std::invalid_argument("AlgebraSpec: rank must be >= 1");
  if (torsion_order < 1) throw std::invalid_argument("AlgebraSpec: torsion order must be >= 1");
  if (free_params < 0) throw std::invalid_argument("AlgebraSpec: negative free parameter count");
  entries_.assign(static_cast<std::size_t>(rank) * static_cast<std::size_t>(rank),
                  GammaElement(torsion_order, free_params));
}

std::size_t AlgebraSpec::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("AlgebraSpec: bad index");
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
}

void AlgebraSpec::set_q(int i, int j, const GammaElement& g) {
  if (i == j) throw std::invalid_argument("AlgebraSpec: q_ii is fixed to 1");
  if (g.torsion_order() != torsion_ || g.free_params() != m_) {
    throw std::invalid_argument("AlgebraSpec: Gamma value has mismatched (N, m)");
  }
  entries_[index(i, j)] = g;
  entries_[index(j, i)] = -g;
}

bool AlgebraSpec::all_zero() const {
  for (const auto& g : entries_) {
    if (!g.is_zero()) return false;
  }
  return true;
}

bool AlgebraSpec::operator==(const AlgebraSpec& o) const {
  return n_ == o.n_ && torsion_ == o.torsion_ && m_ == o.m_ && entries_ == o.entries_;
}

GammaElement beta_form(const AlgebraSpec& spec, const IntVector& a, const IntVector& b) {
  if (a.size() != spec.rank() || b.size() != spec.rank()) {
    throw std::invalid_argument("beta_form: vector length does not match rank");
  }
  GammaElement acc = spec.zero_gamma();
  for (int i = 0; i < spec.rank(); ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < spec.rank(); ++j) {
      if (i == j || b(j) == 0) continue;
      acc = acc + gamma_scale(a(i) * b(j), spec.g(i, j));
    }
  }
  return acc;
}

GammaElement cocycle(const AlgebraSpec& spec, const IntVector& a, const IntVector& b) {
  if (a.size() != spec.rank() || b.size() != spec.rank()) {
    throw std::invalid_argument("cocycle: vector length does not match rank");
  }
  GammaElement acc = spec.zero_gamma();
  for (int i = 0; i < spec.rank(); ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < i; ++j) {
      if (b(j) == 0) continue;
      acc = acc + gamma_scale(a(i) * b(j), spec.g(i, j));
    }
  }
  return acc;
}

GammaElement commutator_units(const AlgebraSpec& spec, const IntVector& a, const IntVector& b) {
  return beta_form(spec, a, b);
}

GammaElement ordered_monomial_gamma(const AlgebraSpec& spec, const IntMatrix& rows,
                                    const IntVector& powers) {
  if (rows.rows() != powers.size()) {
    throw std::invalid_argument("ordered_monomial_gamma: row/power count mismatch");
  }
  GammaElement gamma = spec.zero_gamma();
  IntVector e = IntVector::Zero(spec.rank());
  for (Eigen::Index k = 0; k < rows.rows(); ++k) {
    IntVector v = rows.row(k).transpose();
    if (powers(k) >= 0) {
      for (Int step = 0; step < powers(k); ++step) {
        gamma = gamma + cocycle(spec, e, v);
        e += v;
      }
    } else {
      // (x^v)^-1 = embed(-lambda(v, -v)) x^{-v}
      IntVector nv = -v;
      GammaElement inv_adjust = -cocycle(spec, v, nv);
      for (Int step = 0; step < -powers(k); ++step) {
        gamma = gamma + inv_adjust + cocycle(spec, e, nv);
        e += nv;
      }
    }
  }
  return gamma;
}

TorusElement TorusElement::one(SpecPtr spec) {
  IntVector zero = IntVector::Zero(spec->rank());
  return monomial(std::move(spec), zero);
}

TorusElement TorusElement::monomial(SpecPtr spec, const IntVector& exponent) {
  Coefficient c = Coefficient::one(spec->torsion_order(), spec->free_params());
  return monomial(std::move(spec), exponent, c);
}

TorusElement TorusElement::monomial(SpecPtr spec, const IntVector& exponent,
                                    const Coefficient& c) {
  TorusElement out(std::move(spec));
  out.add_term(exponent, c);
  return out;
}

void TorusElement::add_term(const IntVector& exponent, const Coefficient& c) {
  if (exponent.size() != spec_->rank()) {
    throw std::invalid_argument("TorusElement: exponent length does not match rank");
  }
  if (c.is_zero()) return;
  std::vector<Int> key(exponent.data(), exponent.data() + exponent.size());
  auto [it, inserted] = support_.emplace(std::move(key), c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) support_.erase(it);
  }
}

bool TorusElement::is_unit() const {
  return support_.size() == 1 && support_.begin()->second.is_unit();
}

namespace {

void check_same_spec(const TorusElement& a, const TorusElement& b) {
  if (*a.spec() != *b.spec()) throw std::invalid_argument("TorusElement: mismatched specs");
}

IntVector key_to_vector(const std::vector<Int>& key) {
  IntVector v(static_cast<Eigen::Index>(key.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = key[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

TorusElement TorusElement::operator+(const TorusElement& o) const {
  check_same_spec(*this, o);
  TorusElement out = *this;
  for (const auto& [key, c] : o.support_) out.add_term(key_to_vector(key), c);
  return out;
}

TorusElement TorusElement::operator-() const {
  TorusElement out(spec_);
  for (const auto& [key, c] : support_) out.support_.emplace(key, -c);
  return out;
}

TorusElement TorusElement::operator-(const TorusElement& o) const { return *this + (-o); }

TorusElement TorusElement::operator*(const TorusElement& o) const {
  check_same_spec(*this, o);
  TorusElement out(spec_);
  for (const auto& [ka, ca] : support_) {
    IntVector a = key_to_vector(ka);
    for (const auto& [kb, cb] : o.support_) {
      IntVector b = key_to_vector(kb);
      Coefficient c = ca * cb * embed_unit(cocycle(*spec_, a, b));
      out.add_term(a + b, c);
    }
  }
  return out;
}

TorusElement TorusElement::scaled(const Coefficient& c) const {
  TorusElement out(spec_);
  for (const auto& [key, coeff] : support_) {
    Coefficient v = coeff * c;
    if (!v.is_zero()) out.support_.emplace(key, v);
  }
  return out;
}

bool TorusElement::operator==(const TorusElement& o) const {
  return *spec_ == *o.spec_ && support_ == o.support_;
}

TorusElement TorusElement::unit_inverse() const {
  if (!is_unit()) throw std::invalid_argument("TorusElement: not a unit");
  const auto& [key, c] = *support_.begin();
  IntVector a = key_to_vector(key);
  IntVector na = -a;
  // x^a x^{-a} = embed(lambda(a, -a))
  Coefficient adjust = embed_unit(-cocycle(*spec_, a, na));
  return monomial(spec_, na, c.unit_inverse() * adjust);
}

bool is_commutative_sublattice(const AlgebraSpec& spec, const Sublattice& b) {
  if (b.ambient_rank() != spec.rank()) {
    throw std::invalid_argument("is_commutative_sublattice: ambient rank mismatch");
  }
  for (int i = 0; i < b.rank(); ++i) {
    for (int j = i + 1; j < b.rank(); ++j) {
      if (!beta_form(spec, b.basis_row(i).transpose(), b.basis_row(j).transpose()).is_zero()) {
        return false;
      }
    }
  }
  return true;
}

Sublattice center_lattice(const AlgebraSpec& spec) {
  const int n = spec.rank();
  const int m = spec.free_params();
  // beta(a, e_i) = 0 for all i: free part rows exactly, torsion rows mod N
  IntMatrix g_free(n * m, n);
  IntMatrix g_tors(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const GammaElement& g = spec.g(j, i);  // coefficient of a_j in beta(a, e_i)
      for (int t = 0; t < m; ++t) g_free(i * m + t, j) = g.free()(t);
      g_tors(i, j) = g.tors();
    }
  }
  return kernel_mixed(g_free, g_tors, Int(spec.torsion_order()));
}

bool has_trivial_center(const AlgebraSpec& spec) { return center_lattice(spec).rank() == 0; }

AlgebraSpec rebase(const AlgebraSpec& spec, const IntMatrix& u) {
  if (u.rows() != spec.rank() || u.cols() != spec.rank()) {
    throw std::invalid_argument("rebase: basis matrix has wrong shape");
  }
  unimodular_inverse(u);  // throws unless unimodular
  AlgebraSpec out(spec.rank(), spec.torsion_order(), spec.free_params());
  for (int k = 0; k < spec.rank(); ++k) {
    for (int l = k + 1; l < spec.rank(); ++l) {
      out.set_q(k, l, beta_form(spec, u.row(k).transpose(), u.row(l).transpose()));
    }
  }
  return out;
}

TorusElement rebase_element(const TorusElement& alpha, const IntMatrix& u) {
  const AlgebraSpec& old_spec = *alpha.spec();
  IntMatrix uinv = unimodular_inverse(u);
  auto new_spec = std::make_shared<const AlgebraSpec>(rebase(old_spec, u));
  TorusElement out{SpecPtr(new_spec)};
  for (const auto& [key, c] : alpha.support()) {
    IntVector a(static_cast<Eigen::Index>(key.size()));
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = key[static_cast<std::size_t>(i)];
    IntVector coords = (a.transpose() * uinv).transpose();
    // ordered product of the new generators equals embed(gamma) x^a in the
    // old presentation
    GammaElement gamma = ordered_monomial_gamma(old_spec, u, coords);
    out.add_term(coords, c * embed_unit(-gamma));
  }
  return out;
}

AlgebraSpec power_cocycle_spec(const AlgebraSpec& spec, int r, const Int& s) {
  if (r < 0 || r > spec.rank()) throw std::invalid_argument("power_cocycle_spec: bad split rank");
  if (s < 1) throw std::invalid_argument("power_cocycle_spec: s must be >= 1");
  AlgebraSpec out(spec.rank(), spec.torsion_order(), spec.free_params());
  for (int i = 0; i < spec.rank(); ++i) {
    for (int j = i + 1; j < spec.rank(); ++j) {
      out.set_q(i, j, i < r ? spec.g(i, j) : gamma_scale(s, spec.g(i, j)));
    }
  }
  return out;
}

AlgebraSpec sub_spec(const AlgebraSpec& spec, const Sublattice& b) {
  if (b.rank() == 0) throw std::invalid_argument("sub_spec: zero-rank sublattice");
  AlgebraSpec out(b.rank(), spec.torsion_order(), spec.free_params());
  for (int k = 0; k < b.rank(); ++k) {
    for (int l = k + 1; l < b.rank(); ++l) {
      out.set_q(k, l, beta_form(spec, b.basis_row(k).transpose(), b.basis_row(l).transpose()));
    }
  }
  return out;
}

}  // namespace qtorus
