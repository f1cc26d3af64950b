#include "qtorus/modules.hpp"

#include <stdexcept>

namespace qtorus {

namespace {

IntVector key_vec(const std::vector<Int>& key) {
  IntVector v(static_cast<Eigen::Index>(key.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = key[static_cast<std::size_t>(i)];
  return v;
}

TorusElement with_spec(const SpecPtr& spec, const TorusElement& t) {
  TorusElement out(spec);
  for (const auto& [key, c] : t.support()) out.add_term(key_vec(key), c);
  return out;
}

Coefficient unit_pow(const Coefficient& u, const Int& k) {
  const Coefficient base = k >= 0 ? u : u.unit_inverse();
  Coefficient acc = Coefficient::one(u.torsion_order(), u.free_params());
  for (Int i = 0; i < abs(k); i += 1) acc = acc * base;
  return acc;
}

template <typename F>
void for_each_box(int dims, long k, F&& fn) {
  if (dims == 0) {
    IntVector v(0);
    fn(v);
    return;
  }
  std::vector<long> digits(static_cast<std::size_t>(dims), -k);
  IntVector v(dims);
  while (true) {
    for (int i = 0; i < dims; ++i) v(i) = digits[static_cast<std::size_t>(i)];
    fn(v);
    int pos = dims - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == k) {
      digits[static_cast<std::size_t>(pos)] = -k;
      --pos;
    }
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
}

CFiniteModule::ElemMatrix minor_of(const CFiniteModule::ElemMatrix& m, std::size_t row,
                                   std::size_t col) {
  CFiniteModule::ElemMatrix sub;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<TorusElement> line;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != col) line.push_back(m[i][j]);
    }
    sub.push_back(std::move(line));
  }
  return sub;
}

CFiniteModule::ElemMatrix invert_over_c(const SpecPtr& spec, const CFiniteModule::ElemMatrix& a) {
  const std::size_t d = a.size();
  TorusElement det = commutative_determinant(spec, a);
  if (!det.is_unit()) {
    throw std::invalid_argument("action matrix determinant is not a unit");
  }
  TorusElement dinv = det.unit_inverse();
  CFiniteModule::ElemMatrix inv(d, std::vector<TorusElement>(d, TorusElement::zero(spec)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      TorusElement cof = commutative_determinant(spec, minor_of(a, i, j)) * dinv;
      inv[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return inv;
}

/// Column-sparse row over (component, exponent) columns with ids handed out
/// on first use.
struct ColumnIndex {
  std::map<std::pair<int, std::vector<Int>>, long> ids;

  SparseEchelon::Row row_of(const ModuleVector& w) {
    SparseEchelon::Row row;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
      for (const auto& [key, c] : w[static_cast<std::size_t>(i)].support()) {
        auto [it, inserted] = ids.try_emplace({i, key}, static_cast<long>(ids.size()));
        row[it->second] = c;
      }
    }
    return row;
  }
};

bool vector_is_zero(const ModuleVector& v) {
  for (const auto& e : v) {
    if (!e.is_zero()) return false;
  }
  return true;
}

}  // namespace

Int TruncationWindow::dimension() const {
  Int width = 2 * Int(k) + 1;
  Int acc = d;
  for (int i = 0; i < r; ++i) acc *= width;
  return acc;
}

CFiniteModule::CFiniteModule(SpecPtr spec, const IntMatrix& split, int r, int d,
                             std::vector<ElemMatrix> actions)
    : spec_(std::move(spec)), split_(split), r_(r), d_(d), actions_(std::move(actions)) {
  const int n = spec_->rank();
  if (split_.rows() != n || split_.cols() != n) {
    throw std::invalid_argument("CFiniteModule: split basis has wrong shape");
  }
  if (r_ < 0 || r_ > n) throw std::invalid_argument("CFiniteModule: bad split rank");
  if (d_ < 1) throw std::invalid_argument("CFiniteModule: rank must be >= 1");
  rspec_ = std::make_shared<const AlgebraSpec>(rebase(*spec_, split_));
  for (int i = 0; i < r_; ++i) {
    for (int j = i + 1; j < r_; ++j) {
      if (!rspec_->g(i, j).is_zero()) {
        throw std::invalid_argument("CFiniteModule: C is not commutative");
      }
    }
  }
  if (static_cast<int>(actions_.size()) != n - r_) {
    throw std::invalid_argument("CFiniteModule: one action matrix per generator outside C");
  }
  for (const auto& a : actions_) {
    if (static_cast<int>(a.size()) != d_) throw std::invalid_argument("CFiniteModule: bad matrix");
    for (const auto& line : a) {
      if (static_cast<int>(line.size()) != d_) {
        throw std::invalid_argument("CFiniteModule: bad matrix");
      }
      for (const auto& entry : line) {
        if (*entry.spec() != *rspec_) {
          throw std::invalid_argument("CFiniteModule: action entry over the wrong presentation");
        }
        if (!supported_in_c(entry)) {
          throw std::invalid_argument("CFiniteModule: action entry not supported in C");
        }
      }
    }
  }
  inverses_.resize(actions_.size());
}

const CFiniteModule::ElemMatrix& CFiniteModule::action(int j) const {
  if (j < r_ || j >= spec_->rank()) throw std::out_of_range("CFiniteModule: bad generator index");
  return actions_[static_cast<std::size_t>(j - r_)];
}

const CFiniteModule::ElemMatrix& CFiniteModule::action_inverse(int j) const {
  if (j < r_ || j >= spec_->rank()) throw std::out_of_range("CFiniteModule: bad generator index");
  auto& slot = inverses_[static_cast<std::size_t>(j - r_)];
  if (!slot) slot = invert_over_c(rspec_, actions_[static_cast<std::size_t>(j - r_)]);
  return *slot;
}

bool CFiniteModule::supported_in_c(const TorusElement& f) const {
  const int n = spec_->rank();
  for (const auto& [key, c] : f.support()) {
    for (int i = r_; i < n; ++i) {
      if (key[static_cast<std::size_t>(i)] != 0) return false;
    }
  }
  return true;
}

TorusElement CFiniteModule::twist(int j, const TorusElement& f) const {
  IntVector ej = IntVector::Zero(rspec_->rank());
  ej(j) = 1;
  TorusElement out(rspec_);
  for (const auto& [key, c] : f.support()) {
    IntVector a = key_vec(key);
    out.add_term(a, c * embed_unit(beta_form(*rspec_, ej, a)));
  }
  return out;
}

TorusElement CFiniteModule::twist_inverse(int j, const TorusElement& f) const {
  IntVector ej = IntVector::Zero(rspec_->rank());
  ej(j) = 1;
  TorusElement out(rspec_);
  for (const auto& [key, c] : f.support()) {
    IntVector a = key_vec(key);
    out.add_term(a, c * embed_unit(-beta_form(*rspec_, ej, a)));
  }
  return out;
}

ModuleVector CFiniteModule::zero_vector() const {
  return ModuleVector(static_cast<std::size_t>(d_), TorusElement::zero(rspec_));
}

ModuleVector CFiniteModule::generator(int i) const {
  if (i < 0 || i >= d_) throw std::out_of_range("CFiniteModule: bad generator");
  ModuleVector v = zero_vector();
  v[static_cast<std::size_t>(i)] = TorusElement::one(rspec_);
  return v;
}

ModuleVector CFiniteModule::act(const TorusElement& alpha, const ModuleVector& v) const {
  if (*alpha.spec() != *rspec_) {
    throw std::invalid_argument("CFiniteModule: element over the wrong presentation");
  }
  if (static_cast<int>(v.size()) != d_) throw std::invalid_argument("CFiniteModule: bad vector");
  const int n = rspec_->rank();
  auto apply = [&](int j, const ModuleVector& w) {
    const ElemMatrix& a = action(j);
    ModuleVector tw(w.size(), TorusElement::zero(rspec_));
    for (std::size_t c = 0; c < w.size(); ++c) tw[c] = twist(j, w[c]);
    ModuleVector out = zero_vector();
    for (int row = 0; row < d_; ++row) {
      for (int col = 0; col < d_; ++col) {
        out[static_cast<std::size_t>(row)] =
            out[static_cast<std::size_t>(row)] +
            a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] *
                tw[static_cast<std::size_t>(col)];
      }
    }
    return out;
  };
  auto apply_inverse = [&](int j, const ModuleVector& w) {
    const ElemMatrix& a = action_inverse(j);
    ModuleVector mixed = zero_vector();
    for (int row = 0; row < d_; ++row) {
      for (int col = 0; col < d_; ++col) {
        mixed[static_cast<std::size_t>(row)] =
            mixed[static_cast<std::size_t>(row)] +
            a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] *
                w[static_cast<std::size_t>(col)];
      }
    }
    for (auto& e : mixed) e = twist_inverse(j, e);
    return mixed;
  };

  ModuleVector result = zero_vector();
  for (const auto& [key, kappa] : alpha.support()) {
    IntVector a = key_vec(key);
    ModuleVector w = v;
    for (int j = n - 1; j >= r_; --j) {
      for (Int p = 0; p < a(j); p += 1) w = apply(j, w);
      for (Int p = 0; p < -a(j); p += 1) w = apply_inverse(j, w);
    }
    IntVector cpart = a;
    for (int j = r_; j < n; ++j) cpart(j) = 0;
    TorusElement mon = TorusElement::monomial(rspec_, cpart, kappa);
    for (int i = 0; i < d_; ++i) {
      result[static_cast<std::size_t>(i)] =
          result[static_cast<std::size_t>(i)] + mon * w[static_cast<std::size_t>(i)];
    }
  }
  return result;
}

long CFiniteModule::action_support_radius() const {
  long radius = 0;
  auto scan = [&](const ElemMatrix& m) {
    for (const auto& line : m) {
      for (const auto& entry : line) {
        for (const auto& [key, c] : entry.support()) {
          for (const Int& e : key) {
            long mag = std::abs(e.get_si());
            radius = std::max(radius, mag);
          }
        }
      }
    }
  };
  for (int j = r_; j < spec_->rank(); ++j) {
    scan(action(j));
    scan(action_inverse(j));
  }
  return radius;
}

TorusElement commutative_determinant(const SpecPtr& spec, const CFiniteModule::ElemMatrix& m) {
  const std::size_t d = m.size();
  if (d == 0) return TorusElement::one(spec);
  if (d == 1) return m[0][0];
  TorusElement acc = TorusElement::zero(spec);
  for (std::size_t c = 0; c < d; ++c) {
    if (m[0][c].is_zero()) continue;
    TorusElement term = m[0][c] * commutative_determinant(spec, minor_of(m, 0, c));
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

ConsistencyReport check_consistency(const CFiniteModule& m) {
  const SpecPtr& rspec = m.rspec();
  const int n = rspec->rank();
  const int r = m.r();
  const int d = m.d();
  ConsistencyReport rep;
  for (int j = r; j < n; ++j) {
    try {
      m.action_inverse(j);
    } catch (const std::invalid_argument&) {
      rep.non_invertible.push_back(j);
    }
  }
  for (int i = r; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& ai = m.action(i);
      const auto& aj = m.action(j);
      Coefficient q = embed_unit(rspec->g(i, j));
      bool ok = true;
      for (int row = 0; row < d && ok; ++row) {
        for (int col = 0; col < d && ok; ++col) {
          TorusElement lhs = TorusElement::zero(rspec);
          TorusElement rhs = TorusElement::zero(rspec);
          for (int k = 0; k < d; ++k) {
            lhs = lhs + ai[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] *
                            m.twist(i, aj[static_cast<std::size_t>(k)][static_cast<std::size_t>(col)]);
            rhs = rhs + aj[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] *
                            m.twist(j, ai[static_cast<std::size_t>(k)][static_cast<std::size_t>(col)]);
          }
          if (lhs != rhs.scaled(q)) ok = false;
        }
      }
      if (!ok) rep.failing_pairs.emplace_back(i, j);
    }
  }
  rep.pass = rep.failing_pairs.empty() && rep.non_invertible.empty();
  return rep;
}

CFiniteModule induce_cyclic(SpecPtr spec, const Sublattice& c, const Sublattice& e,
                            const std::vector<Coefficient>& chi) {
  const int n = spec->rank();
  auto check = verify_virtual_complement(*spec, c, e);
  if (!check.pass) throw std::invalid_argument("induce_cyclic: E is not a virtual complement");
  if (saturation(c) != c) throw std::invalid_argument("induce_cyclic: C must be saturated");
  if (static_cast<int>(chi.size()) != e.rank()) {
    throw std::invalid_argument("induce_cyclic: one character value per E-basis vector");
  }
  for (const auto& u : chi) {
    if (!u.is_unit()) throw std::invalid_argument("induce_cyclic: character values must be units");
  }
  const int r = c.rank();
  IntMatrix split(n, n);
  if (r > 0) split.topRows(r) = c.basis();
  if (r < n) split.bottomRows(n - r) = saturated_complement(c);
  IntMatrix uinv = unimodular_inverse(split);
  auto rspec = std::make_shared<const AlgebraSpec>(rebase(*spec, split));
  IntMatrix erows = e.basis() * uinv;

  IntMatrix lbasis = IntMatrix::Zero(n, n);
  for (int i = 0; i < r; ++i) lbasis(i, i) = 1;
  if (r < n) lbasis.bottomRows(n - r) = erows;
  IntMatrix h = hermite_normal_form(lbasis).h;

  // coset representatives: the box under the HNF diagonal
  std::vector<IntVector> reps;
  std::map<std::vector<Int>, int> rep_index;
  {
    std::vector<Int> digits(static_cast<std::size_t>(n), 0);
    while (true) {
      IntVector g(n);
      for (int i = 0; i < n; ++i) g(i) = digits[static_cast<std::size_t>(i)];
      rep_index[std::vector<Int>(digits.begin(), digits.end())] = static_cast<int>(reps.size());
      reps.push_back(g);
      int pos = n - 1;
      while (pos >= 0 && digits[static_cast<std::size_t>(pos)] + 1 == h(pos, pos)) {
        digits[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      digits[static_cast<std::size_t>(pos)] += 1;
    }
  }
  const int d = static_cast<int>(reps.size());
  if (check.index != d) throw std::logic_error("induce_cyclic: index mismatch");

  auto reduce_rep = [&](IntVector a) {
    IntVector orig = a;
    for (int i = 0; i < n; ++i) {
      Int q = floor_div(a(i), h(i, i));
      if (q != 0) a -= q * h.row(i).transpose();
    }
    return std::make_pair(a, IntVector(orig - a));
  };

  std::vector<CFiniteModule::ElemMatrix> actions;
  for (int j = r; j < n; ++j) {
    IntVector ej = IntVector::Zero(n);
    ej(j) = 1;
    CFiniteModule::ElemMatrix a(static_cast<std::size_t>(d),
                                std::vector<TorusElement>(static_cast<std::size_t>(d),
                                                          TorusElement::zero(rspec)));
    for (int i = 0; i < d; ++i) {
      auto [rep, l] = reduce_rep(ej + reps[static_cast<std::size_t>(i)]);
      int sigma = rep_index.at(std::vector<Int>(rep.data(), rep.data() + n));
      auto y = solve_diophantine(IntMatrix(lbasis.transpose()), l);
      if (!y) throw std::logic_error("induce_cyclic: coset residue outside C + E");
      IntVector cvec = IntVector::Zero(n);
      for (int t = 0; t < r; ++t) cvec(t) = (*y)(t);
      IntVector evec = l - cvec;
      IntVector ye = y->tail(n - r);
      Coefficient scalar = Coefficient::one(spec->torsion_order(), spec->free_params());
      for (int t = 0; t < n - r; ++t) scalar = scalar * unit_pow(chi[static_cast<std::size_t>(t)], ye(t));
      GammaElement gamma = cocycle(*rspec, ej, reps[static_cast<std::size_t>(i)]) -
                           cocycle(*rspec, rep, l) - cocycle(*rspec, cvec, evec) -
                           ordered_monomial_gamma(*rspec, erows, ye) -
                           beta_form(*rspec, cvec, rep);
      a[static_cast<std::size_t>(sigma)][static_cast<std::size_t>(i)] =
          TorusElement::monomial(rspec, cvec, scalar * embed_unit(gamma));
    }
    actions.push_back(std::move(a));
  }
  return CFiniteModule(std::move(spec), split, r, d, std::move(actions));
}

ExteriorReport exterior_top(const CFiniteModule& m) {
  const SpecPtr& rspec = m.rspec();
  const int n = rspec->rank();
  const int r = m.r();
  ExteriorReport rep;
  std::vector<TorusElement> dets;
  for (int j = r; j < n; ++j) dets.push_back(commutative_determinant(rspec, m.action(j)));
  rep.identity_ok = true;
  for (int i = r; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const TorusElement& di = dets[static_cast<std::size_t>(i - r)];
      const TorusElement& dj = dets[static_cast<std::size_t>(j - r)];
      Coefficient q = embed_unit(gamma_scale(Int(m.d()), rspec->g(i, j)));
      if (di * m.twist(i, dj) != (dj * m.twist(j, di)).scaled(q)) {
        rep.identity_ok = false;
        rep.failing_pairs.emplace_back(i, j);
      }
    }
  }
  auto pspec = std::make_shared<const AlgebraSpec>(power_cocycle_spec(*rspec, r, Int(m.d())));
  std::vector<CFiniteModule::ElemMatrix> actions;
  for (const auto& det : dets) actions.push_back({{with_spec(pspec, det)}});
  CFiniteModule power(pspec, IntMatrix::Identity(n, n), r, 1, std::move(actions));
  rep.power_module_consistent = check_consistency(power).pass;
  rep.pass = rep.identity_ok && rep.power_module_consistent;
  return rep;
}

GrowthEstimate gk_growth_estimate(const CFiniteModule& m, const ModuleVector& v, long k_max) {
  if (k_max < 3) throw std::invalid_argument("gk_growth_estimate: k_max must be >= 3");
  if (vector_is_zero(v)) throw std::invalid_argument("gk_growth_estimate: zero vector");
  const int n = m.rspec()->rank();
  SparseEchelon ech;
  ColumnIndex columns;
  GrowthEstimate est;
  for (long k = 0; k <= k_max; ++k) {
    for_each_box(n, k, [&](const IntVector& a) {
      long norm = 0;
      for (int i = 0; i < n; ++i) norm = std::max(norm, std::abs(a(i).get_si()));
      if (norm != k) return;
      ech.add_row(columns.row_of(m.act(TorusElement::monomial(m.rspec(), a), v)));
    });
    est.dims.push_back(ech.rank());
  }
  // degree = order of the leading difference that is constant over the last
  // three window sizes
  std::vector<Int> cur = est.dims;
  int q = 0;
  while (cur.size() >= 3) {
    if (cur[cur.size() - 1] == cur[cur.size() - 2] && cur[cur.size() - 2] == cur[cur.size() - 3]) {
      est.degree = q;
      est.stable = true;
      break;
    }
    std::vector<Int> diff;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) diff.push_back(cur[i + 1] - cur[i]);
    cur = std::move(diff);
    ++q;
  }
  return est;
}

std::optional<TorusElement> torsion_search(const CFiniteModule& m, const Sublattice& b,
                                           const ModuleVector& v, long deg_bound) {
  if (deg_bound < 1) throw std::invalid_argument("torsion_search: deg_bound must be >= 1");
  if (vector_is_zero(v)) throw std::invalid_argument("torsion_search: zero vector");
  const int n = m.rspec()->rank();
  if (b.ambient_rank() != n) throw std::invalid_argument("torsion_search: ambient rank mismatch");
  SparseEchelon ech;
  ColumnIndex columns;
  std::vector<IntVector> exponents;
  std::optional<TorusElement> found;
  for_each_box(b.rank(), deg_bound, [&](const IntVector& y) {
    if (found) return;
    IntVector e = b.rank() > 0 ? IntVector((y.transpose() * b.basis()).transpose())
                               : IntVector(IntVector::Zero(n));
    SparseEchelon::Row row = columns.row_of(m.act(TorusElement::monomial(m.rspec(), e), v));
    row[-static_cast<long>(exponents.size()) - 1] =
        Coefficient::one(m.rspec()->torsion_order(), m.rspec()->free_params());
    exponents.push_back(e);
    SparseEchelon::Row residual = ech.reduce(row);
    bool main_zero = true;
    for (const auto& [col, coeff] : residual) {
      if (col >= 0 && !coeff.is_zero()) main_zero = false;
    }
    if (main_zero) {
      TorusElement gamma(m.rspec());
      for (const auto& [col, coeff] : residual) {
        gamma.add_term(exponents[static_cast<std::size_t>(-col - 1)], coeff);
      }
      if (!gamma.is_zero() && vector_is_zero(m.act(gamma, v))) {
        found = gamma;
        return;
      }
      throw std::logic_error("torsion_search: dependency extraction failed");
    }
    ech.add_row(std::move(row));
  });
  return found;
}

int dimension_probe(const CFiniteModule& m, long deg_bound,
                    const std::vector<Sublattice>& candidates) {
  int best = 0;
  for (const auto& b : candidates) {
    if (b.rank() <= best) continue;
    bool clean = true;
    for (int i = 0; i < m.d() && clean; ++i) {
      if (torsion_search(m, b, m.generator(i), deg_bound)) clean = false;
    }
    if (clean) best = b.rank();
  }
  return best;
}

std::vector<Sublattice> default_dimension_candidates(const CFiniteModule& m, long search_bound) {
  const int n = m.rspec()->rank();
  std::vector<Sublattice> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    IntMatrix rows(__builtin_popcount(mask), n);
    int row = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        rows.row(row).setZero();
        rows(row, i) = 1;
        ++row;
      }
    }
    Sublattice b(n, rows);
    if (is_commutative_sublattice(*m.rspec(), b)) out.push_back(b);
  }
  if (m.r() > 0) {
    IntMatrix rows = IntMatrix::Zero(m.r(), n);
    for (int i = 0; i < m.r(); ++i) rows(i, i) = 1;
    out.push_back(Sublattice(n, rows));
  }
  out.push_back(max_commutative_rank(*m.rspec(), search_bound).witness);
  return out;
}

CFiniteModule direct_sum(const CFiniteModule& m1, const CFiniteModule& m2) {
  if (*m1.spec() != *m2.spec() || m1.split() != m2.split() || m1.r() != m2.r()) {
    throw std::invalid_argument("direct_sum: mismatched splits");
  }
  const int n = m1.spec()->rank();
  const int d = m1.d() + m2.d();
  std::vector<CFiniteModule::ElemMatrix> actions;
  for (int j = m1.r(); j < n; ++j) {
    CFiniteModule::ElemMatrix a(static_cast<std::size_t>(d),
                                std::vector<TorusElement>(static_cast<std::size_t>(d),
                                                          TorusElement::zero(m1.rspec())));
    for (int row = 0; row < m1.d(); ++row) {
      for (int col = 0; col < m1.d(); ++col) {
        a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
            m1.action(j)[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
      }
    }
    for (int row = 0; row < m2.d(); ++row) {
      for (int col = 0; col < m2.d(); ++col) {
        a[static_cast<std::size_t>(m1.d() + row)][static_cast<std::size_t>(m1.d() + col)] =
            with_spec(m1.rspec(), m2.action(j)[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]);
      }
    }
    actions.push_back(std::move(a));
  }
  return CFiniteModule(m1.spec(), m1.split(), m1.r(), d, std::move(actions));
}

CyclicityReport cyclicity_probe(const CFiniteModule& m, const ModuleVector& v, long k) {
  if (k < 0) throw std::invalid_argument("cyclicity_probe: negative radius");
  if (vector_is_zero(v)) throw std::invalid_argument("cyclicity_probe: zero vector");
  const int n = m.rspec()->rank();
  SparseEchelon ech;
  ColumnIndex columns;
  for_each_box(n, k, [&](const IntVector& a) {
    ech.add_row(columns.row_of(m.act(TorusElement::monomial(m.rspec(), a), v)));
  });
  CyclicityReport rep;
  rep.span_rank = ech.rank();
  rep.interior_radius = std::max(0L, k - m.action_support_radius());
  TruncationWindow window{rep.interior_radius, m.r(), m.d()};
  rep.interior_dim = window.dimension();
  rep.attained = 0;
  for_each_box(m.r(), rep.interior_radius, [&](const IntVector& c) {
    IntVector full = IntVector::Zero(n);
    for (int i = 0; i < m.r(); ++i) full(i) = c(i);
    for (int comp = 0; comp < m.d(); ++comp) {
      ModuleVector w = m.zero_vector();
      w[static_cast<std::size_t>(comp)] = TorusElement::monomial(m.rspec(), full);
      if (ech.reduce(columns.row_of(w)).empty()) rep.attained += 1;
    }
  });
  rep.interior_saturated = rep.attained == rep.interior_dim;
  rep.ratio = make_rational(rep.attained, rep.interior_dim);
  rep.center_trivial = has_trivial_center(*m.rspec());
  return rep;
}

}  // namespace qtorus
