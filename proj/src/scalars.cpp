#include "qtorus/scalars.hpp"

#include <functional>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace qtorus {

namespace {

using Poly = std::vector<Rational>;  // dense, low-degree first

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  poly_trim(out);
  return out;
}

/// Exact division with remainder over Q[x].
std::pair<Poly, Poly> poly_divmod(Poly num, const Poly& den) {
  poly_trim(num);
  if (den.empty()) throw std::invalid_argument("poly_divmod: division by zero");
  Poly quot;
  if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rational(0));
  const Rational& lead = den.back();
  while (num.size() >= den.size()) {
    Rational c = num.back() / lead;
    std::size_t shift = num.size() - den.size();
    quot[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    poly_trim(num);
  }
  return {quot, num};
}

Poly poly_mod(Poly num, const Poly& den) { return poly_divmod(std::move(num), den).second; }

}  // namespace

const std::vector<Rational>& cyclotomic_polynomial(long n) {
  static std::unordered_map<long, Poly> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be >= 1");

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
  std::function<Poly(long)> compute = [&](long k) -> Poly {
    auto hit = cache.find(k);
    if (hit != cache.end()) return hit->second;
    Poly num(static_cast<std::size_t>(k) + 1, Rational(0));
    num[0] = -1;
    num.back() = 1;
    for (long d = 1; d < k; ++d) {
      if (k % d != 0) continue;
      Poly phi_d = compute(d);
      auto [quot, rem] = poly_divmod(num, phi_d);
      if (!rem.empty()) throw std::logic_error("cyclotomic_polynomial: nonzero remainder");
      num = quot;
    }
    cache.emplace(k, num);
    return num;
  };
  compute(n);
  return cache.at(n);
}

GammaElement::GammaElement(long n, const Int& tors, IntVector free)
    : n_(n), tors_(mod_reduce(tors, Int(n))), free_(std::move(free)) {
  if (n < 1) throw std::invalid_argument("GammaElement: torsion order must be >= 1");
}

bool GammaElement::is_zero() const { return tors_ == 0 && free_.isZero(0); }

GammaElement GammaElement::operator+(const GammaElement& other) const {
  if (n_ != other.n_ || free_.size() != other.free_.size()) {
    throw std::invalid_argument("GammaElement: mismatched (N, m)");
  }
  return GammaElement(n_, tors_ + other.tors_, free_ + other.free_);
}

GammaElement GammaElement::operator-() const { return GammaElement(n_, -tors_, -free_); }

bool GammaElement::operator==(const GammaElement& other) const {
  return n_ == other.n_ && tors_ == other.tors_ && free_.size() == other.free_.size() &&
         free_ == other.free_;
}

GammaElement gamma_scale(const Int& k, const GammaElement& g) {
  return GammaElement(g.torsion_order(), k * g.tors(), (k * g.free()).eval());
}

CyclotomicNumber::CyclotomicNumber(long n)
    : n_(n), coeffs_(cyclotomic_polynomial(n).size() - 1, Rational(0)) {}

CyclotomicNumber::CyclotomicNumber(long n, const Rational& value) : CyclotomicNumber(n) {
  coeffs_[0] = value;
}

CyclotomicNumber::CyclotomicNumber(long n, std::vector<Rational> coeffs) : n_(n) {
  const Poly& phi = cyclotomic_polynomial(n);
  Poly reduced = poly_mod(std::move(coeffs), phi);
  reduced.resize(phi.size() - 1, Rational(0));
  coeffs_ = std::move(reduced);
}

CyclotomicNumber CyclotomicNumber::zeta_power(long n, const Int& k) {
  Int e = mod_reduce(k, Int(n));
  std::vector<Rational> p(e.get_ui() + 1, Rational(0));
  p.back() = 1;
  return CyclotomicNumber(n, std::move(p));
}

bool CyclotomicNumber::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const {
  if (n_ != o.n_) throw std::invalid_argument("CyclotomicNumber: mismatched torsion order");
  CyclotomicNumber out(n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
  return out;
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const {
  return *this + (-o);
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber out(n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = -coeffs_[i];
  return out;
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
  if (n_ != o.n_) throw std::invalid_argument("CyclotomicNumber: mismatched torsion order");
  Poly a(coeffs_.begin(), coeffs_.end());
  Poly b(o.coeffs_.begin(), o.coeffs_.end());
  return CyclotomicNumber(n_, poly_mul(a, b));
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw std::invalid_argument("CyclotomicNumber: inverse of zero");
  // Extended Euclid against the irreducible Phi_N: gcd is a nonzero constant.
  Poly r0 = cyclotomic_polynomial(n_);
  Poly r1(coeffs_.begin(), coeffs_.end());
  poly_trim(r1);
  Poly s0 = {};           // coefficient of `this` in r0
  Poly s1 = {Rational(1)};
  while (true) {
    auto [q, rem] = poly_divmod(r0, r1);
    if (rem.empty()) break;
    Poly s2 = s0;
    Poly qs1 = poly_mul(q, s1);
    s2.resize(std::max(s2.size(), qs1.size()), Rational(0));
    for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
    poly_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.size() != 1) throw std::logic_error("CyclotomicNumber: gcd with Phi_N not constant");
  Rational inv_gcd = Rational(1) / r1[0];
  for (auto& c : s1) c *= inv_gcd;
  return CyclotomicNumber(n_, std::move(s1));
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const {
  return n_ == o.n_ && coeffs_ == o.coeffs_;
}

bool CyclotomicNumber::operator<(const CyclotomicNumber& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != o.coeffs_[i]) return coeffs_[i] < o.coeffs_[i];
  }
  return false;
}

Coefficient::Coefficient(long n, int m, const std::vector<Int>& exponents,
                         const CyclotomicNumber& kappa)
    : n_(n), m_(m) {
  if (static_cast<int>(exponents.size()) != m) {
    throw std::invalid_argument("Coefficient: exponent length does not match m");
  }
  insert_term(exponents, kappa);
}

Coefficient Coefficient::one(long n, int m) {
  return Coefficient(n, m, std::vector<Int>(static_cast<std::size_t>(m), Int(0)),
                     CyclotomicNumber(n, Rational(1)));
}

Coefficient Coefficient::from_rational(long n, int m, const Rational& r) {
  return Coefficient(n, m, std::vector<Int>(static_cast<std::size_t>(m), Int(0)),
                     CyclotomicNumber(n, r));
}

void Coefficient::insert_term(const std::vector<Int>& expo, const CyclotomicNumber& kappa) {
  if (kappa.is_zero()) return;
  auto [it, inserted] = terms_.emplace(expo, kappa);
  if (!inserted) {
    it->second = it->second + kappa;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

namespace {

/// Zero coefficients adapt to the other operand's (N, m).
bool dims_compatible(const Coefficient& a, const Coefficient& b) {
  if (a.is_zero() || b.is_zero()) return true;
  return a.torsion_order() == b.torsion_order() && a.free_params() == b.free_params();
}

}  // namespace

Coefficient Coefficient::operator+(const Coefficient& o) const {
  if (!dims_compatible(*this, o)) throw std::invalid_argument("Coefficient: mismatched (N, m)");
  Coefficient out = is_zero() ? Coefficient(o.n_, o.m_) : Coefficient(n_, m_);
  out.terms_ = is_zero() ? o.terms_ : terms_;
  const Coefficient& other = is_zero() ? *this : o;
  for (const auto& [expo, kappa] : other.terms_) out.insert_term(expo, kappa);
  return out;
}

Coefficient Coefficient::operator-() const {
  Coefficient out(n_, m_);
  for (const auto& [expo, kappa] : terms_) out.terms_.emplace(expo, -kappa);
  return out;
}

Coefficient Coefficient::operator-(const Coefficient& o) const { return *this + (-o); }

Coefficient Coefficient::operator*(const Coefficient& o) const {
  if (!dims_compatible(*this, o)) throw std::invalid_argument("Coefficient: mismatched (N, m)");
  if (is_zero()) return *this;
  if (o.is_zero()) return o;
  Coefficient out(n_, m_);
  for (const auto& [e1, k1] : terms_) {
    for (const auto& [e2, k2] : o.terms_) {
      std::vector<Int> expo(e1.size());
      for (std::size_t i = 0; i < e1.size(); ++i) expo[i] = e1[i] + e2[i];
      out.insert_term(expo, k1 * k2);
    }
  }
  return out;
}

bool Coefficient::operator==(const Coefficient& o) const {
  if (is_zero() && o.is_zero()) return true;
  return n_ == o.n_ && m_ == o.m_ && terms_ == o.terms_;
}

Coefficient Coefficient::unit_inverse() const {
  if (!is_unit()) throw std::invalid_argument("Coefficient: not a unit");
  const auto& [expo, kappa] = *terms_.begin();
  std::vector<Int> neg(expo.size());
  for (std::size_t i = 0; i < expo.size(); ++i) neg[i] = -expo[i];
  return Coefficient(n_, m_, neg, kappa.inverse());
}

Coefficient embed_unit(const GammaElement& g) {
  std::vector<Int> expo(static_cast<std::size_t>(g.free_params()));
  for (int i = 0; i < g.free_params(); ++i) expo[static_cast<std::size_t>(i)] = g.free()(i);
  return Coefficient(g.torsion_order(), g.free_params(), expo,
                     CyclotomicNumber::zeta_power(g.torsion_order(), g.tors()));
}

Coefficient coeff_div_unit(const Coefficient& c, const Coefficient& u) {
  return c * u.unit_inverse();
}

Coefficient divide_exact(const Coefficient& num, const Coefficient& den) {
  if (den.is_zero()) throw std::invalid_argument("divide_exact: division by zero");
  if (num.is_zero()) return num;
  if (!dims_compatible(num, den)) throw std::invalid_argument("divide_exact: mismatched (N, m)");
  Coefficient rem = num;
  Coefficient quot(num.n_, num.m_);
  const auto& dlead = *den.terms_.rbegin();  // lex-largest exponent
  CyclotomicNumber dlead_inv = dlead.second.inverse();
  long guard = 0;
  while (!rem.is_zero()) {
    if (++guard > 200000) throw std::invalid_argument("divide_exact: not divisible");
    const auto& nlead = *rem.terms_.rbegin();
    std::vector<Int> qexpo(nlead.first.size());
    for (std::size_t i = 0; i < qexpo.size(); ++i) qexpo[i] = nlead.first[i] - dlead.first[i];
    Coefficient term(num.n_, num.m_, qexpo, nlead.second * dlead_inv);
    quot = quot + term;
    rem = rem - term * den;
  }
  return quot;
}

int fraction_free_rank(const CoeffMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  CoeffMatrix a = m;
  Coefficient prev;  // stays compatible: zero adapts dims
  bool have_prev = false;
  int rank = 0;
  for (Eigen::Index k = 0; k < std::min(rows, cols); ++k) {
    // pivot with the fewest terms keeps intermediate products small
    Eigen::Index pi = -1, pj = -1;
    for (Eigen::Index i = k; i < rows; ++i) {
      for (Eigen::Index j = k; j < cols; ++j) {
        if (a(i, j).is_zero()) continue;
        if (pi < 0 || a(i, j).terms().size() < a(pi, pj).terms().size()) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    if (pi != k) a.row(pi).swap(a.row(k));
    if (pj != k) a.col(pj).swap(a.col(k));
    for (Eigen::Index i = k + 1; i < rows; ++i) {
      for (Eigen::Index j = k + 1; j < cols; ++j) {
        Coefficient val = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        a(i, j) = have_prev ? divide_exact(val, prev) : val;
      }
      a(i, k) = Coefficient(a(i, k).torsion_order(), a(i, k).free_params());
    }
    prev = a(k, k);
    have_prev = true;
    ++rank;
  }
  return rank;
}

SparseEchelon::Row SparseEchelon::reduce(Row row) const {
  for (std::size_t p = 0; p < pivots_.size(); ++p) {
    auto it = row.find(pivot_columns_[p]);
    if (it == row.end() || it->second.is_zero()) continue;
    // cross-multiplied elimination; stays in the coefficient ring
    const Coefficient lead = it->second;
    const Coefficient& pivot_lead = pivots_[p].at(pivot_columns_[p]);
    Row next;
    for (auto& [col, c] : row) next[col] = c * pivot_lead;
    for (const auto& [col, c] : pivots_[p]) {
      auto jt = next.find(col);
      Coefficient updated = (jt == next.end() ? Coefficient() : jt->second) - lead * c;
      if (updated.is_zero()) {
        if (jt != next.end()) next.erase(jt);
      } else {
        next[col] = updated;
      }
    }
    row = std::move(next);
  }
  // normalize by the unit content of the leading coefficient when possible
  if (!row.empty()) {
    const Coefficient& lead = row.begin()->second;
    if (lead.is_unit()) {
      Coefficient inv = lead.unit_inverse();
      for (auto& [col, c] : row) c = c * inv;
    }
  }
  return row;
}

bool SparseEchelon::add_row(Row row) {
  Row residual = reduce(std::move(row));
  long col = -1;
  for (const auto& [c, v] : residual) {
    if (c >= 0 && !v.is_zero()) {
      col = c;
      break;
    }
  }
  if (col < 0) return false;
  // installation order: pivot p is zero at every earlier pivot column, so one
  // sequential reduction pass is complete
  pivots_.push_back(std::move(residual));
  pivot_columns_.push_back(col);
  return true;
}

}  // namespace qtorus
