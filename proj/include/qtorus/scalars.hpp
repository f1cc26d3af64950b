#pragma once

#include <map>
#include <vector>

#include "qtorus/integer.hpp"

namespace qtorus {

/// Element of the value group Gamma = Z/N + Z^m, written additively.
/// Houses the logarithm of every multiparameter q_ij and commutator value.
class GammaElement {
 public:
  GammaElement() : n_(1), tors_(0), free_(0) {}
  GammaElement(long n, int m) : n_(n), tors_(0), free_(IntVector::Zero(m)) {}
  GammaElement(long n, const Int& tors, IntVector free);

  long torsion_order() const { return n_; }
  int free_params() const { return static_cast<int>(free_.size()); }
  const Int& tors() const { return tors_; }
  const IntVector& free() const { return free_; }

  bool is_zero() const;
  GammaElement operator+(const GammaElement& other) const;
  GammaElement operator-() const;
  GammaElement operator-(const GammaElement& other) const { return *this + (-other); }
  bool operator==(const GammaElement& other) const;
  bool operator!=(const GammaElement& other) const { return !(*this == other); }

 private:
  long n_;
  Int tors_;  // reduced into [0, n)
  IntVector free_;
};

GammaElement gamma_scale(const Int& k, const GammaElement& g);

/// Monic N-th cyclotomic polynomial over Q, low-degree first.
const std::vector<Rational>& cyclotomic_polynomial(long n);

/// Element of Q(zeta_N): rational polynomial in zeta reduced mod Phi_N.
class CyclotomicNumber {
 public:
  CyclotomicNumber() : n_(1), coeffs_(1, Rational(0)) {}
  explicit CyclotomicNumber(long n);  // zero of Q(zeta_n)
  CyclotomicNumber(long n, const Rational& value);
  /// Arbitrary polynomial in zeta; reduced mod Phi_N.
  CyclotomicNumber(long n, std::vector<Rational> coeffs);

  static CyclotomicNumber zeta_power(long n, const Int& k);

  long torsion_order() const { return n_; }
  /// Fixed length deg(Phi_N).
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  CyclotomicNumber operator+(const CyclotomicNumber& o) const;
  CyclotomicNumber operator-(const CyclotomicNumber& o) const;
  CyclotomicNumber operator-() const;
  CyclotomicNumber operator*(const CyclotomicNumber& o) const;
  CyclotomicNumber inverse() const;
  bool operator==(const CyclotomicNumber& o) const;
  bool operator!=(const CyclotomicNumber& o) const { return !(*this == o); }
  bool operator<(const CyclotomicNumber& o) const;  // arbitrary total order for maps

 private:
  long n_;
  std::vector<Rational> coeffs_;  // length deg(Phi_n)
};

/// Laurent polynomial over Q(zeta_N) in the free parameters t_1..t_m.
/// Canonical form: no stored zero terms, exponents lex-sorted by the map.
class Coefficient {
 public:
  using TermMap = std::map<std::vector<Int>, CyclotomicNumber>;

  Coefficient() : n_(1), m_(0) {}
  Coefficient(long n, int m) : n_(n), m_(m) {}
  /// Single term kappa * t^exponents.
  Coefficient(long n, int m, const std::vector<Int>& exponents, const CyclotomicNumber& kappa);

  static Coefficient one(long n, int m);
  static Coefficient from_rational(long n, int m, const Rational& r);

  long torsion_order() const { return n_; }
  int free_params() const { return m_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Single nonzero term, i.e. a unit of the Laurent ring.
  bool is_unit() const { return terms_.size() == 1; }

  Coefficient operator+(const Coefficient& o) const;
  Coefficient operator-(const Coefficient& o) const;
  Coefficient operator-() const;
  Coefficient operator*(const Coefficient& o) const;
  bool operator==(const Coefficient& o) const;
  bool operator!=(const Coefficient& o) const { return !(*this == o); }

  Coefficient unit_inverse() const;  // throws unless is_unit()

 private:
  void insert_term(const std::vector<Int>& expo, const CyclotomicNumber& kappa);
  friend Coefficient divide_exact(const Coefficient& num, const Coefficient& den);

  long n_;
  int m_;
  TermMap terms_;
};

/// Gamma -> units of the coefficient ring, g |-> zeta^tors * t^free.
Coefficient embed_unit(const GammaElement& g);

/// Exact division by a unit (single-term) coefficient.
Coefficient coeff_div_unit(const Coefficient& c, const Coefficient& u);

/// Exact division; throws if den does not divide num.
Coefficient divide_exact(const Coefficient& num, const Coefficient& den);

}  // namespace qtorus

namespace Eigen {
template <>
struct NumTraits<qtorus::Coefficient> : GenericNumTraits<qtorus::Coefficient> {
  typedef qtorus::Coefficient Real;
  typedef qtorus::Coefficient NonInteger;
  typedef qtorus::Coefficient Nested;
  static inline Real epsilon() { return {}; }
  static inline Real dummy_precision() { return {}; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 500,
    MulCost = 1000
  };
};
}  // namespace Eigen

namespace qtorus {

using CoeffMatrix = Eigen::Matrix<Coefficient, Eigen::Dynamic, Eigen::Dynamic>;

/// Rank over the fraction field of the coefficient ring, by fraction-free
/// Bareiss elimination. No rational-function objects are materialized.
int fraction_free_rank(const CoeffMatrix& m);

/// Incremental fraction-free row reduction over sparse coefficient rows with
/// integer-indexed columns. Supports rank queries and combination tracking.
class SparseEchelon {
 public:
  using Row = std::map<long, Coefficient>;

  /// Reduces `row` against the pivots; if nonzero remains, installs it as a
  /// new pivot and returns true.
  bool add_row(Row row);
  int rank() const { return static_cast<int>(pivots_.size()); }
  const std::vector<Row>& pivot_rows() const { return pivots_; }

  /// Residual of `row` after reduction, without installing it.
  Row reduce(Row row) const;

 private:
  std::vector<Row> pivots_;          // each with a leading (smallest) column
  std::vector<long> pivot_columns_;  // parallel to pivots_
};

}  // namespace qtorus
