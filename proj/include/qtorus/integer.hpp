#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <string>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 12,
    AddCost = 300,
    MulCost = 200
  };
};

}  // namespace Eigen

namespace qtorus {

using Int = mpz_class;
using Rational = mpq_class;

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RowVector = Eigen::Matrix<Int, 1, Eigen::Dynamic>;

inline Rational make_rational(const Int& num, const Int& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p" into a canonical rational.
Rational parse_rational(const std::string& s);

std::string rational_to_string(const Rational& r);

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_reduce(const Int& a, const Int& n) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline IntVector to_vector(const std::vector<long>& v) {
  IntVector out(static_cast<Eigen::Index>(v.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = v[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace qtorus
