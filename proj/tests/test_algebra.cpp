#include <doctest.h>

#include <vector>

#include "qtorus/algebra.hpp"
#include "test_util.hpp"

using namespace qtorus;
using qtorus::testing::make_rng;
using qtorus::testing::rand_int;
using qtorus::testing::random_matrix;

namespace {

GammaElement gamma_free(long n, int m, std::vector<long> free) {
  IntVector f(static_cast<int>(free.size()));
  for (int i = 0; i < f.size(); ++i) f(i) = free[static_cast<std::size_t>(i)];
  return GammaElement(n, Int(0), f);
}

GammaElement gamma_tors(long n, int m, long tors) {
  return GammaElement(n, Int(tors), IntVector::Zero(m));
}

/// n = 2, N = 1, m = 1, q_12 = t: the generic quantum plane.
SpecPtr quantum_plane() {
  auto spec = std::make_shared<AlgebraSpec>(2, 1, 1);
  spec->set_q(0, 1, gamma_free(1, 1, {1}));
  return spec;
}

SpecPtr random_spec(std::mt19937_64& rng, int n, long torsion, int m) {
  auto spec = std::make_shared<AlgebraSpec>(n, torsion, m);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      IntVector f(m);
      for (int k = 0; k < m; ++k) f(k) = rand_int(rng, -2, 2);
      spec->set_q(i, j, GammaElement(torsion, Int(rand_int(rng, 0, torsion - 1)), f));
    }
  }
  return spec;
}

IntVector random_vec(std::mt19937_64& rng, int n, long lo = -3, long hi = 3) {
  IntVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rand_int(rng, lo, hi);
  return v;
}

TorusElement random_element(std::mt19937_64& rng, const SpecPtr& spec, int max_terms) {
  TorusElement e(spec);
  int terms = static_cast<int>(rand_int(rng, 1, max_terms));
  for (int i = 0; i < terms; ++i) {
    Coefficient c(spec->torsion_order(), spec->free_params());
    c = c + Coefficient(spec->torsion_order(), spec->free_params(),
                        std::vector<Int>(static_cast<std::size_t>(spec->free_params()),
                                         Int(rand_int(rng, -1, 1))),
                        CyclotomicNumber::zeta_power(spec->torsion_order(),
                                                     rand_int(rng, 0, spec->torsion_order() - 1)) *
                            CyclotomicNumber(spec->torsion_order(),
                                             make_rational(rand_int(rng, -3, 3), 1)));
    if (c.is_zero()) continue;
    e.add_term(random_vec(rng, spec->rank()), c);
  }
  return e;
}

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  IntMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("commutator bicharacter") {
  auto spec = quantum_plane();
  SUBCASE("alternating") {
    auto rng = make_rng(20);
    for (int i = 0; i < 50; ++i) {
      IntVector a = random_vec(rng, 2);
      CHECK(beta_form(*spec, a, a).is_zero());
    }
  }
  SUBCASE("generator pair") {
    IntVector e1 = mat({{1, 0}}).row(0).transpose();
    IntVector e2 = mat({{0, 1}}).row(0).transpose();
    CHECK(beta_form(*spec, e1, e2) == gamma_free(1, 1, {1}));
  }
  SUBCASE("biadditive on random triples") {
    auto rng = make_rng(21);
    auto s = random_spec(rng, 3, 4, 1);
    for (int i = 0; i < 200; ++i) {
      IntVector a = random_vec(rng, 3), b = random_vec(rng, 3), c = random_vec(rng, 3);
      CHECK(beta_form(*s, a, b + c) == beta_form(*s, a, b) + beta_form(*s, a, c));
      CHECK(beta_form(*s, a, b) == -beta_form(*s, b, a));
    }
  }
}

TEST_CASE("normal-ordering cocycle") {
  SUBCASE("lambda(a, 0) = 0") {
    auto rng = make_rng(22);
    auto s = random_spec(rng, 3, 3, 1);
    for (int i = 0; i < 20; ++i) {
      CHECK(cocycle(*s, random_vec(rng, 3), IntVector::Zero(3)).is_zero());
    }
  }
  SUBCASE("cocycle identity on 500 random triples") {
    auto rng = make_rng(23);
    auto s = random_spec(rng, 4, 6, 2);
    for (int i = 0; i < 500; ++i) {
      IntVector a = random_vec(rng, 4), b = random_vec(rng, 4), c = random_vec(rng, 4);
      CHECK(cocycle(*s, a, b) + cocycle(*s, a + b, c) == cocycle(*s, b, c) + cocycle(*s, a, b + c));
      CHECK(cocycle(*s, a, b) - cocycle(*s, b, a) == beta_form(*s, a, b));
    }
  }
  SUBCASE("lambda(e2, e1) = -g_12") {
    auto spec = quantum_plane();
    IntVector e1 = mat({{1, 0}}).row(0).transpose();
    IntVector e2 = mat({{0, 1}}).row(0).transpose();
    CHECK(cocycle(*spec, e2, e1) == gamma_free(1, 1, {-1}));
  }
}

TEST_CASE("element multiplication") {
  auto spec = quantum_plane();
  SUBCASE("multiplicative identity") {
    auto rng = make_rng(24);
    for (int i = 0; i < 20; ++i) {
      TorusElement a = random_element(rng, spec, 3);
      CHECK(a * TorusElement::one(spec) == a);
      CHECK(TorusElement::one(spec) * a == a);
    }
  }
  SUBCASE("worked quantum plane product") {
    IntVector a(2), b(2);
    a << 0, 1;
    b << 1, 0;
    TorusElement lhs = TorusElement::monomial(spec, a) * TorusElement::monomial(spec, b);
    IntVector ab(2);
    ab << 1, 1;
    Coefficient t_inv(1, 1, {Int(-1)}, CyclotomicNumber(1, Rational(1)));
    CHECK(lhs == TorusElement::monomial(spec, ab, t_inv));
  }
  SUBCASE("associativity on 300 random triples") {
    auto rng = make_rng(25);
    for (int trial = 0; trial < 300; ++trial) {
      int n = static_cast<int>(rand_int(rng, 1, 3));
      auto s = random_spec(rng, n, trial % 2 == 0 ? 1 : 3, trial % 3 == 0 ? 2 : 1);
      TorusElement a = random_element(rng, s, 3);
      TorusElement b = random_element(rng, s, 3);
      TorusElement c = random_element(rng, s, 3);
      CHECK((a * b) * c == a * (b * c));
    }
  }
  SUBCASE("mismatched specs rejected") {
    auto rng = make_rng(26);
    auto other = random_spec(rng, 2, 3, 1);
    CHECK_THROWS_AS(TorusElement::one(spec) * TorusElement::one(other), std::invalid_argument);
  }
}

TEST_CASE("defining relation in normal form") {
  auto rng = make_rng(27);
  for (int trial = 0; trial < 200; ++trial) {
    int n = static_cast<int>(rand_int(rng, 2, 4));
    auto s = random_spec(rng, n, trial % 2 == 0 ? 1 : 4, 1);
    IntVector a = random_vec(rng, n), b = random_vec(rng, n);
    TorusElement lhs = TorusElement::monomial(s, a) * TorusElement::monomial(s, b);
    TorusElement rhs =
        (TorusElement::monomial(s, b) * TorusElement::monomial(s, a)).scaled(embed_unit(beta_form(*s, a, b)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("commutator of units") {
  auto rng = make_rng(28);
  SUBCASE("equal arguments commute") {
    auto s = random_spec(rng, 3, 3, 1);
    IntVector a = random_vec(rng, 3);
    CHECK(commutator_units(*s, a, a).is_zero());
  }
  SUBCASE("cross-validation through element arithmetic") {
    for (int trial = 0; trial < 200; ++trial) {
      int n = static_cast<int>(rand_int(rng, 2, 3));
      auto s = random_spec(rng, n, trial % 2 == 0 ? 1 : 5, 1);
      IntVector a = random_vec(rng, n), b = random_vec(rng, n);
      TorusElement xa = TorusElement::monomial(s, a);
      TorusElement xb = TorusElement::monomial(s, b);
      TorusElement loop = xa * xb * xa.unit_inverse() * xb.unit_inverse();
      CHECK(loop == TorusElement::one(s).scaled(embed_unit(commutator_units(*s, a, b))));
    }
  }
  SUBCASE("biadditivity in the first slot") {
    auto s = random_spec(rng, 3, 4, 2);
    IntVector a = random_vec(rng, 3), a2 = random_vec(rng, 3), b = random_vec(rng, 3);
    CHECK(commutator_units(*s, a + a2, b) ==
          commutator_units(*s, a, b) + commutator_units(*s, a2, b));
  }
}

TEST_CASE("unit recognition and closure") {
  auto spec = quantum_plane();
  SUBCASE("scaled monomial is a unit") {
    IntVector a(2);
    a << 1, 2;
    CHECK(TorusElement::monomial(spec, a, Coefficient::from_rational(1, 1, make_rational(3, 2)))
              .is_unit());
  }
  SUBCASE("1 + x is not a unit") {
    IntVector e1(2);
    e1 << 1, 0;
    CHECK(!(TorusElement::one(spec) + TorusElement::monomial(spec, e1)).is_unit());
  }
  SUBCASE("zero is not a unit") { CHECK(!TorusElement::zero(spec).is_unit()); }
  SUBCASE("units are closed under product; commutators are central scalars") {
    auto rng = make_rng(29);
    for (int trial = 0; trial < 50; ++trial) {
      auto s = random_spec(rng, 3, 3, 1);
      TorusElement u = TorusElement::monomial(s, random_vec(rng, 3));
      TorusElement v = TorusElement::monomial(s, random_vec(rng, 3));
      CHECK((u * v).is_unit());
      TorusElement comm = u * v * u.unit_inverse() * v.unit_inverse();
      CHECK(comm.is_unit());
      CHECK(comm.support().begin()->first == std::vector<Int>(3, Int(0)));
    }
  }
}

TEST_CASE("commutative sublattices") {
  auto spec = quantum_plane();
  SUBCASE("rank one is always commutative") {
    auto rng = make_rng(30);
    for (int trial = 0; trial < 30; ++trial) {
      auto s = random_spec(rng, 3, 4, 1);
      Sublattice l(3, random_matrix(rng, 1, 3, -3, 3));
      CHECK(is_commutative_sublattice(*s, l));
    }
  }
  SUBCASE("full lattice of the quantum plane is not") {
    CHECK(!is_commutative_sublattice(*spec, Sublattice::full(2)));
  }
  SUBCASE("constructed isotropic plane") {
    // choose g so that beta vanishes on span{(1,1,0),(1,0,1)}:
    // beta((1,1,0),(1,0,1)) = -g_12 + g_13 + g_23 = 0
    auto s = std::make_shared<AlgebraSpec>(3, 1, 1);
    s->set_q(0, 1, gamma_free(1, 1, {2}));
    s->set_q(0, 2, gamma_free(1, 1, {1}));
    s->set_q(1, 2, gamma_free(1, 1, {1}));
    CHECK(is_commutative_sublattice(*s, Sublattice(3, mat({{1, 1, 0}, {1, 0, 1}}))));
  }
}

TEST_CASE("center lattice") {
  SUBCASE("generic quantum plane has trivial center") {
    auto spec = quantum_plane();
    CHECK(center_lattice(*spec).rank() == 0);
    CHECK(has_trivial_center(*spec));
  }
  SUBCASE("N=3 root-of-unity plane has center 3Z + 3Z") {
    auto s = std::make_shared<AlgebraSpec>(2, 3, 0);
    s->set_q(0, 1, gamma_tors(3, 0, 1));
    Sublattice c = center_lattice(*s);
    CHECK(c == Sublattice(2, mat({{3, 0}, {0, 3}})));
    // closed loop: central monomials commute with the generators
    for (int i = 0; i < c.rank(); ++i) {
      TorusElement z = TorusElement::monomial(s, c.basis_row(i).transpose());
      for (int j = 0; j < 2; ++j) {
        IntVector ej = IntVector::Zero(2);
        ej(j) = 1;
        TorusElement xj = TorusElement::monomial(s, ej);
        CHECK(z * xj == xj * z);
      }
    }
    // brute-force membership over the box
    for (long a = -6; a <= 6; ++a) {
      for (long b = -6; b <= 6; ++b) {
        IntVector v(2);
        v << a, b;
        CHECK(c.contains(v) == (a % 3 == 0 && b % 3 == 0));
      }
    }
  }
  SUBCASE("decoupled generator lies in the center") {
    auto s = std::make_shared<AlgebraSpec>(3, 1, 1);
    s->set_q(0, 1, gamma_free(1, 1, {1}));
    Sublattice c = center_lattice(*s);
    IntVector e3(3);
    e3 << 0, 0, 1;
    CHECK(c.contains(e3));
  }
}

TEST_CASE("rebase") {
  auto spec = quantum_plane();
  SUBCASE("identity basis leaves the spec unchanged") {
    CHECK(rebase(*spec, IntMatrix::Identity(2, 2)) == *spec);
  }
  SUBCASE("swapping the basis negates g_12") {
    AlgebraSpec swapped = rebase(*spec, mat({{0, 1}, {1, 0}}));
    CHECK(swapped.g(0, 1) == gamma_free(1, 1, {-1}));
  }
  SUBCASE("non-unimodular basis rejected") {
    CHECK_THROWS_AS(rebase(*spec, mat({{2, 0}, {0, 1}})), std::invalid_argument);
  }
  SUBCASE("transport commutes with multiplication") {
    auto rng = make_rng(31);
    int done = 0;
    while (done < 200) {
      int n = static_cast<int>(rand_int(rng, 2, 3));
      auto s = random_spec(rng, n, done % 2 == 0 ? 1 : 3, 1);
      // random unimodular: product of elementary row operations
      IntMatrix u = IntMatrix::Identity(n, n);
      for (int k = 0; k < 4; ++k) {
        int i = static_cast<int>(rand_int(rng, 0, n - 1));
        int j = static_cast<int>(rand_int(rng, 0, n - 1));
        if (i == j) continue;
        u.row(i) += Int(rand_int(rng, -2, 2)) * u.row(j);
      }
      TorusElement a = random_element(rng, s, 3);
      TorusElement b = random_element(rng, s, 3);
      CHECK(rebase_element(a * b, u) == rebase_element(a, u) * rebase_element(b, u));
      ++done;
    }
  }
  SUBCASE("rebase preserves center triviality") {
    auto rng = make_rng(32);
    for (int trial = 0; trial < 30; ++trial) {
      int n = static_cast<int>(rand_int(rng, 2, 3));
      auto s = random_spec(rng, n, 1, 1);
      IntMatrix u = IntMatrix::Identity(n, n);
      for (int k = 0; k < 4; ++k) {
        int i = static_cast<int>(rand_int(rng, 0, n - 1));
        int j = static_cast<int>(rand_int(rng, 0, n - 1));
        if (i != j) u.row(i) += Int(rand_int(rng, -2, 2)) * u.row(j);
      }
      CHECK(has_trivial_center(*s) == has_trivial_center(rebase(*s, u)));
    }
  }
}

TEST_CASE("power cocycle spec") {
  SUBCASE("s = 1 is the identity") {
    auto rng = make_rng(33);
    auto s = random_spec(rng, 3, 4, 1);
    CHECK(power_cocycle_spec(*s, 1, 1) == *s);
  }
  SUBCASE("only the far block is raised") {
    auto s = std::make_shared<AlgebraSpec>(3, 1, 1);
    s->set_q(0, 1, gamma_free(1, 1, {3}));
    s->set_q(0, 2, gamma_free(1, 1, {-2}));
    s->set_q(1, 2, gamma_free(1, 1, {1}));
    AlgebraSpec p = power_cocycle_spec(*s, 1, 2);
    CHECK(p.g(0, 1) == s->g(0, 1));
    CHECK(p.g(0, 2) == s->g(0, 2));
    CHECK(p.g(1, 2) == gamma_free(1, 1, {2}));
  }
  SUBCASE("composition multiplies the exponents") {
    auto rng = make_rng(34);
    for (int trial = 0; trial < 20; ++trial) {
      auto s = random_spec(rng, 4, 3, 1);
      int r = static_cast<int>(rand_int(rng, 0, 4));
      Int a = rand_int(rng, 1, 4), b = rand_int(rng, 1, 4);
      CHECK(power_cocycle_spec(power_cocycle_spec(*s, r, a), r, b) ==
            power_cocycle_spec(*s, r, a * b));
    }
  }
}

TEST_CASE("sub spec") {
  auto spec = quantum_plane();
  SUBCASE("full lattice reproduces the spec") {
    CHECK(sub_spec(*spec, Sublattice::full(2)) == *spec);
  }
  SUBCASE("commutative sublattice gives the zero spec") {
    auto s = std::make_shared<AlgebraSpec>(3, 1, 1);
    s->set_q(0, 1, gamma_free(1, 1, {2}));
    s->set_q(0, 2, gamma_free(1, 1, {1}));
    s->set_q(1, 2, gamma_free(1, 1, {1}));
    CHECK(sub_spec(*s, Sublattice(3, mat({{1, 1, 0}, {1, 0, 1}}))).all_zero());
  }
  SUBCASE("span{(1,1),(0,2)} doubles the parameter") {
    AlgebraSpec sub = sub_spec(*spec, Sublattice(2, mat({{1, 1}, {0, 2}})));
    CHECK(sub.g(0, 1) == gamma_free(1, 1, {2}));
  }
}
