#include <doctest.h>

#include <vector>

#include "qtorus/modules.hpp"
#include "test_util.hpp"

using namespace qtorus;
using qtorus::testing::make_rng;
using qtorus::testing::rand_int;

namespace {

GammaElement gamma_free(long n, std::vector<long> free) {
  IntVector f(static_cast<int>(free.size()));
  for (int i = 0; i < f.size(); ++i) f(i) = free[static_cast<std::size_t>(i)];
  return GammaElement(n, Int(0), f);
}

SpecPtr quantum_plane() {
  auto spec = std::make_shared<AlgebraSpec>(2, 1, 1);
  spec->set_q(0, 1, gamma_free(1, {1}));
  return spec;
}

SpecPtr cyclotomic_plane() {
  auto spec = std::make_shared<AlgebraSpec>(2, 3, 0);
  spec->set_q(0, 1, GammaElement(3, Int(1), IntVector::Zero(0)));
  return spec;
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

Coefficient one_coeff(const SpecPtr& spec) {
  return Coefficient::one(spec->torsion_order(), spec->free_params());
}

/// Standard weight module: C the first axis, E the second, trivial character.
CFiniteModule weight_module(const SpecPtr& spec) {
  return induce_cyclic(spec, Sublattice(2, mat({{1, 0}})), Sublattice(2, mat({{0, 1}})),
                       {one_coeff(spec)});
}

TorusElement random_element(std::mt19937_64& rng, const SpecPtr& spec, int max_terms, long mag) {
  TorusElement e(spec);
  int terms = static_cast<int>(rand_int(rng, 1, max_terms));
  for (int i = 0; i < terms; ++i) {
    IntVector a(spec->rank());
    for (int j = 0; j < spec->rank(); ++j) a(j) = rand_int(rng, -mag, mag);
    Coefficient c(spec->torsion_order(), spec->free_params(),
                  std::vector<Int>(static_cast<std::size_t>(spec->free_params()),
                                   Int(rand_int(rng, -1, 1))),
                  CyclotomicNumber::zeta_power(spec->torsion_order(),
                                               rand_int(rng, 0, spec->torsion_order() - 1)) *
                      CyclotomicNumber(spec->torsion_order(),
                                       make_rational(rand_int(rng, -2, 2), 1)));
    if (!c.is_zero()) e.add_term(a, c);
  }
  return e;
}

ModuleVector random_vector(std::mt19937_64& rng, const CFiniteModule& m, long mag) {
  ModuleVector v = m.zero_vector();
  for (int i = 0; i < m.d(); ++i) {
    IntVector a = IntVector::Zero(m.rspec()->rank());
    for (int j = 0; j < m.r(); ++j) a(j) = rand_int(rng, -mag, mag);
    if (rand_int(rng, 0, 2) > 0) {
      v[static_cast<std::size_t>(i)] = TorusElement::monomial(m.rspec(), a);
    }
  }
  if (m.d() > 0 && v[0].is_zero()) v[0] = TorusElement::one(m.rspec());
  return v;
}

using ElemMatrix = CFiniteModule::ElemMatrix;

ElemMatrix matmul(const SpecPtr& spec, const ElemMatrix& a, const ElemMatrix& b) {
  const std::size_t d = a.size();
  ElemMatrix out(d, std::vector<TorusElement>(d, TorusElement::zero(spec)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) out[i][j] = out[i][j] + a[i][k] * b[k][j];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("truncation window") {
  CHECK(TruncationWindow{2, 1, 1}.dimension() == 5);
  CHECK(TruncationWindow{3, 2, 2}.dimension() == 98);
  CHECK(TruncationWindow{0, 0, 4}.dimension() == 4);
}

TEST_CASE("standard weight module") {
  auto spec = quantum_plane();
  CFiniteModule m = weight_module(spec);
  CHECK(m.d() == 1);
  CHECK(m.r() == 1);
  CHECK(check_consistency(m).pass);

  SUBCASE("representation property on random pairs") {
    auto rng = make_rng(50);
    for (int trial = 0; trial < 60; ++trial) {
      TorusElement a = random_element(rng, m.rspec(), 2, 2);
      TorusElement b = random_element(rng, m.rspec(), 2, 2);
      ModuleVector v = random_vector(rng, m, 2);
      ModuleVector lhs = m.act(a, m.act(b, v));
      ModuleVector rhs = m.act(a * b, v);
      for (int i = 0; i < m.d(); ++i) CHECK(lhs[static_cast<std::size_t>(i)] == rhs[static_cast<std::size_t>(i)]);
    }
  }
  SUBCASE("semilinear twist on the coefficient") {
    // u_2 (x_1 m) = tau_2(x_1) u_2 m = q^{g_21} x_1 m
    IntVector e1(2), e2(2);
    e1 << 1, 0;
    e2 << 0, 1;
    ModuleVector v = m.zero_vector();
    v[0] = TorusElement::monomial(m.rspec(), e1);
    ModuleVector out = m.act(TorusElement::monomial(m.rspec(), e2), v);
    CHECK(out[0] == TorusElement::monomial(m.rspec(), e1,
                                           embed_unit(m.rspec()->g(1, 0))));
  }
}

TEST_CASE("induce_cyclic") {
  SUBCASE("all-zero spec gives commuting actions") {
    auto spec = std::make_shared<AlgebraSpec>(3, 1, 1);
    CFiniteModule m = induce_cyclic(spec, Sublattice(3, mat({{1, 0, 0}})),
                                    Sublattice(3, mat({{0, 1, 0}, {0, 0, 1}})),
                                    {one_coeff(spec), one_coeff(spec)});
    CHECK(m.d() == 1);
    CHECK(check_consistency(m).pass);
    CHECK(m.action(1)[0][0] * m.action(2)[0][0] == m.action(2)[0][0] * m.action(1)[0][0]);
  }
  SUBCASE("index-3 clock-shift block module") {
    auto spec = cyclotomic_plane();
    CFiniteModule m = induce_cyclic(spec, Sublattice(2, mat({{1, 0}})),
                                    Sublattice(2, mat({{0, 3}})), {one_coeff(spec)});
    CHECK(m.d() == 3);
    CHECK(check_consistency(m).pass);
    auto rng = make_rng(51);
    for (int trial = 0; trial < 25; ++trial) {
      TorusElement a = random_element(rng, m.rspec(), 2, 2);
      TorusElement b = random_element(rng, m.rspec(), 2, 2);
      ModuleVector v = random_vector(rng, m, 2);
      ModuleVector lhs = m.act(a, m.act(b, v));
      ModuleVector rhs = m.act(a * b, v);
      for (int i = 0; i < m.d(); ++i) CHECK(lhs[static_cast<std::size_t>(i)] == rhs[static_cast<std::size_t>(i)]);
    }
  }
  SUBCASE("solver complement induces a consistent module") {
    auto spec = std::make_shared<AlgebraSpec>(3, 1, 1);
    spec->set_q(0, 1, gamma_free(1, {2}));
    spec->set_q(0, 2, gamma_free(1, {1}));
    spec->set_q(1, 2, gamma_free(1, {1}));
    Sublattice c(3, mat({{1, 0, 0}}));
    auto sol = complement_solver(*spec, c, 10);
    REQUIRE(sol.has_value());
    CFiniteModule m = induce_cyclic(spec, c, sol->e, {one_coeff(spec), one_coeff(spec)});
    CHECK(m.d() == 1);
    CHECK(check_consistency(m).pass);
  }
  SUBCASE("non-complements rejected") {
    auto spec = quantum_plane();
    Sublattice c(2, mat({{1, 0}}));
    CHECK_THROWS_AS(induce_cyclic(spec, c, c, {one_coeff(spec)}), std::invalid_argument);
  }
}

TEST_CASE("check_consistency negative control") {
  auto spec = std::make_shared<AlgebraSpec>(3, 1, 1);
  spec->set_q(0, 1, gamma_free(1, {2}));
  spec->set_q(0, 2, gamma_free(1, {1}));
  spec->set_q(1, 2, gamma_free(1, {1}));
  Sublattice c(3, mat({{1, 0, 0}}));
  auto sol = complement_solver(*spec, c, 10);
  REQUIRE(sol.has_value());
  CFiniteModule good = induce_cyclic(spec, c, sol->e, {one_coeff(spec), one_coeff(spec)});
  REQUIRE(check_consistency(good).pass);
  // scale one action entry by the C-monomial x_1: the pair equation twists
  // differently on the two sides
  IntVector e1 = IntVector::Zero(3);
  e1(0) = 1;
  ElemMatrix perturbed = good.action(1);
  perturbed[0][0] = perturbed[0][0] * TorusElement::monomial(good.rspec(), e1);
  CFiniteModule bad(good.spec(), good.split(), good.r(), good.d(),
                    {perturbed, good.action(2)});
  auto rep = check_consistency(bad);
  CHECK(!rep.pass);
  REQUIRE(rep.failing_pairs.size() == 1);
  CHECK(rep.failing_pairs[0] == std::make_pair(1, 2));
}

TEST_CASE("exterior_top") {
  SUBCASE("d = 1 reduces to consistency") {
    CFiniteModule m = weight_module(quantum_plane());
    auto rep = exterior_top(m);
    CHECK(rep.pass);
  }
  SUBCASE("clock-shift determinant") {
    CFiniteModule m = induce_cyclic(cyclotomic_plane(), Sublattice(2, mat({{1, 0}})),
                                    Sublattice(2, mat({{0, 3}})), {one_coeff(cyclotomic_plane())});
    TorusElement det = commutative_determinant(m.rspec(), m.action(1));
    CHECK(det.is_unit());
    CHECK(exterior_top(m).pass);
  }
  SUBCASE("conjugated d = 2 module keeps the identity with exponent 2") {
    auto spec = std::make_shared<AlgebraSpec>(3, 1, 1);
    spec->set_q(0, 1, gamma_free(1, {2}));
    spec->set_q(0, 2, gamma_free(1, {1}));
    spec->set_q(1, 2, gamma_free(1, {1}));
    Sublattice c(3, mat({{1, 0, 0}}));
    auto sol = complement_solver(*spec, c, 10);
    REQUIRE(sol.has_value());
    Coefficient t(1, 1, {Int(1)}, CyclotomicNumber(1, Rational(1)));
    CFiniteModule m1 = induce_cyclic(spec, c, sol->e, {one_coeff(spec), one_coeff(spec)});
    CFiniteModule m2 = induce_cyclic(spec, c, sol->e, {t, one_coeff(spec)});
    CFiniteModule sum = direct_sum(m1, m2);
    REQUIRE(check_consistency(sum).pass);
    CHECK(exterior_top(sum).pass);
    // base change by P = [[1, x_1], [0, 1]]
    const SpecPtr& rs = sum.rspec();
    IntVector e1 = IntVector::Zero(3);
    e1(0) = 1;
    TorusElement x1 = TorusElement::monomial(rs, e1);
    ElemMatrix p = {{TorusElement::one(rs), x1}, {TorusElement::zero(rs), TorusElement::one(rs)}};
    std::vector<ElemMatrix> conj;
    for (int j = sum.r(); j < 3; ++j) {
      ElemMatrix pinv_tw = {{TorusElement::one(rs), -sum.twist(j, x1)},
                           {TorusElement::zero(rs), TorusElement::one(rs)}};
      conj.push_back(matmul(rs, matmul(rs, p, sum.action(j)), pinv_tw));
    }
    CFiniteModule changed(sum.spec(), sum.split(), sum.r(), sum.d(), std::move(conj));
    CHECK(check_consistency(changed).pass);
    CHECK(exterior_top(changed).pass);
  }
}

TEST_CASE("gk_growth_estimate") {
  SUBCASE("weight module grows linearly") {
    CFiniteModule m = weight_module(quantum_plane());
    auto est = gk_growth_estimate(m, m.generator(0), 4);
    CHECK(est.stable);
    CHECK(est.degree == 1);
    CHECK(est.dims == std::vector<Int>{1, 3, 5, 7, 9});
    CHECK(est.degree == m.r());
  }
  SUBCASE("rank-two base grows quadratically") {
    auto spec = std::make_shared<AlgebraSpec>(3, 1, 1);
    spec->set_q(0, 2, gamma_free(1, {1}));
    spec->set_q(1, 2, gamma_free(1, {2}));
    CFiniteModule m = induce_cyclic(spec, Sublattice(3, mat({{1, 0, 0}, {0, 1, 0}})),
                                    Sublattice(3, mat({{0, 0, 1}})), {one_coeff(spec)});
    auto est = gk_growth_estimate(m, m.generator(0), 4);
    CHECK(est.stable);
    CHECK(est.degree == 2);
    CHECK(est.dims == std::vector<Int>{1, 9, 25, 49, 81});
  }
  SUBCASE("finite-dimensional module has degree zero") {
    auto spec = std::make_shared<AlgebraSpec>(1, 1, 1);
    CFiniteModule m = induce_cyclic(spec, Sublattice::zero(1), Sublattice(1, mat({{1}})),
                                    {one_coeff(spec)});
    auto est = gk_growth_estimate(m, m.generator(0), 3);
    CHECK(est.stable);
    CHECK(est.degree == 0);
    CHECK(est.dims == std::vector<Int>{1, 1, 1, 1});
  }
}

TEST_CASE("torsion_search") {
  CFiniteModule m = weight_module(quantum_plane());
  SUBCASE("free generators are torsion-free over C") {
    for (long bound = 1; bound <= 3; ++bound) {
      CHECK(!torsion_search(m, Sublattice(2, mat({{1, 0}})), m.generator(0), bound).has_value());
    }
  }
  SUBCASE("the generator is an eigenvector for the transversal direction") {
    auto gamma = torsion_search(m, Sublattice(2, mat({{0, 1}})), m.generator(0), 1);
    REQUIRE(gamma.has_value());
    CHECK(!gamma->is_zero());
    // annihilator is a unit multiple of x_2 - 1
    IntVector e2 = IntVector::Zero(2);
    e2(1) = 1;
    ModuleVector out = m.act(*gamma, m.generator(0));
    CHECK(out[0].is_zero());
    CHECK(gamma->support().size() == 2);
  }
  SUBCASE("zero vector rejected") {
    CHECK_THROWS_AS(torsion_search(m, Sublattice(2, mat({{1, 0}})), m.zero_vector(), 1),
                    std::invalid_argument);
  }
}

TEST_CASE("dimension_probe") {
  SUBCASE("weight module probes to one") {
    CFiniteModule m = weight_module(quantum_plane());
    CHECK(dimension_probe(m, 2, default_dimension_candidates(m, 2)) == 1);
  }
  SUBCASE("finite-dimensional module probes to zero") {
    auto spec = std::make_shared<AlgebraSpec>(1, 1, 1);
    CFiniteModule m = induce_cyclic(spec, Sublattice::zero(1), Sublattice(1, mat({{1}})),
                                    {one_coeff(spec)});
    CHECK(dimension_probe(m, 2, default_dimension_candidates(m, 2)) == 0);
  }
  SUBCASE("direct sum takes the maximum") {
    auto spec = quantum_plane();
    CFiniteModule m1 = weight_module(spec);
    Coefficient t(1, 1, {Int(1)}, CyclotomicNumber(1, Rational(1)));
    CFiniteModule m2 = induce_cyclic(spec, Sublattice(2, mat({{1, 0}})),
                                     Sublattice(2, mat({{0, 1}})), {t});
    CFiniteModule sum = direct_sum(m1, m2);
    int p1 = dimension_probe(m1, 2, default_dimension_candidates(m1, 2));
    int p2 = dimension_probe(m2, 2, default_dimension_candidates(m2, 2));
    CHECK(dimension_probe(sum, 2, default_dimension_candidates(sum, 2)) == std::max(p1, p2));
  }
}

TEST_CASE("direct_sum") {
  auto spec = quantum_plane();
  CFiniteModule m = weight_module(spec);
  CFiniteModule sum = direct_sum(m, m);
  CHECK(sum.d() == 2);
  CHECK(check_consistency(sum).pass);
  auto est = gk_growth_estimate(sum, sum.generator(0), 3);
  CHECK(est.degree == 1);
  SUBCASE("mismatched splits rejected") {
    auto other = std::make_shared<AlgebraSpec>(2, 1, 1);
    other->set_q(0, 1, gamma_free(1, {2}));
    CHECK_THROWS_AS(direct_sum(m, weight_module(other)), std::invalid_argument);
  }
}

TEST_CASE("cyclicity_probe") {
  SUBCASE("free generator attains the window") {
    CFiniteModule m = weight_module(quantum_plane());
    auto rep = cyclicity_probe(m, m.generator(0), 3);
    CHECK(rep.interior_saturated);
    CHECK(rep.center_trivial);
    CHECK(rep.interior_radius == 3);
    CHECK(rep.interior_dim == 7);
  }
  SUBCASE("generic v = 1 + x_1 saturates the interior window") {
    CFiniteModule m = weight_module(quantum_plane());
    IntVector e1 = IntVector::Zero(2);
    e1(0) = 1;
    ModuleVector v = m.zero_vector();
    v[0] = TorusElement::one(m.rspec()) + TorusElement::monomial(m.rspec(), e1);
    for (long k : {3L, 4L}) {
      auto rep = cyclicity_probe(m, v, k);
      CHECK(rep.interior_saturated);
      CHECK(rep.center_trivial);
    }
  }
  SUBCASE("cyclotomic negative control") {
    CFiniteModule m = weight_module(cyclotomic_plane());
    IntVector c3 = IntVector::Zero(2);
    c3(0) = 3;
    ModuleVector v = m.zero_vector();
    v[0] = TorusElement::one(m.rspec()) + TorusElement::monomial(m.rspec(), c3);
    auto rep = cyclicity_probe(m, v, 3);
    CHECK(!rep.interior_saturated);
    CHECK(!rep.center_trivial);
    CHECK(rep.ratio < Rational(1));
  }
}
