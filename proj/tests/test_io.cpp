#include <doctest.h>

#include <vector>

#include "qtorus/io.hpp"
#include "test_util.hpp"

using namespace qtorus;
using qtorus::testing::make_rng;
using qtorus::testing::rand_int;

namespace {

IntVector vec(std::initializer_list<long> vals) {
  IntVector v(static_cast<int>(vals.size()));
  int i = 0;
  for (long x : vals) v(i++) = x;
  return v;
}

AlgebraSpec random_spec(std::mt19937_64& rng) {
  const long orders[] = {1, 2, 3, 4};
  int n = rand_int(rng, 1, 4);
  long tors = orders[rand_int(rng, 0, 3)];
  int m = rand_int(rng, 0, 2);
  AlgebraSpec spec(n, tors, m);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      IntVector free(m);
      for (int k = 0; k < m; ++k) free(k) = rand_int(rng, -3, 3);
      spec.set_q(i, j, GammaElement(tors, Int(rand_int(rng, 0, tors - 1)), free));
    }
  }
  return spec;
}

Coefficient random_coeff(std::mt19937_64& rng, long tors, int m) {
  Coefficient c(tors, m);
  int terms = rand_int(rng, 1, 3);
  for (int t = 0; t < terms; ++t) {
    std::vector<Int> expo(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) expo[static_cast<std::size_t>(k)] = rand_int(rng, -3, 3);
    std::vector<Rational> poly;
    for (int k = 0; k < rand_int(rng, 1, 3); ++k) {
      poly.push_back(make_rational(rand_int(rng, -5, 5), rand_int(rng, 1, 4)));
    }
    c = c + Coefficient(tors, m, expo, CyclotomicNumber(tors, poly));
  }
  return c;
}

TorusElement random_element(std::mt19937_64& rng, const SpecPtr& spec) {
  TorusElement out(spec);
  int terms = rand_int(rng, 0, 4);
  for (int t = 0; t < terms; ++t) {
    IntVector e(spec->rank());
    for (int k = 0; k < spec->rank(); ++k) e(k) = rand_int(rng, -3, 3);
    out.add_term(e, random_coeff(rng, spec->torsion_order(), spec->free_params()));
  }
  return out;
}

SpecPtr quantum_plane() {
  AlgebraSpec spec(2, 1, 1);
  spec.set_q(0, 1, GammaElement(1, Int(0), vec({1})));
  return std::make_shared<const AlgebraSpec>(spec);
}

CFiniteModule weight_module(const SpecPtr& spec) {
  IntMatrix c(1, 2);
  c << 1, 0;
  IntMatrix e(1, 2);
  e << 0, 1;
  return induce_cyclic(spec, Sublattice(2, c), Sublattice(2, e),
                       {Coefficient::one(spec->torsion_order(), spec->free_params())});
}

}  // namespace

TEST_CASE("round-trips are the identity on all schemas") {
  auto rng = make_rng(70);
  SUBCASE("spec") {
    for (int trial = 0; trial < 40; ++trial) {
      AlgebraSpec spec = random_spec(rng);
      std::string text = serialize_spec(spec);
      AlgebraSpec back = parse_spec(text);
      CHECK(back == spec);
      CHECK(serialize_spec(back) == text);
    }
  }
  SUBCASE("element") {
    for (int trial = 0; trial < 40; ++trial) {
      auto spec = std::make_shared<const AlgebraSpec>(random_spec(rng));
      TorusElement alpha = random_element(rng, spec);
      std::string text = serialize_element(alpha);
      TorusElement back = parse_element(text, spec);
      CHECK(back == alpha);
      CHECK(serialize_element(back) == text);
    }
  }
  SUBCASE("sublattice") {
    for (int trial = 0; trial < 40; ++trial) {
      int n = rand_int(rng, 1, 4);
      IntMatrix gens(rand_int(rng, 0, 3), n);
      for (int i = 0; i < gens.rows(); ++i) {
        for (int j = 0; j < n; ++j) gens(i, j) = rand_int(rng, -4, 4);
      }
      Sublattice l(n, gens);
      std::string text = serialize_sublattice(l);
      Sublattice back = parse_sublattice(text);
      CHECK(back == l);
      CHECK(serialize_sublattice(back) == text);
    }
  }
  SUBCASE("module") {
    SpecPtr spec = quantum_plane();
    CFiniteModule m = weight_module(spec);
    std::string text = serialize_module(m);
    CFiniteModule back = parse_module(text, spec);
    CHECK(module_to_json(back) == module_to_json(m));
    CHECK(serialize_module(back) == text);
    TorusElement x1 = TorusElement::monomial(spec, vec({1, 0}));
    CHECK(back.act(x1, back.generator(0)) == m.act(x1, m.generator(0)));
  }
  SUBCASE("class-2 datum and character") {
    Class2Datum d(3, 2);
    d.set_comm(0, 1, vec({1, 0}));
    d.set_comm(1, 2, vec({-2, 3}));
    std::string text = serialize_datum(d);
    Class2Datum back = parse_datum(text);
    CHECK(serialize_datum(back) == text);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(back.comm(i, j) == d.comm(i, j));
    }
    CentralCharacter chi;
    chi.torsion_order = 4;
    chi.free_params = 1;
    chi.images = {GammaElement(4, Int(3), vec({2})), GammaElement(4, Int(0), vec({-1}))};
    std::string ctext = serialize_character(chi);
    CentralCharacter cback = parse_character(ctext);
    CHECK(serialize_character(cback) == ctext);
    REQUIRE(cback.images.size() == 2);
    CHECK(cback.images[0] == chi.images[0]);
    CHECK(cback.images[1] == chi.images[1]);
  }
  SUBCASE("group words") {
    std::vector<GroupWord> words = {{vec({1, 0, 2}), vec({0})}, {vec({0, -1, 1}), vec({3})}};
    Json j = group_words_to_json(words);
    auto back = group_words_from_json(j, 3, 1);
    REQUIRE(back.size() == 2);
    CHECK(back[0].first == words[0].first);
    CHECK(back[1].second == words[1].second);
    CHECK(group_words_to_json(back) == j);
  }
}

TEST_CASE("Heisenberg reduction reproduces the quantum plane byte-for-byte") {
  Class2Datum h(2, 1);
  h.set_comm(0, 1, vec({1}));
  CentralCharacter chi;
  chi.torsion_order = 1;
  chi.free_params = 1;
  chi.images = {GammaElement(1, Int(0), vec({1}))};
  CHECK(serialize_spec(reduce(h, chi)) == serialize_spec(*quantum_plane()));
}

TEST_CASE("parse errors name the offending field") {
  CHECK_THROWS_AS(parse_spec("{\"rank\": 2}"), ParseError);
  CHECK_THROWS_WITH_AS(parse_spec("{\"free_params\": 0, \"q\": [], \"rank\": 2}"),
                       doctest::Contains("torsion_order"), ParseError);
  CHECK_THROWS_AS(parse_spec("not json"), ParseError);
  // q entry with j <= i
  CHECK_THROWS_AS(
      parse_spec("{\"free_params\": 0, \"q\": [{\"free\": [], \"i\": 2, \"j\": 1, \"tors\": 0}],"
                 " \"rank\": 2, \"torsion_order\": 1}"),
      ParseError);
  CHECK_THROWS_AS(parse_sublattice("{\"ambient_rank\": 2, \"basis\": [[1]]}"), ParseError);
  SpecPtr spec = quantum_plane();
  CHECK_THROWS_AS(parse_element("{\"terms\": [{\"exponent\": [1], \"coeff\": []}]}", spec),
                  ParseError);
  CHECK_THROWS_AS(parse_datum("{\"comm\": [], \"n\": 0, \"z\": 1}"), ParseError);
}
