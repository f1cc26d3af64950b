#include "qtorus/io.hpp"

#include <utility>

namespace qtorus {

namespace {

const Json& field(const Json& j, const std::string& name) {
  if (!j.is_object()) throw ParseError("expected object carrying \"" + name + "\"");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError("missing field \"" + name + "\"");
  return *it;
}

long long_field(const Json& j, const std::string& name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw ParseError("field \"" + name + "\" must be an integer");
  }
  return v.get<long>();
}

Rational rational_from_json(const Json& j, const std::string& name) {
  if (!j.is_string()) throw ParseError("field \"" + name + "\" must hold \"p/q\" strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError("field \"" + name + "\": " + e.what());
  }
}

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Int int_from_json(const Json& j, const std::string& name) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError("field \"" + name + "\" is not an integer literal");
    }
  }
  throw ParseError("field \"" + name + "\" must be an integer or integer string");
}

Json int_rows_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix int_rows_from_json(const Json& j, const std::string& name, int cols) {
  if (!j.is_array()) throw ParseError("field \"" + name + "\" must be an array of rows");
  if (j.empty()) {
    if (cols < 0) throw ParseError("field \"" + name + "\" has no rows to infer a width from");
    return IntMatrix(0, cols);
  }
  int width = cols;
  if (width < 0) {
    if (!j[0].is_array()) throw ParseError("field \"" + name + "\" rows must be arrays");
    width = static_cast<int>(j[0].size());
  }
  IntMatrix m(static_cast<int>(j.size()), width);
  for (int i = 0; i < m.rows(); ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != width) {
      throw ParseError("field \"" + name + "\" rows must all have length " +
                       std::to_string(width));
    }
    for (int k = 0; k < width; ++k) {
      m(i, k) = int_from_json(row[static_cast<std::size_t>(k)], name);
    }
  }
  return m;
}

IntVector int_vector_from_json(const Json& j, const std::string& name, int size) {
  if (!j.is_array()) throw ParseError("field \"" + name + "\" must be an integer array");
  if (size >= 0 && static_cast<int>(j.size()) != size) {
    throw ParseError("field \"" + name + "\" must have length " + std::to_string(size));
  }
  IntVector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = int_from_json(j[static_cast<std::size_t>(i)], name);
  return v;
}

Json coefficient_to_json(const Coefficient& c) {
  Json terms = Json::array();
  for (const auto& [expo, kappa] : c.terms()) {
    Json cyc = Json::array();
    for (const Rational& r : kappa.coeffs()) cyc.push_back(rational_to_string(r));
    Json free = Json::array();
    for (const Int& e : expo) free.push_back(int_to_json(e));
    terms.push_back(Json{{"cyclotomic", std::move(cyc)}, {"free_exponents", std::move(free)}});
  }
  return terms;
}

Coefficient coefficient_from_json(const Json& j, long torsion_order, int free_params,
                                  const std::string& name) {
  if (!j.is_array()) throw ParseError("field \"" + name + "\" must be a term array");
  Coefficient out(torsion_order, free_params);
  for (const Json& term : j) {
    IntVector e = int_vector_from_json(field(term, "free_exponents"), "free_exponents",
                                       free_params);
    const Json& cyc = field(term, "cyclotomic");
    if (!cyc.is_array()) throw ParseError("field \"cyclotomic\" must be a rational array");
    std::vector<Rational> coeffs;
    coeffs.reserve(cyc.size());
    for (const Json& r : cyc) coeffs.push_back(rational_from_json(r, "cyclotomic"));
    std::vector<Int> expo(static_cast<std::size_t>(free_params));
    for (int k = 0; k < free_params; ++k) expo[static_cast<std::size_t>(k)] = e(k);
    out = out + Coefficient(torsion_order, free_params, expo,
                            CyclotomicNumber(torsion_order, std::move(coeffs)));
  }
  return out;
}

Json spec_to_json(const AlgebraSpec& spec) {
  Json q = Json::array();
  for (int i = 0; i < spec.rank(); ++i) {
    for (int j = i + 1; j < spec.rank(); ++j) {
      const GammaElement& g = spec.g(i, j);
      if (g.is_zero()) continue;
      Json free = Json::array();
      for (int k = 0; k < g.free_params(); ++k) free.push_back(int_to_json(g.free()(k)));
      q.push_back(Json{{"free", std::move(free)},
                       {"i", i + 1},
                       {"j", j + 1},
                       {"tors", int_to_json(g.tors())}});
    }
  }
  return Json{{"free_params", spec.free_params()},
              {"q", std::move(q)},
              {"rank", spec.rank()},
              {"torsion_order", spec.torsion_order()}};
}

AlgebraSpec spec_from_json(const Json& j) {
  long n = long_field(j, "rank");
  long tors = long_field(j, "torsion_order");
  long m = long_field(j, "free_params");
  if (n < 1) throw ParseError("field \"rank\" must be positive");
  if (tors < 1) throw ParseError("field \"torsion_order\" must be positive");
  if (m < 0) throw ParseError("field \"free_params\" must be nonnegative");
  AlgebraSpec spec(static_cast<int>(n), tors, static_cast<int>(m));
  const Json& q = field(j, "q");
  if (!q.is_array()) throw ParseError("field \"q\" must be an array");
  for (const Json& entry : q) {
    long i = long_field(entry, "i");
    long jj = long_field(entry, "j");
    if (i < 1 || jj <= i || jj > n) throw ParseError("field \"q\" entries need 1 <= i < j <= rank");
    Int t = int_from_json(field(entry, "tors"), "tors");
    IntVector free = int_vector_from_json(field(entry, "free"), "free", static_cast<int>(m));
    spec.set_q(static_cast<int>(i) - 1, static_cast<int>(jj) - 1, GammaElement(tors, t, free));
  }
  return spec;
}

Json element_to_json(const TorusElement& alpha) {
  Json terms = Json::array();
  for (const auto& [expo, c] : alpha.support()) {
    Json e = Json::array();
    for (const Int& v : expo) e.push_back(int_to_json(v));
    terms.push_back(Json{{"coeff", coefficient_to_json(c)}, {"exponent", std::move(e)}});
  }
  return Json{{"terms", std::move(terms)}};
}

TorusElement element_from_json(const Json& j, const SpecPtr& spec) {
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("field \"terms\" must be an array");
  TorusElement out(spec);
  for (const Json& term : terms) {
    IntVector e = int_vector_from_json(field(term, "exponent"), "exponent", spec->rank());
    Coefficient c = coefficient_from_json(field(term, "coeff"), spec->torsion_order(),
                                          spec->free_params(), "coeff");
    out.add_term(e, c);
  }
  return out;
}

Json sublattice_to_json(const Sublattice& l) {
  return Json{{"ambient_rank", l.ambient_rank()}, {"basis", int_rows_to_json(l.basis())}};
}

Sublattice sublattice_from_json(const Json& j) {
  long n = long_field(j, "ambient_rank");
  if (n < 0) throw ParseError("field \"ambient_rank\" must be nonnegative");
  IntMatrix basis = int_rows_from_json(field(j, "basis"), "basis", static_cast<int>(n));
  return Sublattice(static_cast<int>(n), basis);
}

Json module_to_json(const CFiniteModule& m) {
  Json actions = Json::array();
  const int n = m.spec()->rank();
  for (int j = m.r(); j < n; ++j) {
    const auto& a = m.action(j);
    Json matrix = Json::array();
    for (int p = 0; p < m.d(); ++p) {
      Json row = Json::array();
      for (int q = 0; q < m.d(); ++q) {
        row.push_back(element_to_json(a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]));
      }
      matrix.push_back(std::move(row));
    }
    actions.push_back(Json{{"j", j + 1}, {"matrix", std::move(matrix)}});
  }
  return Json{{"actions", std::move(actions)},
              {"d", m.d()},
              {"r", m.r()},
              {"split", int_rows_to_json(m.split())}};
}

CFiniteModule module_from_json(const Json& j, const SpecPtr& spec) {
  long r = long_field(j, "r");
  long d = long_field(j, "d");
  const int n = spec->rank();
  if (r < 0 || r > n) throw ParseError("field \"r\" out of range");
  if (d < 1) throw ParseError("field \"d\" must be positive");
  IntMatrix split = int_rows_from_json(field(j, "split"), "split", n);
  if (split.rows() != n) throw ParseError("field \"split\" must be a square basis matrix");
  SpecPtr rspec;
  try {
    rspec = std::make_shared<const AlgebraSpec>(rebase(*spec, split));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field \"split\": ") + e.what());
  }
  const Json& actions = field(j, "actions");
  if (!actions.is_array() || static_cast<long>(actions.size()) != n - r) {
    throw ParseError("field \"actions\" must list each generator outside C exactly once");
  }
  std::vector<CFiniteModule::ElemMatrix> parsed(
      static_cast<std::size_t>(n - r),
      CFiniteModule::ElemMatrix());
  std::vector<bool> seen(static_cast<std::size_t>(n - r), false);
  for (const Json& entry : actions) {
    long jj = long_field(entry, "j");
    if (jj <= r || jj > n) throw ParseError("field \"actions\" index j out of range");
    std::size_t slot = static_cast<std::size_t>(jj - r - 1);
    if (seen[slot]) throw ParseError("field \"actions\" repeats a generator index");
    seen[slot] = true;
    const Json& matrix = field(entry, "matrix");
    if (!matrix.is_array() || static_cast<long>(matrix.size()) != d) {
      throw ParseError("field \"matrix\" must be a d x d element array");
    }
    CFiniteModule::ElemMatrix a;
    for (const Json& row : matrix) {
      if (!row.is_array() || static_cast<long>(row.size()) != d) {
        throw ParseError("field \"matrix\" must be a d x d element array");
      }
      std::vector<TorusElement> out;
      out.reserve(row.size());
      for (const Json& cell : row) out.push_back(element_from_json(cell, rspec));
      a.push_back(std::move(out));
    }
    parsed[slot] = std::move(a);
  }
  try {
    return CFiniteModule(spec, split, static_cast<int>(r), static_cast<int>(d),
                         std::move(parsed));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("module data rejected: ") + e.what());
  }
}

Json datum_to_json(const Class2Datum& datum) {
  Json comm = Json::array();
  for (int i = 0; i < datum.rank(); ++i) {
    for (int j = i + 1; j < datum.rank(); ++j) {
      IntVector c = datum.comm(i, j);
      if (c.isZero()) continue;
      Json central = Json::array();
      for (int k = 0; k < c.size(); ++k) central.push_back(int_to_json(c(k)));
      comm.push_back(Json{{"central", std::move(central)}, {"i", i + 1}, {"j", j + 1}});
    }
  }
  return Json{{"comm", std::move(comm)}, {"n", datum.rank()}, {"z", datum.central_rank()}};
}

Class2Datum datum_from_json(const Json& j) {
  long n = long_field(j, "n");
  long z = long_field(j, "z");
  if (n < 1 || z < 1) throw ParseError("fields \"n\" and \"z\" must be positive");
  Class2Datum datum(static_cast<int>(n), static_cast<int>(z));
  const Json& comm = field(j, "comm");
  if (!comm.is_array()) throw ParseError("field \"comm\" must be an array");
  for (const Json& entry : comm) {
    long i = long_field(entry, "i");
    long jj = long_field(entry, "j");
    if (i < 1 || jj <= i || jj > n) {
      throw ParseError("field \"comm\" entries need 1 <= i < j <= n");
    }
    IntVector central = int_vector_from_json(field(entry, "central"), "central",
                                             static_cast<int>(z));
    datum.set_comm(static_cast<int>(i) - 1, static_cast<int>(jj) - 1, central);
  }
  return datum;
}

Json character_to_json(const CentralCharacter& chi) {
  Json images = Json::array();
  for (const GammaElement& g : chi.images) {
    Json free = Json::array();
    for (int k = 0; k < g.free_params(); ++k) free.push_back(int_to_json(g.free()(k)));
    images.push_back(Json{{"free", std::move(free)}, {"tors", int_to_json(g.tors())}});
  }
  return Json{{"free_params", chi.free_params},
              {"images", std::move(images)},
              {"torsion_order", chi.torsion_order}};
}

CentralCharacter character_from_json(const Json& j) {
  CentralCharacter chi;
  chi.torsion_order = long_field(j, "torsion_order");
  chi.free_params = static_cast<int>(long_field(j, "free_params"));
  if (chi.torsion_order < 1) throw ParseError("field \"torsion_order\" must be positive");
  if (chi.free_params < 0) throw ParseError("field \"free_params\" must be nonnegative");
  const Json& images = field(j, "images");
  if (!images.is_array()) throw ParseError("field \"images\" must be an array");
  for (const Json& entry : images) {
    Int t = int_from_json(field(entry, "tors"), "tors");
    IntVector free = int_vector_from_json(field(entry, "free"), "free", chi.free_params);
    chi.images.emplace_back(chi.torsion_order, t, free);
  }
  return chi;
}

Json group_words_to_json(const std::vector<GroupWord>& words) {
  Json gens = Json::array();
  for (const auto& [a, c] : words) {
    Json aj = Json::array(), cj = Json::array();
    for (int k = 0; k < a.size(); ++k) aj.push_back(int_to_json(a(k)));
    for (int k = 0; k < c.size(); ++k) cj.push_back(int_to_json(c(k)));
    gens.push_back(Json{{"a", std::move(aj)}, {"central", std::move(cj)}});
  }
  return Json{{"generators", std::move(gens)}};
}

std::vector<GroupWord> group_words_from_json(const Json& j, int rank, int central_rank) {
  const Json& gens = field(j, "generators");
  if (!gens.is_array()) throw ParseError("field \"generators\" must be an array");
  std::vector<GroupWord> out;
  for (const Json& entry : gens) {
    out.emplace_back(int_vector_from_json(field(entry, "a"), "a", rank),
                     int_vector_from_json(field(entry, "central"), "central", central_rank));
  }
  return out;
}

namespace {

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed input: ") + e.what());
  }
}

}  // namespace

std::string serialize_spec(const AlgebraSpec& spec) { return canonical_dump(spec_to_json(spec)); }
AlgebraSpec parse_spec(const std::string& text) { return spec_from_json(parse_text(text)); }

std::string serialize_element(const TorusElement& alpha) {
  return canonical_dump(element_to_json(alpha));
}
TorusElement parse_element(const std::string& text, const SpecPtr& spec) {
  return element_from_json(parse_text(text), spec);
}

std::string serialize_sublattice(const Sublattice& l) {
  return canonical_dump(sublattice_to_json(l));
}
Sublattice parse_sublattice(const std::string& text) {
  return sublattice_from_json(parse_text(text));
}

std::string serialize_module(const CFiniteModule& m) { return canonical_dump(module_to_json(m)); }
CFiniteModule parse_module(const std::string& text, const SpecPtr& spec) {
  return module_from_json(parse_text(text), spec);
}

std::string serialize_datum(const Class2Datum& datum) {
  return canonical_dump(datum_to_json(datum));
}
Class2Datum parse_datum(const std::string& text) { return datum_from_json(parse_text(text)); }

std::string serialize_character(const CentralCharacter& chi) {
  return canonical_dump(character_to_json(chi));
}
CentralCharacter parse_character(const std::string& text) {
  return character_from_json(parse_text(text));
}

}  // namespace qtorus
