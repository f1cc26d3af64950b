#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qtorus/io.hpp"

using namespace qtorus;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read input file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const Json& report, const std::string& out_path) {
  std::string text = canonical_dump(report);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot write output file \"" + out_path + "\"");
  out << text;
}

SpecPtr load_spec(const std::string& path) {
  return std::make_shared<const AlgebraSpec>(parse_spec(read_file(path)));
}

Sublattice load_sublattice(const std::string& path) {
  return parse_sublattice(read_file(path));
}

ModuleVector load_vector(const std::string& path, const CFiniteModule& m) {
  Json j = Json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("components")) {
    throw ParseError("vector file needs field \"components\"");
  }
  const Json& comps = j["components"];
  if (!comps.is_array() || static_cast<int>(comps.size()) != m.d()) {
    throw ParseError("field \"components\" must list exactly d elements");
  }
  ModuleVector v;
  for (const Json& c : comps) v.push_back(element_from_json(c, m.rspec()));
  return v;
}

Json pair_list(const std::vector<std::pair<int, int>>& pairs) {
  Json out = Json::array();
  for (auto [i, j] : pairs) out.push_back(Json::array({i + 1, j + 1}));
  return out;
}

Json growth_to_json(const GrowthEstimate& g) {
  Json dims = Json::array();
  for (const Int& d : g.dims) dims.push_back(int_to_json(d));
  return Json{{"degree", g.degree}, {"dims", std::move(dims)}, {"stable", g.stable}};
}

Json cyclicity_to_json(const CyclicityReport& c) {
  return Json{{"attained", int_to_json(c.attained)},
              {"center_trivial", c.center_trivial},
              {"interior_dim", int_to_json(c.interior_dim)},
              {"interior_radius", c.interior_radius},
              {"interior_saturated", c.interior_saturated},
              {"ratio", rational_to_string(c.ratio)},
              {"span_rank", int_to_json(c.span_rank)}};
}

/// Standard weight module: coordinates along a virtual complement of C with
/// the trivial character.
CFiniteModule weight_module(const SpecPtr& spec, const Sublattice& c) {
  IntMatrix comp = saturated_complement(saturation(c));
  std::vector<Coefficient> chi(static_cast<std::size_t>(comp.rows()),
                               Coefficient::one(spec->torsion_order(), spec->free_params()));
  return induce_cyclic(spec, c, Sublattice(spec->rank(), comp), chi);
}

bool generators_torsion_free(const CFiniteModule& m, long deg_bound) {
  IntMatrix crows = IntMatrix::Zero(m.r(), m.spec()->rank());
  for (int i = 0; i < m.r(); ++i) crows(i, i) = 1;
  Sublattice base(m.spec()->rank(), crows);
  for (int i = 0; i < m.d(); ++i) {
    if (torsion_search(m, base, m.generator(i), deg_bound).has_value()) return false;
  }
  return true;
}

int run_verify_all(const std::string& scenario_path, const std::string& out_path) {
  Json scenario = Json::parse(read_file(scenario_path), nullptr, false);
  if (scenario.is_discarded() || !scenario.is_object() || !scenario.contains("spec") ||
      !scenario.contains("c_basis")) {
    throw ParseError("scenario needs fields \"spec\" and \"c_basis\"");
  }
  auto spec = std::make_shared<const AlgebraSpec>(spec_from_json(scenario["spec"]));
  const int n = spec->rank();
  Sublattice c(n, int_rows_from_json(scenario["c_basis"], "c_basis", n));
  Int s_max = scenario.contains("s_max") ? int_from_json(scenario["s_max"], "s_max") : Int(10);
  long k_max = scenario.contains("k_max") ? scenario["k_max"].get<long>() : 3;
  long deg_bound = scenario.contains("deg_bound") ? scenario["deg_bound"].get<long>() : 2;
  long search_bound =
      scenario.contains("search_bound") ? scenario["search_bound"].get<long>() : 3;

  Json checks = Json::array();
  Json notes = Json::array();
  bool pass = true;
  auto check = [&](const std::string& name, bool ok) {
    checks.push_back(Json{{"name", name}, {"pass", ok}});
    pass = pass && ok;
  };

  bool trivial = has_trivial_center(*spec);
  if (!trivial) notes.push_back("Theorem A hypothesis not met: center is nontrivial");
  check("c_commutative", is_commutative_sublattice(*spec, c));

  Sublattice sat = saturation(c);
  auto sol = complement_solver(*spec, sat, s_max);
  check("complement_found", sol.has_value());
  if (sol) {
    check("complement_verified", verify_virtual_complement(*spec, sat, sol->e).pass);
  }

  CFiniteModule m = weight_module(spec, c);
  check("consistency", check_consistency(m).pass);
  GrowthEstimate growth = gk_growth_estimate(m, m.generator(0), k_max);
  check("growth_matches_rank", growth.stable && growth.degree == m.r());
  check("torsion_free", generators_torsion_free(m, deg_bound));

  CyclicityReport cyc = cyclicity_probe(m, m.generator(0), k_max);
  if (trivial) {
    check("cyclicity_saturated", cyc.interior_saturated);
    HolonomicReport hol = holonomic_certificate(*spec, growth.degree, search_bound);
    check("finite_length", hol.certified);
  }

  emit(Json{{"center_trivial", trivial},
            {"checks", std::move(checks)},
            {"cyclicity", cyclicity_to_json(cyc)},
            {"growth", growth_to_json(growth)},
            {"notes", std::move(notes)},
            {"pass", pass}},
       out_path);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Laurent polynomial algebra toolkit"};
  app.require_subcommand(1);

  std::string spec_path, module_path, subgroup_path, c_basis_path, vector_path;
  std::string a_path, b_path, datum_path, character_path, scenario_path, out_path;
  long k_max = 3, deg_bound = 3, search_bound = 3;
  long s_max = 10;
  std::function<int()> run;

  auto add_output = [&](CLI::App* cmd) { cmd->add_option("-o,--output", out_path); };

  auto* center = app.add_subcommand("center", "center of the algebra");
  center->add_option("spec", spec_path)->required();
  add_output(center);
  center->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      Sublattice z = center_lattice(*spec);
      emit(Json{{"center_basis", int_rows_to_json(z.basis())}, {"trivial", z.rank() == 0}},
           out_path);
      return 0;
    };
  });

  auto* comm = app.add_subcommand("commutative", "test a subgroup for commutativity");
  comm->add_option("spec", spec_path)->required();
  comm->add_option("--subgroup", subgroup_path)->required();
  add_output(comm);
  comm->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      Sublattice b = load_sublattice(subgroup_path);
      for (int i = 0; i < b.rank(); ++i) {
        for (int j = i + 1; j < b.rank(); ++j) {
          if (!beta_form(*spec, b.basis_row(i).transpose(), b.basis_row(j).transpose())
                   .is_zero()) {
            emit(Json{{"commutative", false}, {"failing_pair", Json::array({i + 1, j + 1})}},
                 out_path);
            return 1;
          }
        }
      }
      emit(Json{{"commutative", true}}, out_path);
      return 0;
    };
  });

  auto* maxc = app.add_subcommand("max-commutative", "largest commutative sublattice rank");
  maxc->add_option("spec", spec_path)->required();
  maxc->add_option("--search-bound", search_bound);
  add_output(maxc);
  maxc->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      MaxCommutativeResult res = max_commutative_rank(*spec, search_bound);
      emit(Json{{"exact", res.exact},
                {"rank", res.rank},
                {"witness_basis", int_rows_to_json(res.witness.basis())}},
           out_path);
      return 0;
    };
  });

  auto* compl_ = app.add_subcommand("complement", "virtual complement of a commutative C");
  compl_->add_option("spec", spec_path)->required();
  compl_->add_option("--c-basis", c_basis_path)->required();
  compl_->add_option("--s-max", s_max);
  add_output(compl_);
  compl_->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      Sublattice c = load_sublattice(c_basis_path);
      auto sol = complement_solver(*spec, c, Int(s_max));
      if (!sol) {
        emit(Json{{"found", false}, {"s_max", s_max}}, out_path);
        return 1;
      }
      Json mu = Json::array();
      for (const IntVector& v : sol->c) {
        Json row = Json::array();
        for (int k = 0; k < v.size(); ++k) row.push_back(int_to_json(v(k)));
        mu.push_back(std::move(row));
      }
      emit(Json{{"E_basis", int_rows_to_json(sol->e_generators)},
                {"mu", std::move(mu)},
                {"s", int_to_json(sol->s)}},
           out_path);
      return 0;
    };
  });

  auto* mul = app.add_subcommand("multiply", "product of two elements");
  mul->add_option("spec", spec_path)->required();
  mul->add_option("a", a_path)->required();
  mul->add_option("b", b_path)->required();
  add_output(mul);
  mul->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      TorusElement a = parse_element(read_file(a_path), spec);
      TorusElement b = parse_element(read_file(b_path), spec);
      emit(element_to_json(a * b), out_path);
      return 0;
    };
  });

  auto* cons = app.add_subcommand("consistency", "semilinear action compatibility");
  cons->add_option("spec", spec_path)->required();
  cons->add_option("--module", module_path)->required();
  add_output(cons);
  cons->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      CFiniteModule m = parse_module(read_file(module_path), spec);
      ConsistencyReport rep = check_consistency(m);
      Json bad = Json::array();
      for (int j : rep.non_invertible) bad.push_back(j + 1);
      emit(Json{{"failing_pairs", pair_list(rep.failing_pairs)},
                {"non_invertible", std::move(bad)},
                {"pass", rep.pass}},
           out_path);
      return rep.pass ? 0 : 1;
    };
  });

  auto* ext = app.add_subcommand("exterior", "top exterior power identity");
  ext->add_option("spec", spec_path)->required();
  ext->add_option("--module", module_path)->required();
  add_output(ext);
  ext->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      CFiniteModule m = parse_module(read_file(module_path), spec);
      ExteriorReport rep = exterior_top(m);
      emit(Json{{"failing_pairs", pair_list(rep.failing_pairs)},
                {"identity_ok", rep.identity_ok},
                {"pass", rep.pass},
                {"power_module_consistent", rep.power_module_consistent}},
           out_path);
      return rep.pass ? 0 : 1;
    };
  });

  auto* gk = app.add_subcommand("gk", "growth degree of a cyclic span");
  gk->add_option("spec", spec_path)->required();
  gk->add_option("--module", module_path)->required();
  gk->add_option("--vector", vector_path);
  gk->add_option("--k-max", k_max);
  add_output(gk);
  gk->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      CFiniteModule m = parse_module(read_file(module_path), spec);
      ModuleVector v = vector_path.empty() ? m.generator(0) : load_vector(vector_path, m);
      GrowthEstimate est = gk_growth_estimate(m, v, k_max);
      emit(growth_to_json(est), out_path);
      return est.stable ? 0 : 1;
    };
  });

  auto* tor = app.add_subcommand("torsion", "annihilator search over a subgroup");
  tor->add_option("spec", spec_path)->required();
  tor->add_option("--module", module_path)->required();
  tor->add_option("--subgroup", subgroup_path)->required();
  tor->add_option("--vector", vector_path);
  tor->add_option("--deg-bound", deg_bound);
  add_output(tor);
  tor->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      CFiniteModule m = parse_module(read_file(module_path), spec);
      Sublattice b = load_sublattice(subgroup_path);
      ModuleVector v = vector_path.empty() ? m.generator(0) : load_vector(vector_path, m);
      auto ann = torsion_search(m, b, v, deg_bound);
      Json rep{{"found", ann.has_value()}};
      rep["annihilator"] = ann ? element_to_json(*ann) : Json();
      emit(rep, out_path);
      return 0;
    };
  });

  auto* dim = app.add_subcommand("dimension", "probe dimension over commutative candidates");
  dim->add_option("spec", spec_path)->required();
  dim->add_option("--module", module_path)->required();
  dim->add_option("--deg-bound", deg_bound);
  dim->add_option("--search-bound", search_bound);
  add_output(dim);
  dim->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      CFiniteModule m = parse_module(read_file(module_path), spec);
      int value = dimension_probe(m, deg_bound, default_dimension_candidates(m, search_bound));
      emit(Json{{"dimension", value}}, out_path);
      return 0;
    };
  });

  auto* cyc = app.add_subcommand("cyclicity", "interior window containment probe");
  cyc->add_option("spec", spec_path)->required();
  cyc->add_option("--module", module_path)->required();
  cyc->add_option("--vector", vector_path);
  cyc->add_option("--k-max", k_max);
  add_output(cyc);
  cyc->callback([&] {
    run = [&] {
      auto spec = load_spec(spec_path);
      CFiniteModule m = parse_module(read_file(module_path), spec);
      ModuleVector v = vector_path.empty() ? m.generator(0) : load_vector(vector_path, m);
      emit(cyclicity_to_json(cyclicity_probe(m, v, k_max)), out_path);
      return 0;
    };
  });

  auto* red = app.add_subcommand("reduce-nilpotent", "twisted group algebra of a character");
  red->add_option("datum", datum_path)->required();
  red->add_option("character", character_path)->required();
  add_output(red);
  red->callback([&] {
    run = [&] {
      Class2Datum d = parse_datum(read_file(datum_path));
      CentralCharacter chi = parse_character(read_file(character_path));
      emit(spec_to_json(reduce(d, chi)), out_path);
      return 0;
    };
  });

  auto* thb = app.add_subcommand("theorem-b", "evidence harness for an abelian subgroup");
  thb->add_option("datum", datum_path)->required();
  thb->add_option("character", character_path)->required();
  thb->add_option("--subgroup", subgroup_path)->required();
  thb->add_option("--deg-bound", deg_bound);
  thb->add_option("--k-max", k_max);
  add_output(thb);
  thb->callback([&] {
    run = [&] {
      Class2Datum d = parse_datum(read_file(datum_path));
      CentralCharacter chi = parse_character(read_file(character_path));
      Json words_json = Json::parse(read_file(subgroup_path), nullptr, false);
      if (words_json.is_discarded()) throw ParseError("malformed subgroup file");
      auto words = group_words_from_json(words_json, d.rank(), d.central_rank());
      ModuleRecipe recipe = [](const SpecPtr& spec, const Sublattice& c) {
        return weight_module(spec, c);
      };
      TheoremBReport rep = theoremB_harness(d, chi, words, recipe, deg_bound, k_max);
      Json torsion_free = Json::array();
      for (bool f : rep.generator_torsion_free) torsion_free.push_back(f);
      Json out{{"c_basis", int_rows_to_json(rep.c.basis())},
               {"c_commutative", rep.c_commutative},
               {"center_trivial", rep.center_trivial},
               {"central_rank_one", rep.central_rank_one},
               {"generator_torsion_free", std::move(torsion_free)},
               {"growth", growth_to_json(rep.growth)},
               {"growth_matches_rank", rep.growth_matches_rank},
               {"hypothesis_met", rep.hypothesis_met},
               {"l_abelian", rep.l_abelian},
               {"pass", rep.pass}};
      out["cyclicity"] = rep.cyclicity ? cyclicity_to_json(*rep.cyclicity) : Json();
      emit(out, out_path);
      return rep.pass ? 0 : 1;
    };
  });

  auto* verify = app.add_subcommand("verify-all", "run the scenario property suite");
  verify->add_option("scenario", scenario_path)->required();
  add_output(verify);
  verify->callback([&] { run = [&] { return run_verify_all(scenario_path, out_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
