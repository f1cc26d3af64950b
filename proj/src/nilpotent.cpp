#include "qtorus/nilpotent.hpp"

#include <stdexcept>

namespace qtorus {

Class2Datum::Class2Datum(int n, int z) : n_(n), z_(z) {
  if (n < 1 || z < 1) throw std::invalid_argument("Class2Datum: ranks must be >= 1");
}

void Class2Datum::set_comm(int i, int j, const IntVector& central) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) {
    throw std::invalid_argument("Class2Datum: bad generator pair");
  }
  if (central.size() != z_) throw std::invalid_argument("Class2Datum: bad central exponent");
  if (i < j) {
    comm_[{i, j}] = central;
  } else {
    comm_[{j, i}] = -central;
  }
}

IntVector Class2Datum::comm(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw std::out_of_range("Class2Datum: bad generator pair");
  }
  if (i == j) return IntVector::Zero(z_);
  auto it = comm_.find(i < j ? std::make_pair(i, j) : std::make_pair(j, i));
  if (it == comm_.end()) return IntVector::Zero(z_);
  return i < j ? it->second : IntVector(-it->second);
}

AlgebraSpec reduce(const Class2Datum& datum, const CentralCharacter& chi) {
  if (static_cast<int>(chi.images.size()) != datum.central_rank()) {
    throw std::invalid_argument("reduce: one image per central generator");
  }
  for (const auto& g : chi.images) {
    if (g.torsion_order() != chi.torsion_order || g.free_params() != chi.free_params) {
      throw std::invalid_argument("reduce: character image has mismatched (N, m)");
    }
  }
  AlgebraSpec spec(datum.rank(), chi.torsion_order, chi.free_params);
  for (int i = 0; i < datum.rank(); ++i) {
    for (int j = i + 1; j < datum.rank(); ++j) {
      IntVector e = datum.comm(i, j);
      GammaElement g(chi.torsion_order, chi.free_params);
      for (int k = 0; k < datum.central_rank(); ++k) {
        g = g + gamma_scale(e(k), chi.images[static_cast<std::size_t>(k)]);
      }
      spec.set_q(i, j, g);
    }
  }
  return spec;
}

Sublattice subgroup_image(const Class2Datum& datum, const std::vector<GroupWord>& gens) {
  IntMatrix rows(static_cast<int>(gens.size()), datum.rank());
  for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
    const auto& [a, c] = gens[static_cast<std::size_t>(i)];
    if (a.size() != datum.rank() || c.size() != datum.central_rank()) {
      throw std::invalid_argument("subgroup_image: bad generator word");
    }
    rows.row(i) = a.transpose();
  }
  return Sublattice(datum.rank(), rows);
}

bool is_abelian_subgroup(const Class2Datum& datum, const std::vector<GroupWord>& gens) {
  // [x, y] depends only on the images in A, bilinearly through comm
  for (std::size_t s = 0; s < gens.size(); ++s) {
    for (std::size_t t = s + 1; t < gens.size(); ++t) {
      const IntVector& a = gens[s].first;
      const IntVector& b = gens[t].first;
      IntVector total = IntVector::Zero(datum.central_rank());
      for (int i = 0; i < datum.rank(); ++i) {
        for (int j = 0; j < datum.rank(); ++j) {
          if (a(i) != 0 && b(j) != 0) total += Int(a(i) * b(j)) * datum.comm(i, j);
        }
      }
      if (!total.isZero()) return false;
    }
  }
  return true;
}

TheoremBReport theoremB_harness(const Class2Datum& datum, const CentralCharacter& chi,
                                const std::vector<GroupWord>& l_gens, const ModuleRecipe& recipe,
                                long deg_bound, long k_max) {
  if (!is_abelian_subgroup(datum, l_gens)) {
    throw std::invalid_argument("theoremB_harness: L is not abelian");
  }
  TheoremBReport rep;
  rep.l_abelian = true;
  auto spec = std::make_shared<const AlgebraSpec>(reduce(datum, chi));
  rep.c = subgroup_image(datum, l_gens);
  rep.c_commutative = is_commutative_sublattice(*spec, rep.c);
  CFiniteModule m = recipe(spec, rep.c);

  IntMatrix crows = IntMatrix::Zero(m.r(), spec->rank());
  for (int i = 0; i < m.r(); ++i) crows(i, i) = 1;
  Sublattice base(spec->rank(), crows);
  bool all_free = true;
  for (int i = 0; i < m.d(); ++i) {
    bool none = !torsion_search(m, base, m.generator(i), deg_bound).has_value();
    rep.generator_torsion_free.push_back(none);
    all_free = all_free && none;
  }

  rep.growth = gk_growth_estimate(m, m.generator(0), k_max);
  rep.growth_matches_rank = rep.growth.stable && rep.growth.degree == rep.c.rank();

  rep.central_rank_one = datum.central_rank() == 1;
  rep.center_trivial = has_trivial_center(*spec);
  rep.hypothesis_met = rep.center_trivial;
  if (rep.central_rank_one) {
    rep.cyclicity = cyclicity_probe(m, m.generator(0), k_max);
  }
  rep.pass = rep.l_abelian && rep.c_commutative && all_free && rep.growth_matches_rank;
  return rep;
}

}  // namespace qtorus
