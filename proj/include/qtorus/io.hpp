#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "qtorus/nilpotent.hpp"

namespace qtorus {

using Json = nlohmann::json;

/// Input rejected; the message names the offending field.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// std::map-backed object keys are already sorted; this fixes indentation and
/// the trailing newline so report files are byte-stable.
std::string canonical_dump(const Json& j);

Json int_to_json(const Int& v);
Int int_from_json(const Json& j, const std::string& field);
Json int_rows_to_json(const IntMatrix& m);
IntMatrix int_rows_from_json(const Json& j, const std::string& field, int cols = -1);
IntVector int_vector_from_json(const Json& j, const std::string& field, int size = -1);

Json coefficient_to_json(const Coefficient& c);
Coefficient coefficient_from_json(const Json& j, long torsion_order, int free_params,
                                  const std::string& field);

Json spec_to_json(const AlgebraSpec& spec);
AlgebraSpec spec_from_json(const Json& j);

Json element_to_json(const TorusElement& alpha);
TorusElement element_from_json(const Json& j, const SpecPtr& spec);

Json sublattice_to_json(const Sublattice& l);
Sublattice sublattice_from_json(const Json& j);

Json module_to_json(const CFiniteModule& m);
CFiniteModule module_from_json(const Json& j, const SpecPtr& spec);

Json datum_to_json(const Class2Datum& datum);
Class2Datum datum_from_json(const Json& j);

Json character_to_json(const CentralCharacter& chi);
CentralCharacter character_from_json(const Json& j);

Json group_words_to_json(const std::vector<GroupWord>& words);
std::vector<GroupWord> group_words_from_json(const Json& j, int rank, int central_rank);

std::string serialize_spec(const AlgebraSpec& spec);
AlgebraSpec parse_spec(const std::string& text);

std::string serialize_element(const TorusElement& alpha);
TorusElement parse_element(const std::string& text, const SpecPtr& spec);

std::string serialize_sublattice(const Sublattice& l);
Sublattice parse_sublattice(const std::string& text);

std::string serialize_module(const CFiniteModule& m);
CFiniteModule parse_module(const std::string& text, const SpecPtr& spec);

std::string serialize_datum(const Class2Datum& datum);
Class2Datum parse_datum(const std::string& text);

std::string serialize_character(const CentralCharacter& chi);
CentralCharacter parse_character(const std::string& text);

}  // namespace qtorus
