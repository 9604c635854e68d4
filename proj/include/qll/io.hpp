#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qll/automorphisms.hpp"
#include "qll/closure_space.hpp"
#include "qll/hilbert.hpp"
#include "qll/ortho.hpp"
#include "qll/permutation.hpp"
#include "qll/products.hpp"

namespace qll::io {

using json = nlohmann::ordered_json;

json atom_set_to_json(const AtomSet& s);
AtomSet atom_set_from_json(const json& j, std::size_t universe_size);

/// {"universe": n, "atom_labels": [...], "closed_sets": [[...], ...]}
json closure_space_to_json(const ClosureSpace& space);
/// Validates the family; throws InputError on malformed or invalid input.
ClosureSpace closure_space_from_json(const json& j, const Budgets& budgets = {});

/// {"atom_image": [[...], ...]}
json ortho_map_to_json(const OrthoMap& m);
OrthoMap ortho_map_from_json(const json& j, std::size_t universe_size);

json verification_report_to_json(const VerificationReport& r);
json validation_report_to_json(const ValidationReport& r);

/// {"q": 3, "n": 2, "form": [[...], ...]}
json model_to_json(const SubspaceModel& m);
SubspaceModel model_from_json(const json& j);

/// {"basis": [[...], ...]}
json subspace_to_json(const Subspace& v);
Subspace subspace_from_json(const json& j, const SubspaceModel& model);

/// {"image": [...]}
json permutation_to_json(const AtomPermutation& p);
AtomPermutation permutation_from_json(const json& j);

/// Factors are embedded by name when given, otherwise inline.
json product_to_json(const ProductInstance& inst, const std::string& left_name = "",
                     const std::string& right_name = "");

using FactorResolver = std::function<ClosureSpace(const std::string&)>;
ProductInstance product_from_json(const json& j, const FactorResolver& resolve, const Budgets& budgets = {});

json axiom_report_to_json(const AxiomReport& r);
json interval_report_to_json(const IntervalReport& r);

/// Order, orbit partition, and (for products) the decomposition table.
json group_report_to_json(const std::vector<AtomPermutation>& group,
                          const std::vector<DecompositionResult>* decompositions = nullptr);

}  // namespace qll::io
