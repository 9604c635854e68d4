#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qll/budget.hpp"
#include "qll/closure_space.hpp"
#include "qll/hilbert.hpp"
#include "qll/ortho.hpp"
#include "qll/products.hpp"

namespace qll {

/// A resolved named instance. Factor-level instances may carry an
/// orthogonality relation and a subspace model; products carry their
/// ProductInstance and the # relation built from the factor relations.
struct Instance {
  std::string name;
  ClosureSpace space;
  std::optional<OrthogonalityRelation> perp;
  std::optional<SubspaceModel> model;
  std::optional<ProductInstance> product;
  std::string left_name;
  std::string right_name;
};

/// Base names plus the product syntax kind(left,right).
std::vector<std::string> list_instances();

/// Resolves a base name (mo2, mo3, boolean2, boolean3, boolean4, gf3_2,
/// gf3_3, gf3_tensor) or a product expression such as sep(mo2,mo2) or
/// down(gf3_2,gf3_2). Top products are materialized when the row enumeration
/// fits the node budget and left implicit otherwise. Throws InputError for
/// unknown names.
Instance resolve_instance(const std::string& name, const Budgets& budgets = {});

Instance make_product(const std::string& kind, const Instance& left, const Instance& right,
                      const Budgets& budgets = {});

}  // namespace qll
