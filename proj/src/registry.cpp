#include "qll/registry.hpp"

#include <cmath>

namespace qll {

namespace {

const std::vector<std::string> kBaseNames = {"mo2",   "mo3",   "boolean2", "boolean3",
                                             "boolean4", "gf3_2", "gf3_3", "gf3_tensor"};

Instance base_instance(const std::string& name, const Budgets& budgets) {
  Instance inst;
  inst.name = name;
  if (name == "mo2" || name == "mo3") {
    auto mo = mo_lattice(name == "mo2" ? 2 : 3);
    inst.space = mo.space;
    inst.perp = mo.perp;
  } else if (name.rfind("boolean", 0) == 0 && name.size() == 8 && name[7] >= '1' && name[7] <= '6') {
    const std::size_t n = static_cast<std::size_t>(name[7] - '0');
    inst.space = ClosureSpace::boolean(n);
    // Complementation: p' = everything but p.
    std::vector<AtomSet> rows;
    for (std::size_t p = 0; p < n; ++p) rows.push_back(AtomSet::singleton(n, p).complement());
    inst.perp = OrthogonalityRelation(std::move(rows));
  } else if (name == "gf3_2") {
    auto model = SubspaceModel::standard(3, 2);
    auto ps = build_projective_space(model, budgets.subspace_cap);
    inst.space = ps.space;
    inst.perp = ps.perp;
    inst.model = model;
  } else if (name == "gf3_3") {
    // Every ternary form over GF(3) is isotropic, so no orthogonality here.
    auto model = SubspaceModel::standard(3, 3);
    inst.space = projective_closure_space(model, budgets.subspace_cap);
    inst.model = model;
  } else if (name == "gf3_tensor") {
    auto m = SubspaceModel::standard(3, 2);
    auto model = tensor_model(m, m);
    inst.space = projective_closure_space(model, budgets.subspace_cap);
    inst.model = model;
  } else {
    throw InputError("unknown instance \"" + name + "\"");
  }
  return inst;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

bool top_fits(const ClosureSpace& left, const ClosureSpace& right, const Budgets& budgets) {
  if (!right.is_explicit()) return false;
  const double rows = static_cast<double>(right.family().size());
  return std::pow(rows, static_cast<double>(left.universe_size())) <= static_cast<double>(budgets.node_cap);
}

}  // namespace

std::vector<std::string> list_instances() {
  auto out = kBaseNames;
  out.push_back("sep(<left>,<right>)");
  out.push_back("top(<left>,<right>)");
  out.push_back("star(<left>,<right>)");
  out.push_back("down(<gf-left>,<gf-right>)");
  return out;
}

Instance make_product(const std::string& kind, const Instance& left, const Instance& right, const Budgets& budgets) {
  Instance inst;
  inst.name = kind + "(" + left.name + "," + right.name + ")";
  inst.left_name = left.name;
  inst.right_name = right.name;
  if (kind == "sep") {
    inst.product = sep_product(left.space, right.space, budgets);
  } else if (kind == "top") {
    inst.product = top_fits(left.space, right.space, budgets)
                       ? materialize_top_product(left.space, right.space, budgets)
                       : top_product(left.space, right.space);
  } else if (kind == "star") {
    inst.product = star_product(left.space, right.space, budgets);
  } else if (kind == "down") {
    if (!left.model || !right.model) throw InputError("down product needs finite-field model factors");
    inst.product = down_product(*left.model, *right.model, budgets).instance;
  } else {
    throw InputError("unknown product \"" + kind + "\" (expected sep, top, star or down)");
  }
  inst.space = inst.product->product;
  if (left.perp && right.perp) inst.perp = product_orthogonality(*left.perp, *right.perp);
  return inst;
}

Instance resolve_instance(const std::string& raw, const Budgets& budgets) {
  const auto name = trim(raw);
  const auto open = name.find('(');
  if (open == std::string::npos) return base_instance(name, budgets);
  if (name.back() != ')') throw InputError("malformed product expression \"" + name + "\"");

  // Split kind(a,b) at the top-level comma.
  const auto kind = trim(name.substr(0, open));
  const auto inner = name.substr(open + 1, name.size() - open - 2);
  int depth = 0;
  std::size_t comma = std::string::npos;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    if (inner[i] == ')') --depth;
    if (inner[i] == ',' && depth == 0) {
      comma = i;
      break;
    }
  }
  if (comma == std::string::npos) throw InputError("product expression needs two factors: \"" + name + "\"");
  auto left = resolve_instance(inner.substr(0, comma), budgets);
  auto right = resolve_instance(inner.substr(comma + 1), budgets);
  return make_product(kind, left, right, budgets);
}

}  // namespace qll
