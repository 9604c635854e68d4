#include "qll/io.hpp"

namespace qll::io {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing JSON field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad JSON field \"") + key + "\": " + e.what());
  }
}

json matrix_to_json(const gf::Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

gf::Matrix matrix_from_json(const json& j, int cols, int q) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  gf::Matrix m(static_cast<int>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) throw InputError("matrix row has wrong length");
    for (int k = 0; k < cols; ++k) m(static_cast<int>(i), k) = gf::mod(j[i][k].get<long long>(), q);
  }
  return m;
}

}  // namespace

json atom_set_to_json(const AtomSet& s) {
  json a = json::array();
  s.for_each([&](std::size_t p) { a.push_back(p); });
  return a;
}

AtomSet atom_set_from_json(const json& j, std::size_t universe_size) {
  if (!j.is_array()) throw InputError("atom set must be an array of atom ids");
  AtomSet s(universe_size);
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError("atom ids must be nonnegative integers");
    s.insert(v.get<std::size_t>());
  }
  return s;
}

json closure_space_to_json(const ClosureSpace& space) {
  json j;
  j["universe"] = space.universe_size();
  if (!space.atom_labels().empty()) j["atom_labels"] = space.atom_labels();
  json sets = json::array();
  for (const auto& a : space.family()) sets.push_back(atom_set_to_json(a));
  j["closed_sets"] = std::move(sets);
  return j;
}

ClosureSpace closure_space_from_json(const json& j, const Budgets& budgets) {
  const auto n = field<std::size_t>(j, "universe");
  std::vector<std::string> labels;
  if (j.contains("atom_labels")) labels = field<std::vector<std::string>>(j, "atom_labels");
  if (!j.contains("closed_sets") || !j["closed_sets"].is_array()) throw InputError("closed_sets must be an array");
  const auto& sets = j["closed_sets"];
  std::vector<AtomSet> family;
  for (const auto& s : sets) family.push_back(atom_set_from_json(s, n));
  auto report = validate_simple_closure_space(n, family);
  if (!report.valid()) throw InputError("closed_sets do not form a simple closure space: " + report.summary());
  return ClosureSpace::from_family(n, std::move(family), std::move(labels), budgets.family_cap);
}

json ortho_map_to_json(const OrthoMap& m) {
  json img = json::array();
  for (const auto& c : m.atom_image) img.push_back(atom_set_to_json(c));
  return json{{"atom_image", img}};
}

OrthoMap ortho_map_from_json(const json& j, std::size_t universe_size) {
  if (!j.contains("atom_image") || !j["atom_image"].is_array()) throw InputError("missing atom_image array");
  OrthoMap m;
  for (const auto& c : j["atom_image"]) m.atom_image.push_back(atom_set_from_json(c, universe_size));
  if (m.atom_image.size() != universe_size) throw InputError("atom_image must have one entry per atom");
  return m;
}

json verification_report_to_json(const VerificationReport& r) {
  json j{{"valid", r.valid}};
  if (!r.valid) {
    j["law"] = r.law;
    json ce = json::array();
    for (const auto& s : r.counterexample) ce.push_back(atom_set_to_json(s));
    j["counterexample"] = ce;
    j["detail"] = r.detail;
  }
  return j;
}

json validation_report_to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    json e{{"kind", to_string(x.kind)}, {"set", atom_set_to_json(x.witness)}};
    if (x.lhs && x.rhs) e["from"] = json::array({atom_set_to_json(*x.lhs), atom_set_to_json(*x.rhs)});
    v.push_back(e);
  }
  return json{{"valid", r.valid()}, {"violations", v}};
}

json model_to_json(const SubspaceModel& m) {
  return json{{"q", m.q()}, {"n", m.dimension()}, {"form", matrix_to_json(m.form())}};
}

SubspaceModel model_from_json(const json& j) {
  const int q = field<int>(j, "q");
  const int n = field<int>(j, "n");
  if (q < 2 || n < 1) throw InputError("model needs q >= 2 and n >= 1");
  auto form = matrix_from_json(j.at("form"), n, q);
  if (form.rows() != n) throw InputError("form must be n x n");
  return SubspaceModel::make(q, form);
}

json subspace_to_json(const Subspace& v) { return json{{"basis", matrix_to_json(v.basis)}}; }

Subspace subspace_from_json(const json& j, const SubspaceModel& model) {
  if (!j.contains("basis")) throw InputError("missing basis");
  return span(model, matrix_from_json(j.at("basis"), model.dimension(), model.q()));
}

json permutation_to_json(const AtomPermutation& p) { return json{{"image", p.image()}}; }

AtomPermutation permutation_from_json(const json& j) {
  return AtomPermutation(field<std::vector<std::size_t>>(j, "image"));
}

json product_to_json(const ProductInstance& inst, const std::string& left_name, const std::string& right_name) {
  json j;
  j["kind"] = inst.kind;
  j["left"] = left_name.empty() ? closure_space_to_json(inst.left) : json(left_name);
  j["right"] = right_name.empty() ? closure_space_to_json(inst.right) : json(right_name);
  json pairing = json::array();
  for (auto [a, b] : inst.pairing) pairing.push_back(json::array({a, b}));
  j["pairing"] = pairing;
  auto fam = closure_space_to_json(inst.product);
  j["universe"] = fam["universe"];
  if (fam.contains("atom_labels")) j["atom_labels"] = fam["atom_labels"];
  j["closed_sets"] = fam["closed_sets"];
  return j;
}

ProductInstance product_from_json(const json& j, const FactorResolver& resolve, const Budgets& budgets) {
  auto factor = [&](const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing factor \"") + key + "\"");
    const auto& f = j.at(key);
    if (f.is_string()) return resolve(f.get<std::string>());
    return closure_space_from_json(f, budgets);
  };
  ProductInstance inst;
  inst.kind = j.value("kind", std::string("custom"));
  inst.left = factor("left");
  inst.right = factor("right");
  const auto n1 = inst.left.universe_size(), n2 = inst.right.universe_size();
  if (!j.contains("pairing") || !j["pairing"].is_array()) throw InputError("missing pairing array");
  for (const auto& pr : j["pairing"]) {
    if (!pr.is_array() || pr.size() != 2) throw InputError("pairing entries must be [i, j]");
    auto a = pr[0].get<std::size_t>(), b = pr[1].get<std::size_t>();
    if (a >= n1 || b >= n2) throw InputError("pairing entry outside factor universes");
    inst.pairing.emplace_back(a, b);
  }
  inst.product = closure_space_from_json(j, budgets);
  if (inst.product.universe_size() != inst.pairing.size()) throw InputError("pairing must cover every product atom");
  return inst;
}

json axiom_report_to_json(const AxiomReport& r) {
  json items = json::array();
  for (const auto& i : r.items) {
    json e{{"axiom", i.axiom}, {"passed", i.passed}};
    if (!i.detail.empty()) e["detail"] = i.detail;
    if (!i.witness.empty()) {
      json w = json::array();
      for (const auto& s : i.witness) w.push_back(atom_set_to_json(s));
      e["witness"] = w;
    }
    items.push_back(e);
  }
  return json{{"passed", r.passed()}, {"axioms", items}};
}

json interval_report_to_json(const IntervalReport& r) {
  json j;
  j["lower_holds"] = r.lower_holds;
  j["lower_strict"] = r.lower_strict;
  if (r.lower_violation) j["lower_violation"] = atom_set_to_json(*r.lower_violation);
  if (r.lower_witness) j["lower_witness"] = atom_set_to_json(*r.lower_witness);
  j["upper_holds"] = r.upper_holds;
  j["upper_strict"] = r.upper_strict ? json(*r.upper_strict) : json("unknown");
  if (r.upper_violation) j["upper_violation"] = atom_set_to_json(*r.upper_violation);
  if (r.upper_witness) j["upper_witness"] = atom_set_to_json(*r.upper_witness);
  return j;
}

json group_report_to_json(const std::vector<AtomPermutation>& group,
                          const std::vector<DecompositionResult>* decompositions) {
  json j;
  j["order"] = group.size();
  j["orbits"] = group.empty() ? json::array() : json(orbits(group));
  if (decompositions) {
    json table = json::array();
    for (std::size_t i = 0; i < decompositions->size(); ++i) {
      const auto& d = (*decompositions)[i];
      json row{{"u", group[i].image()}};
      if (d.value) {
        row["swap"] = d.value->swap;
        row["v1"] = d.value->v1.image();
        row["v2"] = d.value->v2.image();
      } else {
        row["failure"] = d.failure;
      }
      table.push_back(row);
    }
    j["decompositions"] = table;
  }
  return j;
}

}  // namespace qll::io
