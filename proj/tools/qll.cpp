// qll: build, inspect and verify finite closure-space products.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qll/automorphisms.hpp"
#include "qll/dot.hpp"
#include "qll/errors.hpp"
#include "qll/io.hpp"
#include "qll/registry.hpp"
#include "qll/theorems.hpp"

namespace {

using qll::io::json;

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kBudget = 2;
constexpr int kUsage = 3;

struct Globals {
  qll::Budgets budgets;
  std::string out;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qll::InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw qll::InputError(path + ": " + e.what());
  }
}

// A registry name, or a path to a JSON closure space / product file.
qll::Instance load_instance(const std::string& arg, const qll::Budgets& budgets) {
  if (!std::filesystem::is_regular_file(arg)) return qll::resolve_instance(arg, budgets);
  const auto j = read_json_file(arg);
  qll::Instance inst;
  inst.name = std::filesystem::path(arg).stem().string();
  if (j.contains("pairing")) {
    auto resolver = [&](const std::string& name) { return qll::resolve_instance(name, budgets).space; };
    inst.product = qll::io::product_from_json(j, resolver, budgets);
    inst.space = inst.product->product;
    if (j["left"].is_string()) inst.left_name = j["left"].get<std::string>();
    if (j["right"].is_string()) inst.right_name = j["right"].get<std::string>();
  } else {
    inst.space = qll::io::closure_space_from_json(j, budgets);
  }
  if (j.contains("orthogonality")) {
    std::vector<qll::AtomSet> rows;
    for (const auto& r : j["orthogonality"]) rows.push_back(qll::io::atom_set_from_json(r, inst.space.universe_size()));
    inst.perp = qll::OrthogonalityRelation(std::move(rows));
  }
  return inst;
}

json instance_json(const qll::Instance& inst) {
  json j = inst.product ? qll::io::product_to_json(*inst.product, inst.left_name, inst.right_name)
                        : qll::io::closure_space_to_json(inst.space);
  if (inst.perp) {
    json rows = json::array();
    for (const auto& r : inst.perp->rows()) rows.push_back(qll::io::atom_set_to_json(r));
    j["orthogonality"] = rows;
  }
  if (inst.model) j["model"] = qll::io::model_to_json(*inst.model);
  return j;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw qll::InputError("cannot write " + g.out);
  f << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

void emit(const Globals& g, const json& j) { emit(g, j.dump(2)); }

std::optional<qll::OrthoMap> find_ortho(const qll::Instance& inst, const qll::Budgets& budgets, json& out) {
  if (inst.perp) {
    auto c = qll::ortho_from_atom_orthogonality(inst.space, *inst.perp);
    out["from_orthogonality"] = qll::io::verification_report_to_json(c.report);
    if (c.ortho) return c.ortho;
  }
  qll::OrthoSearchOptions o;
  o.node_cap = budgets.node_cap;
  auto r = qll::find_orthocomplementations(inst.space, o);
  out["search"] = {{"found", r.maps.size()}, {"complete", r.complete}, {"nodes", r.nodes}};
  if (r.counting_certificate)
    out["search"]["counting_certificate"] = {{"atoms", r.counting_certificate->first},
                                             {"coatoms", r.counting_certificate->second}};
  if (r.maps.empty()) return std::nullopt;
  return r.maps.front();
}

std::vector<qll::AtomPermutation> factor_group(const std::string& name, const qll::ClosureSpace& space,
                                               const std::string& kind, const qll::Budgets& budgets) {
  if (kind == "aut") return qll::automorphism_group(space, budgets.node_cap);
  if (name.empty()) throw qll::InputError("similitude groups need named finite-field factors");
  auto f = qll::resolve_instance(name, budgets);
  if (!f.model) throw qll::InputError("factor " + name + " has no finite-field model");
  qll::GroupOptions opt;
  opt.node_cap = budgets.node_cap;
  opt.isometries_only = kind == "isometry";
  return qll::similitude_group(*f.model, opt);
}

int run_check(const Globals& g, const std::string& property, const std::string& name, const std::string& group) {
  auto inst = load_instance(name, g.budgets);
  json j{{"instance", inst.name}, {"property", property}};
  bool holds = false;
  if (property == "ortho") {
    auto m = find_ortho(inst, g.budgets, j);
    holds = m.has_value();
    if (m) j["ortho"] = qll::io::ortho_map_to_json(*m);
  } else if (property == "omod") {
    auto m = find_ortho(inst, g.budgets, j);
    if (!m) {
      j["detail"] = "not orthocomplemented";
    } else {
      auto w = qll::orthomodularity_failure(inst.space, *m);
      holds = !w;
      if (w) j["witness"] = {{"a", qll::io::atom_set_to_json(w->first)}, {"b", qll::io::atom_set_to_json(w->second)}};
    }
  } else if (property == "covering") {
    auto w = qll::covering_failure(inst.space);
    holds = !w;
    if (w)
      j["witness"] = {{"base", qll::io::atom_set_to_json(w->base)}, {"atom", w->atom},
                      {"join", qll::io::atom_set_to_json(w->join)}};
  } else if (property == "dac") {
    holds = qll::is_dac(inst.space);
  } else if (property == "p123" || property == "p4") {
    if (!inst.product) throw qll::InputError(property + " needs a product instance");
    qll::AxiomReport r;
    if (property == "p123") {
      r = qll::check_p123(*inst.product);
    } else {
      auto t1 = factor_group(inst.left_name, inst.product->left, group, g.budgets);
      auto t2 = factor_group(inst.right_name, inst.product->right, group, g.budgets);
      j["group"] = group;
      r = qll::check_p4(*inst.product, t1, t2);
    }
    holds = r.passed();
    j["report"] = qll::io::axiom_report_to_json(r);
  }
  j["holds"] = holds;
  emit(g, j);
  return holds ? kOk : kFails;
}

int run_aut(const Globals& g, const std::string& name) {
  auto inst = load_instance(name, g.budgets);
  auto group = qll::automorphism_group(inst.space, g.budgets.node_cap);
  json j{{"instance", inst.name}};
  if (inst.product) {
    std::vector<qll::DecompositionResult> decs;
    for (const auto& u : group) decs.push_back(qll::decompose_automorphism(*inst.product, u));
    j["group"] = qll::io::group_report_to_json(group, &decs);
  } else {
    j["group"] = qll::io::group_report_to_json(group);
  }
  j["transitive"] = qll::is_transitive(group);
  emit(g, j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite closure spaces, their products, and machine checks of their properties"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--budget-family", g.budgets.family_cap, "Maximum closed sets per family")->capture_default_str();
  app.add_option("--budget-nodes", g.budgets.node_cap, "Maximum search nodes")->capture_default_str();
  app.add_option("--budget-subspaces", g.budgets.subspace_cap, "Maximum enumerated subspaces")
      ->capture_default_str();
  app.add_option("--out", g.out, "Write output to this file instead of stdout");

  std::string name, left, right, product_kind, property, group = "aut", theorem;
  bool dot = false, as_json = false, timing = false;

  auto* build = app.add_subcommand("build", "Build a named instance and print its JSON");
  build->add_option("instance", name, "Registry name or JSON file")->required();

  auto* construct = app.add_subcommand("construct", "Build a product of two instances");
  construct->add_option("--product", product_kind, "Product kind")
      ->required()
      ->check(CLI::IsMember({"sep", "top", "down", "star"}));
  construct->add_option("--left", left, "Left factor")->required();
  construct->add_option("--right", right, "Right factor")->required();

  auto* check = app.add_subcommand("check", "Check one property of an instance");
  check->add_option("--property", property, "Property")
      ->required()
      ->check(CLI::IsMember({"ortho", "omod", "covering", "dac", "p123", "p4"}));
  check->add_option("--group", group, "Factor groups for p4")->check(CLI::IsMember({"aut", "similitude", "isometry"}));
  check->add_option("instance", name, "Registry name or JSON file")->required();

  auto* aut = app.add_subcommand("aut", "Automorphism group, orbits and product decompositions");
  aut->add_option("instance", name, "Registry name or JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Run a theorem check and print its report");
  verify->add_option("theorem", theorem, "Theorem id (see `qll list`)")->required();
  verify->add_option("--left", left, "Left factor");
  verify->add_option("--right", right, "Right factor");
  verify->add_flag("--timing", timing, "Include wall-clock time in the report");

  auto* exp = app.add_subcommand("export", "Export an instance as DOT or JSON");
  auto* dot_flag = exp->add_flag("--dot", dot, "Hasse diagram in Graphviz DOT");
  auto* json_flag = exp->add_flag("--json", as_json, "Closed-set family as JSON");
  dot_flag->excludes(json_flag);
  exp->add_option("instance", name, "Registry name or JSON file")->required();

  auto* list = app.add_subcommand("list", "List instance names and theorem ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build) {
      emit(g, instance_json(load_instance(name, g.budgets)));
    } else if (*construct) {
      auto l = load_instance(left, g.budgets);
      auto r = load_instance(right, g.budgets);
      auto p = qll::make_product(product_kind, l, r, g.budgets);
      if (!p.space.is_explicit()) throw qll::BudgetExceeded("node_cap (materializing " + p.name + ")", g.budgets.node_cap);
      emit(g, instance_json(p));
    } else if (*check) {
      return run_check(g, property, name, group);
    } else if (*aut) {
      return run_aut(g, name);
    } else if (*verify) {
      qll::VerifyOptions opt;
      opt.budgets = g.budgets;
      if (!left.empty()) opt.left = left;
      if (!right.empty()) opt.right = right;
      opt.timing = timing;
      auto report = qll::verify(theorem, opt);
      emit(g, qll::report_to_json(report));
      return qll::exit_code(report.verdict);
    } else if (*exp) {
      auto inst = load_instance(name, g.budgets);
      if (dot) emit(g, qll::export_dot(inst.space, "lattice"));
      else emit(g, instance_json(inst));
    } else if (*list) {
      json j{{"instances", qll::list_instances()}, {"theorems", qll::theorem_ids()}};
      emit(g, j);
    }
    return kOk;
  } catch (const qll::BudgetExceeded& e) {
    std::cerr << "qll: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "qll: " << e.what() << "\n";
    return kUsage;
  }
}
