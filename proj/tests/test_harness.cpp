#include <doctest.h>

#include <algorithm>
#include <string>

#include "qll/dot.hpp"
#include "qll/errors.hpp"
#include "qll/hilbert.hpp"
#include "qll/io.hpp"
#include "qll/products.hpp"
#include "qll/registry.hpp"
#include "qll/theorems.hpp"

using qll::AtomSet;
using qll::ClosureSpace;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

}  // namespace

TEST_CASE("closure spaces round-trip through JSON") {
  auto mo = qll::mo_lattice(2);
  auto j = qll::io::closure_space_to_json(mo.space);
  auto back = qll::io::closure_space_from_json(j);
  CHECK(back.family() == mo.space.family());
  CHECK(qll::io::closure_space_to_json(back).dump() == j.dump());

  auto text = qll::io::json::parse(j.dump(2));
  CHECK(qll::io::closure_space_from_json(text).family() == mo.space.family());

  // Invalid families are rejected on read.
  auto broken = j;
  broken["closed_sets"].erase(1);
  CHECK_THROWS_AS(qll::io::closure_space_from_json(broken), qll::InputError);
  CHECK_THROWS_AS(qll::io::closure_space_from_json(qll::io::json::parse("{\"universe\": 2}")), qll::InputError);
}

TEST_CASE("other JSON round-trips") {
  auto mo = qll::mo_lattice(2);
  auto ortho = qll::ortho_from_atom_orthogonality(mo.space, mo.perp).ortho;
  REQUIRE(ortho);
  CHECK(qll::io::ortho_map_from_json(qll::io::ortho_map_to_json(*ortho), 4) == *ortho);

  auto perm = qll::AtomPermutation(std::vector<std::size_t>{2, 0, 3, 1});
  CHECK(qll::io::permutation_from_json(qll::io::permutation_to_json(perm)) == perm);

  auto m = qll::SubspaceModel::standard(3, 2);
  auto m2 = qll::io::model_from_json(qll::io::model_to_json(m));
  CHECK(m2.q() == 3);
  CHECK(m2.dimension() == 2);
  CHECK(qll::projective_closure_space(m2).family() == qll::projective_closure_space(m).family());

  auto v = qll::orthogonal_complement(m, qll::span(m, qll::gf::Matrix::Identity(1, 2)));
  CHECK(qll::io::subspace_from_json(qll::io::subspace_to_json(v), m) == v);

  auto sep = qll::sep_product(mo.space, mo.space);
  auto pj = qll::io::product_to_json(sep, "mo2", "mo2");
  auto resolve = [](const std::string& name) { return qll::resolve_instance(name).space; };
  auto back = qll::io::product_from_json(pj, resolve);
  CHECK(back.kind == "sep");
  CHECK(back.product.family() == sep.product.family());
  CHECK(back.pairing == sep.pairing);
}

TEST_CASE("DOT export") {
  auto mo = qll::mo_lattice(2).space;
  auto dot = qll::export_dot(mo);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count_of(dot, "->") == 8);
  CHECK(count_of(dot, "label=") == 6);

  auto sep = qll::sep_product(mo, mo);
  auto big = qll::export_dot(sep.product);
  CHECK(count_of(big, "label=") == 114);
  CHECK(count_of(big, "->") == qll::cover_graph(sep.product).edge_count());
  CHECK_THROWS_AS(qll::export_dot(sep.product, "lattice", 100), qll::BudgetExceeded);
}

TEST_CASE("named instances") {
  auto names = qll::list_instances();
  CHECK(std::find(names.begin(), names.end(), "mo2") != names.end());
  CHECK(qll::resolve_instance("boolean3").space.family().size() == 8);
  auto sep = qll::resolve_instance("sep(mo2,mo2)");
  REQUIRE(sep.product);
  CHECK(sep.space.family().size() == 114);
  auto down = qll::resolve_instance("down(gf3_2,gf3_2)");
  CHECK(down.space.family().size() == 138);
  CHECK_THROWS_AS(qll::resolve_instance("mo7x"), qll::InputError);
  CHECK_THROWS_AS(qll::resolve_instance("sep(mo2)"), qll::InputError);
  CHECK_THROWS_AS(qll::resolve_instance("down(mo2,mo2)"), qll::InputError);
  CHECK_THROWS_AS(qll::verify("thm0.0"), qll::InputError);
}

TEST_CASE("theorem pipelines") {
  for (const char* id : {"thm8.6", "thm9.1", "thm9.4", "thm5.x", "cnot"}) {
    auto r = qll::verify(id);
    CHECK_MESSAGE(r.verdict == qll::Verdict::Verified, id << ": " << r.note);
    CHECK(qll::exit_code(r.verdict) == 0);
    CHECK_FALSE(r.checks.empty());
  }

  qll::VerifyOptions pair;
  pair.left = "boolean2";
  pair.right = "mo2";
  auto r = qll::verify("thm5.x", pair);
  CHECK(r.verdict == qll::Verdict::Verified);

  // The full-automorphism variant of P4 is an analog claim; the verdict
  // tracks what check_p4 actually finds.
  auto p4 = qll::verify("p4aut");
  auto m = qll::SubspaceModel::standard(3, 2);
  auto down = qll::down_product(m, m);
  auto aut = qll::automorphism_group(qll::projective_closure_space(m));
  const bool holds = qll::check_p4(down.instance, aut, aut).passed();
  CHECK((p4.verdict == qll::Verdict::AnalogDivergence) == holds);
  CHECK(qll::exit_code(p4.verdict) == (holds ? 1 : 0));
}

TEST_CASE("reports are deterministic") {
  auto a = qll::report_to_json(qll::verify("thm8.6"));
  auto b = qll::report_to_json(qll::verify("thm8.6"));
  CHECK(a.dump() == b.dump());
  CHECK_FALSE(a.contains("elapsed_ms"));
  CHECK(a["verdict"] == "verified");
}

TEST_CASE("budget exhaustion is inconclusive") {
  qll::VerifyOptions tiny;
  tiny.budgets.family_cap = 10;
  auto r = qll::verify("thm8.6", tiny);
  CHECK(r.verdict == qll::Verdict::InconclusiveBudget);
  CHECK(qll::exit_code(r.verdict) == 2);
  CHECK_FALSE(r.note.empty());
}
