#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qll/errors.hpp"
#include "qll/hilbert.hpp"
#include "qll/ortho.hpp"
#include "qll/products.hpp"

using qll::AtomSet;
using qll::ClosureSpace;
using qll::OrthoMap;

namespace {

OrthoMap map_of(std::size_t n, std::initializer_list<std::initializer_list<std::size_t>> images) {
  OrthoMap m;
  for (auto img : images) {
    AtomSet s(n);
    for (auto p : img) s.insert(p);
    m.atom_image.push_back(s);
  }
  return m;
}

qll::OrthogonalityRelation complement_relation(std::size_t n) {
  std::vector<AtomSet> rows;
  for (std::size_t p = 0; p < n; ++p) rows.push_back(AtomSet::singleton(n, p).complement());
  return qll::OrthogonalityRelation(rows);
}

}  // namespace

TEST_CASE("orthogonality relations must be symmetric and irreflexive") {
  CHECK_THROWS_AS(qll::OrthogonalityRelation({AtomSet(2, {0}), AtomSet(2)}), qll::InputError);
  CHECK_THROWS_AS(qll::OrthogonalityRelation({AtomSet(2, {1}), AtomSet(2)}), qll::InputError);
  auto r = qll::OrthogonalityRelation::from_pairs(4, {{0, 1}, {2, 3}});
  CHECK(r.orthogonal(1, 0));
  CHECK_FALSE(r.orthogonal(0, 2));
}

TEST_CASE("verifying candidate maps on MO2") {
  auto mo = qll::mo_lattice(2);
  auto standard = map_of(4, {{1}, {0}, {3}, {2}});
  CHECK(qll::verify_orthocomplementation(mo.space, standard).valid);

  auto fixed = map_of(4, {{0}, {1}, {2}, {3}});
  auto bad = qll::verify_orthocomplementation(mo.space, fixed);
  CHECK_FALSE(bad.valid);
  CHECK(bad.law == "complement-at-atoms");

  auto not_symmetric = map_of(4, {{1}, {2}, {3}, {0}});
  CHECK_FALSE(qll::verify_orthocomplementation(mo.space, not_symmetric).valid);

  auto not_coatom = map_of(4, {{1, 2}, {0}, {3}, {2}});
  CHECK_THROWS_AS(qll::verify_orthocomplementation(mo.space, not_coatom), qll::InputError);

  auto built = qll::ortho_from_atom_orthogonality(mo.space, mo.perp);
  REQUIRE(built.ortho);
  CHECK(*built.ortho == standard);
}

TEST_CASE("MO2 has exactly the orthocomplementations found by brute force") {
  auto mo = qll::mo_lattice(2);
  qll::OrthoSearchOptions opt;
  opt.limit = 100;
  auto found = qll::find_orthocomplementations(mo.space, opt);
  CHECK(found.complete);
  CHECK(found.maps.size() == oracle::count_orthocomplementations(mo.space.family()));
  CHECK(found.maps.size() == 3);
  for (const auto& m : found.maps) CHECK(qll::verify_orthocomplementation(mo.space, m).valid);

  auto b2 = ClosureSpace::boolean(2);
  auto fb = qll::find_orthocomplementations(b2, opt);
  CHECK(fb.maps.size() == oracle::count_orthocomplementations(b2.family()));
}

TEST_CASE("counting certificate and its exhaustive confirmation") {
  // Three points on one line plus a free point: 4 atoms, 2 coatoms.
  std::vector<AtomSet> f{AtomSet(4),         AtomSet(4, {0}), AtomSet(4, {1}), AtomSet(4, {2}), AtomSet(4, {3}),
                         AtomSet(4, {0, 1, 2}), AtomSet::full(4)};
  auto s = ClosureSpace::from_family(4, f);
  auto fast = qll::find_orthocomplementations(s);
  CHECK(fast.maps.empty());
  CHECK(fast.complete);
  REQUIRE(fast.counting_certificate);
  CHECK(fast.counting_certificate->first != fast.counting_certificate->second);

  qll::OrthoSearchOptions slow;
  slow.use_counting_certificate = false;
  auto full = qll::find_orthocomplementations(s, slow);
  CHECK(full.maps.empty());
  CHECK(full.complete);
  CHECK_FALSE(full.counting_certificate);
}

TEST_CASE("search budget exhaustion is reported, not swallowed") {
  auto mo3 = qll::mo_lattice(3);
  qll::OrthoSearchOptions opt;
  opt.limit = 1000;
  opt.node_cap = 3;
  CHECK_THROWS_AS(qll::find_orthocomplementations(mo3.space, opt), qll::BudgetExceeded);
}

TEST_CASE("orthomodularity") {
  auto mo = qll::mo_lattice(2);
  auto ortho = qll::ortho_from_atom_orthogonality(mo.space, mo.perp).ortho;
  REQUIRE(ortho);
  CHECK(qll::is_orthomodular(mo.space, *ortho));

  for (std::size_t n = 1; n <= 8; ++n) {
    auto b = ClosureSpace::boolean(n);
    auto c = qll::ortho_from_atom_orthogonality(b, complement_relation(n));
    REQUIRE(c.ortho);
    CHECK(qll::is_orthomodular(b, *c.ortho));
  }

  auto sep = qll::sep_product(mo.space, mo.space);
  auto hash = qll::ortho_from_atom_orthogonality(sep.product, qll::product_orthogonality(mo.perp, mo.perp));
  REQUIRE(hash.ortho);
  auto w = qll::orthomodularity_failure(sep.product, *hash.ortho);
  REQUIRE(w);
  // a <= b but b != a v (b & a').
  const auto& [a, b] = *w;
  CHECK(a.is_subset_of(b));
  CHECK(qll::join(sep.product, a, b & hash.ortho->complement(a)) != b);
}

TEST_CASE("the # relation on sep products") {
  auto mo = qll::mo_lattice(2);
  auto sep = qll::sep_product(mo.space, mo.space);
  auto rel = qll::product_orthogonality(mo.perp, mo.perp);
  auto c = qll::ortho_from_atom_orthogonality(sep.product, rel);
  REQUIRE(c.ortho);
  CHECK(c.report.valid);
  // (p1,p2)' = p1perp x Sigma2 u Sigma1 x p2perp, rebuilt coordinate-wise.
  oracle::Grid g{4, 4};
  for (std::size_t p1 = 0; p1 < 4; ++p1)
    for (std::size_t p2 = 0; p2 < 4; ++p2)
      CHECK(c.ortho->atom_image[g.at(p1, p2)] == g.cross(mo.perp.row(p1), mo.perp.row(p2)));

  // On the materialized top product every image is still a coatom, but the
  // smaller joins there break a v a' = 1.
  auto top = qll::materialize_top_product(mo.space, mo.space);
  auto co = oracle::as_set(oracle::coatoms_of(top.product.family()));
  for (const auto& r : rel.rows()) CHECK(co.count(r));
  auto on_top = qll::ortho_from_atom_orthogonality(top.product, rel);
  CHECK_FALSE(on_top.ortho);
  CHECK_FALSE(on_top.report.valid);
  CHECK(on_top.report.law == "join-one");
}

TEST_CASE("structural hypotheses") {
  auto mo2 = qll::mo_lattice(2).space;
  CHECK(qll::third_atom_condition(mo2));
  CHECK(qll::four_atom_condition(mo2));
  CHECK(qll::cal0sym_condition(mo2));
  CHECK(qll::every_atom_pair_join_has_third(mo2));

  auto b2 = ClosureSpace::boolean(2);
  CHECK_FALSE(qll::third_atom_condition(b2));
  CHECK_FALSE(qll::every_atom_pair_join_has_third(b2));
  CHECK_FALSE(qll::cal0sym_condition(ClosureSpace::boolean(4)));

  // In MO3 any two atoms join to the top, which covers all six.
  auto mo3 = qll::mo_lattice(3).space;
  CHECK(qll::four_atom_condition(mo3));
}

TEST_CASE("every map found on small random spaces verifies") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + trial % 3;
    oracle::Family gens;
    for (std::size_t p = 0; p < n; ++p) gens.push_back(AtomSet::singleton(n, p));
    gens.push_back(AtomSet(n));
    for (int k = 0; k < 3; ++k) gens.push_back(oracle::random_subset(rng, n, 0.6));
    auto s = ClosureSpace::from_family(n, oracle::generated_family(n, gens));
    qll::OrthoSearchOptions opt;
    opt.limit = 50;
    auto r = qll::find_orthocomplementations(s, opt);
    for (const auto& m : r.maps) CHECK(qll::verify_orthocomplementation(s, m).valid);
    if (qll::coatoms(s).size() != n) CHECK(r.maps.empty());
  }
}
