#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qll/automorphisms.hpp"
#include "qll/errors.hpp"
#include "qll/hilbert.hpp"
#include "qll/products.hpp"

using qll::AtomPermutation;
using qll::AtomSet;
using qll::ClosureSpace;

namespace {

std::set<std::vector<std::size_t>> images(const std::vector<AtomPermutation>& g) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& u : g) out.insert(u.image());
  return out;
}

const qll::ProductInstance& sep_mo2() {
  static const auto inst = [] {
    auto l = qll::mo_lattice(2).space;
    return qll::sep_product(l, l);
  }();
  return inst;
}

const std::vector<AtomPermutation>& sep_group() {
  static const auto g = qll::automorphism_group(sep_mo2().product);
  return g;
}

}  // namespace

TEST_CASE("automorphism groups of small factors match brute force") {
  auto mo2 = qll::mo_lattice(2).space;
  auto g = qll::automorphism_group(mo2);
  CHECK(g.size() == 24);
  auto brute = oracle::automorphisms(4, mo2.family());
  CHECK(images(g) == std::set<std::vector<std::size_t>>(brute.begin(), brute.end()));
  CHECK(qll::is_transitive(g));

  std::size_t factorial = 1;
  for (std::size_t n = 1; n <= 5; ++n) {
    factorial *= n;
    auto b = ClosureSpace::boolean(n);
    auto gb = qll::automorphism_group(b);
    CHECK(gb.size() == factorial);
    auto bb = oracle::automorphisms(n, b.family());
    CHECK(images(gb) == std::set<std::vector<std::size_t>>(bb.begin(), bb.end()));
  }

  // A line {0,1,2} plus a free point 3 in a 5-atom space with another line {3,4}.
  std::vector<AtomSet> f{AtomSet(5),         AtomSet(5, {0}),    AtomSet(5, {1}),      AtomSet(5, {2}),
                         AtomSet(5, {3}),    AtomSet(5, {4}),    AtomSet(5, {0, 1, 2}), AtomSet(5, {3, 4}),
                         AtomSet::full(5)};
  auto s = ClosureSpace::from_family(5, f);
  auto gs = qll::automorphism_group(s);
  auto bs = oracle::automorphisms(5, s.family());
  CHECK(images(gs) == std::set<std::vector<std::size_t>>(bs.begin(), bs.end()));
  CHECK(gs.size() == 12);
  CHECK_FALSE(qll::is_transitive(gs));
}

TEST_CASE("the automorphism group of sep(MO2, MO2)") {
  const auto& inst = sep_mo2();
  const auto& g = sep_group();
  CHECK(g.size() == 1152);
  CHECK(g.size() % (2 * 24 * 24) == 0);

  // Group axioms, checked after the fact on a sample of products.
  const auto all = images(g);
  for (std::size_t i = 0; i < g.size(); i += 37) {
    CHECK(all.count(g[i].inverse().image()));
    for (std::size_t j = 0; j < g.size(); j += 101) CHECK(all.count(g[i].compose(g[j]).image()));
  }

  // Atoms, coatoms and covers are preserved.
  const auto co = oracle::as_set(qll::coatoms(inst.product));
  const auto graph = qll::cover_graph(inst.product);
  const auto& fam = inst.product.family();
  for (std::size_t i = 0; i < g.size(); i += 13) {
    for (const auto& c : co) CHECK(co.count(g[i].apply(c)));
    for (std::size_t lo = 0; lo < fam.size(); ++lo)
      for (auto hi : graph.upper[lo]) {
        auto a = inst.product.index_of(g[i].apply(fam[lo]));
        auto b = inst.product.index_of(g[i].apply(fam[hi]));
        REQUIRE(a);
        REQUIRE(b);
        CHECK(graph.covers(*a, *b));
      }
  }
}

TEST_CASE("decomposing product automorphisms") {
  const auto& inst = sep_mo2();
  auto aut = qll::automorphism_group(inst.left);

  auto id = qll::induced_product_automorphism(inst, AtomPermutation::identity(4), AtomPermutation::identity(4), false);
  CHECK(id.is_automorphism());
  CHECK(id.u.is_identity());

  // Every pair of factor automorphisms induces an automorphism of sep.
  for (const auto& v1 : aut)
    for (const auto& v2 : aut) {
      auto u = qll::induced_product_automorphism(inst, v1, v2, false);
      REQUIRE(u.is_automorphism());
      auto d = qll::decompose_automorphism(inst, u.u);
      REQUIRE(d.value);
      CHECK_FALSE(d.value->swap);
      CHECK(d.value->v1 == v1);
      CHECK(d.value->v2 == v2);
    }

  std::vector<std::size_t> swap(16);
  for (std::size_t p1 = 0; p1 < 4; ++p1)
    for (std::size_t p2 = 0; p2 < 4; ++p2) swap[p1 * 4 + p2] = p2 * 4 + p1;
  auto d = qll::decompose_automorphism(inst, AtomPermutation(swap));
  REQUIRE(d.value);
  CHECK(d.value->swap);
  CHECK(d.value->v1.is_identity());
  CHECK(d.value->v2.is_identity());

  std::set<qll::ProductDecomposition> seen;
  for (const auto& u : sep_group()) {
    auto r = qll::decompose_automorphism(inst, u);
    REQUIRE(r.value);
    seen.insert(*r.value);
  }
  CHECK(seen.size() == sep_group().size());

  // Not an automorphism: a transposition of two product atoms.
  std::vector<std::size_t> t(16);
  for (std::size_t k = 0; k < 16; ++k) t[k] = k;
  std::swap(t[0], t[5]);
  CHECK_THROWS_AS(qll::decompose_automorphism(inst, AtomPermutation(t)), qll::ContractViolation);
}

TEST_CASE("decomposition on factors without third atoms is recorded, not assumed") {
  auto b2 = ClosureSpace::boolean(2);
  auto inst = qll::sep_product(b2, b2);
  auto g = qll::automorphism_group(inst.product);
  CHECK(g.size() == 24);
  std::size_t failures = 0;
  for (const auto& u : g) failures += !qll::decompose_automorphism(inst, u).value;
  // Only 2 * 2 * 2 = 8 coordinatewise maps exist.
  CHECK(failures == 16);
}

TEST_CASE("dual automorphisms") {
  const auto& inst = sep_mo2();
  auto mo = qll::mo_lattice(2);
  auto hash =
      qll::ortho_from_atom_orthogonality(inst.product, qll::product_orthogonality(mo.perp, mo.perp)).ortho;
  REQUIRE(hash);
  const auto& fam = inst.product.family();
  const auto co = oracle::as_set(qll::coatoms(inst.product));
  for (std::size_t i = 0; i < sep_group().size(); i += 97) {
    auto map = qll::dual_automorphism(inst.product, *hash, sep_group()[i]);
    for (std::size_t k = 0; k < fam.size(); ++k)
      if (co.count(fam[k])) CHECK(co.count(fam[map[k]]));
  }
}
