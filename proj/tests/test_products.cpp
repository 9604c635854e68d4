#include <doctest.h>

#include <array>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qll/automorphisms.hpp"
#include "qll/errors.hpp"
#include "qll/hilbert.hpp"
#include "qll/products.hpp"

using qll::AtomSet;
using qll::ClosureSpace;

namespace {

ClosureSpace mo2() { return qll::mo_lattice(2).space; }

const oracle::Grid kGrid{4, 4};

// Shared MO2 x MO2 instances; the brute-force families take a moment.
struct Mo2Products {
  ClosureSpace l = mo2();
  qll::ProductInstance sep = qll::sep_product(l, l);
  qll::ProductInstance top = qll::materialize_top_product(l, l);
  qll::ProductInstance top_implicit = qll::top_product(l, l);
  qll::ProductInstance star = qll::star_product(l, l);
  qll::DownProduct down = qll::down_product(qll::SubspaceModel::standard(3, 2), qll::SubspaceModel::standard(3, 2));
};

const Mo2Products& products() {
  static const Mo2Products p;
  return p;
}

}  // namespace

TEST_CASE("sections") {
  auto [c1, r1] = qll::sections(AtomSet(4, {0, 3}), 2, 2, 0, 0);
  CHECK(c1 == AtomSet(2, {0}));
  CHECK(r1 == AtomSet(2, {0}));
  auto [c2, r2] = qll::sections(AtomSet::full(16), 4, 4, 2, 3);
  CHECK(c2.is_full());
  CHECK(r2.is_full());
  // {0} x Sigma2 u Sigma1 x {0} on 2 x 2, read at (1,1).
  auto [c3, r3] = qll::sections(AtomSet(4, {0, 1, 2}), 2, 2, 1, 1);
  CHECK(c3 == AtomSet(2, {0}));
  CHECK(r3 == AtomSet(2, {0}));
}

TEST_CASE("sep products against generate-and-close") {
  auto b2 = ClosureSpace::boolean(2);
  auto sb = qll::sep_product(b2, b2);
  CHECK(sb.product.family().size() == 16);

  const auto& p = products();
  CHECK(p.sep.product.family() == [&] {
    auto f = oracle::sep_family(kGrid, p.l.family(), p.l.family());
    qll::canonicalize(f);
    return f;
  }());
  CHECK(p.sep.product.family().size() == 114);

  auto co = qll::coatoms(p.sep.product);
  CHECK(co.size() == 16);
  std::set<AtomSet> crosses;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) crosses.insert(kGrid.cross(AtomSet(4, {i ^ 1}), AtomSet(4, {j ^ 1})));
  CHECK(oracle::as_set(co) == crosses);
  for (const auto& c : co) CHECK(c.size() == 7);

  CHECK_FALSE(p.sep.product.contains(AtomSet(16, {0, 5, 10, 15})));
  CHECK(qll::join(p.sep.product, AtomSet(16, {0}), AtomSet(16, {1})) == AtomSet(16, {0, 1, 2, 3}));
}

TEST_CASE("top products") {
  const auto& p = products();
  CHECK(p.top_implicit.product.contains(AtomSet(16, {0, 5})));
  CHECK(p.top_implicit.product.closure(AtomSet(16, {0, 1})) == AtomSet(16, {0, 1, 2, 3}));

  auto expected = oracle::top_family(kGrid, p.l.family(), p.l.family());
  qll::canonicalize(expected);
  CHECK(p.top.product.family() == expected);
  CHECK(expected.size() == 234);

  // The implicit closure agrees with the materialized family.
  std::mt19937_64 rng(5);
  for (int k = 0; k < 2000; ++k) {
    auto a = oracle::random_subset(rng, 16, 0.15);
    CHECK(p.top_implicit.product.closure(a) == oracle::closure(p.top.product.family(), a));
    CHECK(p.top_implicit.product.contains(a) == p.top.product.contains(a));
  }

  auto b2 = ClosureSpace::boolean(2);
  CHECK(qll::materialize_top_product(b2, p.l).product.family() == qll::sep_product(b2, p.l).product.family());

  qll::Budgets tiny;
  tiny.node_cap = 10;
  CHECK_THROWS_AS(qll::materialize_top_product(p.l, p.l, tiny), qll::BudgetExceeded);
}

TEST_CASE("star products") {
  const auto& p = products();
  auto gens = qll::star_generators(p.l, p.l);
  auto expected = oracle::star_generators(kGrid, p.l.family(), p.l.family());
  CHECK(oracle::as_set(gens) == oracle::as_set(expected));
  CHECK(gens.size() == 40);

  std::size_t graphs = 0;
  for (const auto& g : gens) graphs += g.size() == 4;
  CHECK(graphs == 24);
  for (const auto& x : qll::coatoms(p.l))
    for (const auto& y : qll::coatoms(p.l)) CHECK(oracle::as_set(gens).count(kGrid.cross(x, y)));

  auto fam = oracle::generated_family(16, expected);
  qll::canonicalize(fam);
  CHECK(p.star.product.family() == fam);
  CHECK(qll::family_includes(p.star.product, p.sep.product));

  // Non-coatomistic factors are refused.
  std::vector<AtomSet> f{AtomSet(3), AtomSet(3, {0}), AtomSet(3, {1}), AtomSet(3, {2}), AtomSet(3, {0, 1}),
                         AtomSet::full(3)};
  auto line = ClosureSpace::from_family(3, f);
  CHECK_THROWS(qll::star_product(line, line));
}

TEST_CASE("down product of two GF(3) planes") {
  const auto& p = products();
  const auto& down = p.down.instance.product;
  CHECK(down.universe_size() == 16);
  CHECK(p.down.subspace_count == 212);

  // Hyperplanes f.x = 0, one functional per scalar class, evaluated on
  // x (x) y by hand.
  const std::vector<std::array<int, 2>> line = {{1, 0}, {0, 1}, {1, 1}, {1, 2}};
  std::set<AtomSet> hyper;
  for (int code = 1; code < 81; ++code) {
    int f[4], c = code;
    for (int& v : f) v = c % 3, c /= 3;
    int lead = 0;
    while (f[lead] == 0) ++lead;
    if (f[lead] != 1) continue;
    AtomSet s(16);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        int x[4] = {line[i][0] * line[j][0], line[i][0] * line[j][1], line[i][1] * line[j][0],
                    line[i][1] * line[j][1]};
        int dot = 0;
        for (int k = 0; k < 4; ++k) dot += f[k] * x[k];
        if (dot % 3 == 0) s.insert(kGrid.at(i, j));
      }
    hyper.insert(s);
  }
  CHECK(hyper.size() == 40);
  auto co = qll::coatoms(down);
  CHECK(co.size() == 40);
  CHECK(oracle::as_set(co) == hyper);
  for (const auto& h : hyper) CHECK(down.contains(h));

  CHECK(down.contains(AtomSet(16)));
  CHECK(down.contains(AtomSet::full(16)));
  CHECK(down.contains(AtomSet(16, {1, 4, 11, 14})));
  CHECK(qll::has_covering_property(down));
  CHECK(qll::is_coatomistic(down));
  CHECK_FALSE(qll::is_dac(down));
}

TEST_CASE("axioms P1-P3 and P4") {
  const auto& p = products();
  for (const auto* inst : {&p.sep, &p.top, &p.top_implicit, &p.star, &p.down.instance}) {
    auto r = qll::check_p123(*inst);
    CHECK_MESSAGE(r.passed(), inst->kind);
    if (inst->product.is_explicit()) CHECK(qll::validate_simple_closure_space(16, inst->product.family()).valid());
  }

  auto m = qll::SubspaceModel::standard(3, 2);
  auto sims = qll::similitude_group(m);
  CHECK(qll::check_p4(p.down.instance, sims, sims).passed());

  auto aut = qll::automorphism_group(p.l);
  CHECK(qll::check_p4(p.sep, aut, aut).passed());

  // Adding one diagonal graph breaks covariance under the full factor groups.
  std::vector<AtomSet> gens = p.sep.product.family();
  gens.push_back(AtomSet(16, {0, 5, 10, 15}));
  auto custom = qll::make_product_instance("custom", p.l, p.l, qll::intersection_closure(16, gens));
  auto r = qll::check_p4(custom, aut, aut);
  CHECK_FALSE(r.passed());
  REQUIRE(r.find("P4"));
  CHECK_FALSE(r.find("P4")->witness.empty());
}

TEST_CASE("interval checks") {
  const auto& p = products();
  auto lower = qll::interval_check(p.sep);
  CHECK(lower.lower_holds);
  CHECK_FALSE(lower.lower_strict);

  auto star = qll::interval_check(p.star);
  CHECK(star.strict_both());
  REQUIRE(star.lower_witness);
  CHECK_FALSE(p.sep.product.contains(*star.lower_witness));
  REQUIRE(star.upper_witness);
  CHECK_FALSE(p.star.product.contains(*star.upper_witness));
  CHECK(p.top.product.contains(*star.upper_witness));

  auto down = qll::interval_check(p.down.instance);
  CHECK(down.strict_both());
}

TEST_CASE("join identities for atoms of constructed products") {
  const auto& p = products();
  for (const auto* inst : {&p.sep, &p.top, &p.star, &p.down.instance}) {
    const auto& s = inst->product;
    for (std::size_t a = 0; a < 16; ++a)
      for (std::size_t b = a + 1; b < 16; ++b) {
        const auto [a1, a2] = inst->pairing[a];
        const auto [b1, b2] = inst->pairing[b];
        const auto j = qll::join(s, s.atom(a), s.atom(b));
        if (a1 != b1 && a2 != b2) {
          CHECK(j == AtomSet(16, {a, b}));
        } else if (a1 == b1) {
          auto side = qll::join(inst->right, inst->right.atom(a2), inst->right.atom(b2));
          CHECK(j == inst->rectangle(inst->left.atom(a1), side));
        } else {
          auto side = qll::join(inst->left, inst->left.atom(a1), inst->left.atom(b1));
          CHECK(j == inst->rectangle(side, inst->right.atom(a2)));
        }
      }
  }
}

TEST_CASE("inclusion chain on sampled relations") {
  const auto& p = products();
  const auto& sep = p.sep.product;
  const auto& star = p.star.product;
  const auto& top = p.top_implicit.product;
  const auto& down = p.down.instance.product;

  CHECK(qll::family_includes(star, sep));
  CHECK(qll::family_includes(p.top.product, star));
  CHECK(qll::family_includes(down, sep));
  CHECK(qll::family_includes(star, down));
  CHECK(qll::family_includes(p.top.product, down));

  std::mt19937_64 rng(1234);
  std::size_t samples = 0;
  for (int k = 0; k < 12000; ++k, ++samples) {
    std::uniform_real_distribution<double> d(0.05, 0.8);
    auto r = oracle::random_subset(rng, 16, d(rng));
    // Raw sample, plus its closures in the smaller families.
    for (const auto& a : {r, sep.closure(r), down.closure(r), star.closure(r)}) {
      if (sep.contains(a)) CHECK(star.contains(a));
      if (sep.contains(a)) CHECK(down.contains(a));
      if (down.contains(a)) CHECK(star.contains(a));
      if (star.contains(a)) CHECK(top.contains(a));
    }
  }
  CHECK(samples >= 10000);
}

TEST_CASE("family budget") {
  qll::Budgets tiny;
  tiny.family_cap = 20;
  CHECK_THROWS_AS(qll::sep_product(mo2(), mo2(), tiny), qll::BudgetExceeded);
}
