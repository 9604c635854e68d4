#include "qll/products.hpp"

#include <algorithm>
#include <unordered_set>

namespace qll {

namespace {

std::vector<std::string> pair_labels(const ClosureSpace& left, const ClosureSpace& right) {
  const auto& l1 = left.atom_labels();
  const auto& l2 = right.atom_labels();
  std::vector<std::string> out;
  for (std::size_t p1 = 0; p1 < left.universe_size(); ++p1)
    for (std::size_t p2 = 0; p2 < right.universe_size(); ++p2) {
      auto a = l1.empty() ? std::to_string(p1) : l1[p1];
      auto b = l2.empty() ? std::to_string(p2) : l2[p2];
      out.push_back(a + "x" + b);
    }
  return out;
}

ProductInstance shell(std::string kind, const ClosureSpace& left, const ClosureSpace& right) {
  ProductInstance inst;
  inst.kind = std::move(kind);
  inst.left = left;
  inst.right = right;
  inst.pairing = ProductInstance::standard_pairing(left.universe_size(), right.universe_size());
  return inst;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> ProductInstance::standard_pairing(std::size_t n1,
                                                                                   std::size_t n2) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(n1 * n2);
  for (std::size_t p1 = 0; p1 < n1; ++p1)
    for (std::size_t p2 = 0; p2 < n2; ++p2) out.emplace_back(p1, p2);
  return out;
}

std::size_t ProductInstance::atom_of(std::size_t p1, std::size_t p2) const {
  const auto k = p1 * right_size() + p2;
  if (k < pairing.size() && pairing[k] == std::make_pair(p1, p2)) return k;
  for (std::size_t i = 0; i < pairing.size(); ++i)
    if (pairing[i] == std::make_pair(p1, p2)) return i;
  throw InputError("pair outside the product universe");
}

AtomSet ProductInstance::rectangle(const AtomSet& a1, const AtomSet& a2) const {
  AtomSet out(pairing.size());
  for (std::size_t k = 0; k < pairing.size(); ++k)
    if (a1.contains(pairing[k].first) && a2.contains(pairing[k].second)) out.insert(k);
  return out;
}

AtomSet ProductInstance::cross(const AtomSet& a1, const AtomSet& a2) const {
  AtomSet out(pairing.size());
  for (std::size_t k = 0; k < pairing.size(); ++k)
    if (a1.contains(pairing[k].first) || a2.contains(pairing[k].second)) out.insert(k);
  return out;
}

ProductInstance make_product_instance(std::string kind, const ClosureSpace& left, const ClosureSpace& right,
                                      std::vector<AtomSet> family, const Budgets& budgets) {
  auto inst = shell(std::move(kind), left, right);
  inst.product = ClosureSpace::from_family(inst.pairing.size(), std::move(family), pair_labels(left, right),
                                           budgets.family_cap);
  return inst;
}

std::pair<AtomSet, AtomSet> sections(const AtomSet& relation, std::size_t n1, std::size_t n2, std::size_t p1,
                                     std::size_t p2) {
  if (relation.universe_size() != n1 * n2) throw InputError("relation is not over Sigma1 x Sigma2");
  AtomSet col(n1), row(n2);
  for (std::size_t s = 0; s < n1; ++s)
    if (relation.contains(s * n2 + p2)) col.insert(s);
  for (std::size_t t = 0; t < n2; ++t)
    if (relation.contains(p1 * n2 + t)) row.insert(t);
  return {col, row};
}

std::vector<AtomSet> intersection_closure(std::size_t universe_size, std::vector<AtomSet> generators,
                                          std::uint64_t cap) {
  std::vector<AtomSet> list;
  std::unordered_set<AtomSet, AtomSetHash> seen;
  auto add = [&](const AtomSet& s) {
    if (seen.insert(s).second) {
      list.push_back(s);
      if (list.size() > cap) throw BudgetExceeded("family", cap);
    }
  };
  add(AtomSet::full(universe_size));
  for (const auto& g : generators) add(g);
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(list[i] & list[j]);
  canonicalize(list);
  return list;
}

ProductInstance sep_product(const ClosureSpace& left, const ClosureSpace& right, const Budgets& budgets) {
  auto inst = shell("sep", left, right);
  std::vector<AtomSet> gens;
  for (const auto& a1 : left.family())
    for (const auto& a2 : right.family()) gens.push_back(inst.cross(a1, a2));
  auto family = intersection_closure(inst.pairing.size(), std::move(gens), budgets.family_cap);
  inst.product = ClosureSpace::from_family(inst.pairing.size(), std::move(family), pair_labels(left, right),
                                           budgets.family_cap);
  return inst;
}

ProductInstance top_product(const ClosureSpace& left, const ClosureSpace& right) {
  auto inst = shell("top", left, right);
  const auto n1 = left.universe_size(), n2 = right.universe_size();

  auto membership = [left, right, n1, n2](const AtomSet& r) {
    for (std::size_t p1 = 0; p1 < n1; ++p1)
      if (!right.contains(sections(r, n1, n2, p1, 0).second)) return false;
    for (std::size_t p2 = 0; p2 < n2; ++p2)
      if (!left.contains(sections(r, n1, n2, 0, p2).first)) return false;
    return true;
  };

  // Alternate row and column closures until nothing changes. Each pass only
  // adds atoms, so this terminates within |Sigma1 x Sigma2| passes.
  auto closure = [left, right, n1, n2](const AtomSet& a) {
    AtomSet r = a;
    for (std::size_t pass = 0; pass <= n1 * n2; ++pass) {
      AtomSet before = r;
      for (std::size_t p1 = 0; p1 < n1; ++p1) {
        auto row = right.closure(sections(r, n1, n2, p1, 0).second);
        row.for_each([&](std::size_t t) { r.insert(p1 * n2 + t); });
      }
      for (std::size_t p2 = 0; p2 < n2; ++p2) {
        auto col = left.closure(sections(r, n1, n2, 0, p2).first);
        col.for_each([&](std::size_t s) { r.insert(s * n2 + p2); });
      }
      if (r == before) return r;
    }
    throw ContractViolation("top-product closure failed to reach a fixpoint");
  };

  inst.product = ClosureSpace::implicit(n1 * n2, membership, closure, pair_labels(left, right));
  return inst;
}

ProductInstance materialize_top_product(const ClosureSpace& left, const ClosureSpace& right,
                                        const Budgets& budgets) {
  const auto n1 = left.universe_size(), n2 = right.universe_size();
  const auto& rows = right.family();
  NodeCounter nodes(budgets.node_cap, "top-product row enumeration");
  std::vector<AtomSet> family;
  std::vector<std::size_t> choice(n1, 0);

  auto emit = [&]() {
    AtomSet r(n1 * n2);
    for (std::size_t p1 = 0; p1 < n1; ++p1)
      rows[choice[p1]].for_each([&](std::size_t t) { r.insert(p1 * n2 + t); });
    for (std::size_t p2 = 0; p2 < n2; ++p2)
      if (!left.contains(sections(r, n1, n2, 0, p2).first)) return;
    family.push_back(r);
    if (family.size() > budgets.family_cap) throw BudgetExceeded("family", budgets.family_cap);
  };

  // Odometer over row choices.
  while (true) {
    nodes.tick();
    emit();
    std::size_t i = 0;
    for (; i < n1; ++i) {
      if (++choice[i] < rows.size()) break;
      choice[i] = 0;
    }
    if (i == n1) break;
  }
  auto inst = shell("top", left, right);
  inst.product = ClosureSpace::from_family(n1 * n2, std::move(family), pair_labels(left, right), budgets.family_cap);
  return inst;
}

DownProduct down_product(const SubspaceModel& left, const SubspaceModel& right, const Budgets& budgets) {
  auto ts = make_tensor_space(left, right);
  auto subspaces = enumerate_subspaces(ts.tensor, budgets.subspace_cap);
  std::vector<AtomSet> family;
  family.reserve(subspaces.size());
  for (const auto& v : subspaces) family.push_back(sigma_down(ts, v));
  const auto total = family.size();
  canonicalize(family);
  const auto collisions = total - family.size();

  auto l1 = projective_closure_space(left, budgets.subspace_cap);
  auto l2 = projective_closure_space(right, budgets.subspace_cap);
  auto inst = make_product_instance("down", l1, l2, std::move(family), budgets);
  return DownProduct{std::move(inst), std::move(ts), total, collisions};
}

std::vector<AtomSet> star_generators(const ClosureSpace& left, const ClosureSpace& right, const Budgets& budgets) {
  const auto n1 = left.universe_size(), n2 = right.universe_size();
  auto row_options = coatoms(right);
  row_options.push_back(right.universe());
  auto col_options = coatoms(left);
  col_options.push_back(left.universe());

  NodeCounter nodes(budgets.node_cap, "star generator enumeration");
  std::vector<AtomSet> out;
  std::vector<std::size_t> choice(n1);

  // Column t restricted to rows 0..depth must agree with some allowed column.
  auto columns_feasible = [&](std::size_t depth, bool exact) {
    AtomSet prefix(n1);
    for (std::size_t s = 0; s <= depth; ++s) prefix.insert(s);
    for (std::size_t t = 0; t < n2; ++t) {
      AtomSet col(n1);
      for (std::size_t s = 0; s <= depth; ++s)
        if (row_options[choice[s]].contains(t)) col.insert(s);
      bool ok = std::any_of(col_options.begin(), col_options.end(), [&](const AtomSet& c) {
        return exact ? c == col : (c & prefix) == col;
      });
      if (!ok) return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    nodes.tick();
    for (std::size_t o = 0; o < row_options.size(); ++o) {
      choice[depth] = o;
      const bool last = depth + 1 == n1;
      if (!columns_feasible(depth, last)) continue;
      if (!last) {
        self(self, depth + 1);
        continue;
      }
      AtomSet r(n1 * n2);
      for (std::size_t p1 = 0; p1 < n1; ++p1)
        row_options[choice[p1]].for_each([&](std::size_t t) { r.insert(p1 * n2 + t); });
      if (!r.is_full()) out.push_back(r);
    }
  };
  recurse(recurse, 0);
  canonicalize(out);
  return out;
}

ProductInstance star_product(const ClosureSpace& left, const ClosureSpace& right, const Budgets& budgets) {
  if (!is_coatomistic(left) || !is_coatomistic(right))
    throw ContractViolation("star product requires coatomistic factors");
  auto inst = shell("star", left, right);
  auto family = intersection_closure(inst.pairing.size(), star_generators(left, right, budgets), budgets.family_cap);
  inst.product = ClosureSpace::from_family(inst.pairing.size(), std::move(family), pair_labels(left, right),
                                           budgets.family_cap);
  return inst;
}

bool AxiomReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.passed; });
}

const AxiomReport::Item* AxiomReport::find(const std::string& axiom) const {
  for (const auto& i : items)
    if (i.axiom == axiom) return &i;
  return nullptr;
}

namespace {

AxiomReport::Item check_p3_rectangles(const ProductInstance& inst) {
  AxiomReport::Item item{"P3", true, "", {}};
  const auto n1 = inst.left_size(), n2 = inst.right_size();
  auto fail = [&](const AtomSet& r, const AtomSet& side, const char* which) {
    item.passed = false;
    item.detail = std::string("closed rectangle with non-closed ") + which + " side";
    item.witness = {r, side};
  };

  if (inst.product.is_explicit()) {
    for (const auto& r : inst.product.family()) {
      if (r.empty()) continue;
      AtomSet rows_used(n1), cols_used(n2);
      r.for_each([&](std::size_t k) {
        rows_used.insert(inst.pairing[k].first);
        cols_used.insert(inst.pairing[k].second);
      });
      if (rows_used.size() == 1 && !inst.right.contains(cols_used)) {
        fail(r, cols_used, "right");
        return item;
      }
      if (cols_used.size() == 1 && !inst.left.contains(rows_used)) {
        fail(r, rows_used, "left");
        return item;
      }
    }
    return item;
  }

  if (n1 > 20 || n2 > 20) throw Unsupported("P3 on an implicit product needs factors of at most 20 atoms");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n2); ++mask) {
    AtomSet a2(n2);
    for (std::size_t t = 0; t < n2; ++t)
      if ((mask >> t) & 1U) a2.insert(t);
    if (inst.right.contains(a2)) continue;
    for (std::size_t p1 = 0; p1 < n1; ++p1) {
      auto r = inst.rectangle(inst.left.atom(p1), a2);
      if (inst.product.contains(r)) {
        fail(r, a2, "right");
        return item;
      }
    }
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n1); ++mask) {
    AtomSet a1(n1);
    for (std::size_t s = 0; s < n1; ++s)
      if ((mask >> s) & 1U) a1.insert(s);
    if (inst.left.contains(a1)) continue;
    for (std::size_t p2 = 0; p2 < n2; ++p2) {
      auto r = inst.rectangle(a1, inst.right.atom(p2));
      if (inst.product.contains(r)) {
        fail(r, a1, "left");
        return item;
      }
    }
  }
  return item;
}

}  // namespace

AxiomReport check_p123(const ProductInstance& inst) {
  AxiomReport report;
  const auto n1 = inst.left_size(), n2 = inst.right_size();

  AxiomReport::Item p1{"P1", true, "", {}};
  if (inst.product.universe_size() != n1 * n2 || inst.pairing.size() != n1 * n2) {
    p1.passed = false;
    p1.detail = "product universe is not Sigma1 x Sigma2";
  } else {
    std::vector<bool> seen(n1 * n2, false);
    for (auto [a, b] : inst.pairing) {
      if (a >= n1 || b >= n2 || seen[a * n2 + b]) {
        p1.passed = false;
        p1.detail = "pairing is not a bijection onto Sigma1 x Sigma2";
        break;
      }
      seen[a * n2 + b] = true;
    }
  }
  report.items.push_back(p1);
  if (!p1.passed) return report;

  AxiomReport::Item p2{"P2", true, "", {}};
  for (const auto& a1 : inst.left.family()) {
    for (const auto& a2 : inst.right.family()) {
      auto x = inst.cross(a1, a2);
      if (!inst.product.contains(x)) {
        p2.passed = false;
        p2.detail = "cross is not closed";
        p2.witness = {a1, a2, x};
        break;
      }
    }
    if (!p2.passed) break;
  }
  report.items.push_back(p2);
  report.items.push_back(check_p3_rectangles(inst));
  return report;
}

AxiomReport check_p4(const ProductInstance& inst, const std::vector<AtomPermutation>& t1,
                     const std::vector<AtomPermutation>& t2) {
  const auto& fam = inst.product.family();
  AxiomReport::Item item{"P4", true, "", {}};
  std::size_t checked = 0;
  for (std::size_t i = 0; i < t1.size() && item.passed; ++i) {
    for (std::size_t j = 0; j < t2.size() && item.passed; ++j) {
      std::vector<std::size_t> image(inst.pairing.size());
      for (std::size_t k = 0; k < inst.pairing.size(); ++k)
        image[k] = inst.atom_of(t1[i](inst.pairing[k].first), t2[j](inst.pairing[k].second));
      AtomPermutation u(std::move(image));
      for (const auto& r : fam) {
        auto img = u.apply(r);
        if (!inst.product.contains(img)) {
          item.passed = false;
          item.detail = "pair (" + std::to_string(i) + "," + std::to_string(j) + ") maps a closed set outside";
          item.witness = {r, img};
          break;
        }
      }
      ++checked;
    }
  }
  if (item.passed) item.detail = std::to_string(checked) + " pairs checked";
  AxiomReport report;
  report.items.push_back(item);
  return report;
}

std::vector<AtomSet> family_difference(const ClosureSpace& outer, const ClosureSpace& inner) {
  std::vector<AtomSet> out;
  for (const auto& a : outer.family())
    if (!inner.contains(a)) out.push_back(a);
  return out;
}

bool family_includes(const ClosureSpace& outer, const ClosureSpace& inner) {
  const auto& fam = inner.family();
  return std::all_of(fam.begin(), fam.end(), [&](const AtomSet& a) { return outer.contains(a); });
}

IntervalReport interval_check(const ProductInstance& inst, const Budgets& budgets) {
  IntervalReport rep;
  auto sep = sep_product(inst.left, inst.right, budgets);
  for (const auto& a : sep.product.family())
    if (!inst.product.contains(a)) {
      rep.lower_holds = false;
      rep.lower_violation = a;
      break;
    }
  auto extra = family_difference(inst.product, sep.product);
  rep.lower_strict = !extra.empty();
  if (!extra.empty()) rep.lower_witness = extra.front();

  auto top = top_product(inst.left, inst.right);
  for (const auto& a : inst.product.family())
    if (!top.product.contains(a)) {
      rep.upper_holds = false;
      rep.upper_violation = a;
      break;
    }
  try {
    auto topx = materialize_top_product(inst.left, inst.right, budgets);
    auto missing = family_difference(topx.product, inst.product);
    rep.upper_strict = !missing.empty();
    if (!missing.empty()) rep.upper_witness = missing.front();
  } catch (const BudgetExceeded&) {
    rep.upper_strict.reset();
  }
  return rep;
}

}  // namespace qll
