#include "qll/automorphisms.hpp"

#include <algorithm>
#include <numeric>

namespace qll {

bool is_isomorphism(const ClosureSpace& from, const ClosureSpace& to, const AtomPermutation& u) {
  if (u.size() != from.universe_size() || from.universe_size() != to.universe_size()) return false;
  const auto& fam = from.family();
  if (fam.size() != to.family().size()) return false;
  return std::all_of(fam.begin(), fam.end(), [&](const AtomSet& a) { return to.contains(u.apply(a)); });
}

bool is_automorphism(const ClosureSpace& space, const AtomPermutation& u) { return is_isomorphism(space, space, u); }

namespace {

class AutomorphismSearch {
 public:
  AutomorphismSearch(const ClosureSpace& space, std::uint64_t cap)
      : space_(space), fam_(space.family()), n_(space.universe_size()), nodes_(cap, "automorphism search") {
    // Size profile: how many closed sets of each cardinality contain the atom.
    profile_.assign(n_, std::vector<std::size_t>(n_ + 1, 0));
    for (const auto& a : fam_) a.for_each([&](std::size_t p) { ++profile_[p][a.size()]; });

    // Closed sets are checked at the depth where their last atom is mapped.
    by_last_.resize(n_);
    for (const auto& a : fam_)
      if (!a.empty()) by_last_[max_atom(a)].push_back(&a);

    image_.assign(n_, kNone);
    taken_.assign(n_, false);
  }

  std::vector<AtomPermutation> run() {
    search(0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  static std::size_t max_atom(const AtomSet& a) {
    std::size_t last = 0;
    a.for_each([&](std::size_t p) { last = p; });
    return last;
  }

  bool closed_sets_ok(std::size_t p) const {
    for (const AtomSet* a : by_last_[p]) {
      AtomSet img(n_);
      a->for_each([&](std::size_t x) { img.insert(image_[x]); });
      if (!space_.contains(img)) return false;
    }
    return true;
  }

  void search(std::size_t p) {
    nodes_.tick();
    if (p == n_) {
      found_.emplace_back(image_);
      return;
    }
    for (std::size_t t = 0; t < n_; ++t) {
      if (taken_[t] || profile_[p] != profile_[t]) continue;
      image_[p] = t;
      taken_[t] = true;
      if (closed_sets_ok(p)) search(p + 1);
      taken_[t] = false;
      image_[p] = kNone;
    }
  }

  const ClosureSpace& space_;
  const std::vector<AtomSet>& fam_;
  std::size_t n_;
  NodeCounter nodes_;
  std::vector<std::vector<std::size_t>> profile_;
  std::vector<std::vector<const AtomSet*>> by_last_;
  std::vector<std::size_t> image_;
  std::vector<bool> taken_;
  std::vector<AtomPermutation> found_;
};

}  // namespace

std::vector<AtomPermutation> automorphism_group(const ClosureSpace& space, std::uint64_t node_cap) {
  return AutomorphismSearch(space, node_cap).run();
}

std::vector<std::vector<std::size_t>> orbits(const std::vector<AtomPermutation>& group) {
  if (group.empty()) throw ContractViolation("orbits of an empty group");
  const auto n = group.front().size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : group)
    for (std::size_t p = 0; p < n; ++p) {
      auto a = find(p), b = find(g(p));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (std::size_t p = 0; p < n; ++p) {
    auto r = find(p);
    if (slot[r] == static_cast<std::size_t>(-1)) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(p);
  }
  return out;
}

bool is_transitive(const std::vector<AtomPermutation>& group) { return orbits(group).size() == 1; }

DecompositionResult decompose_automorphism(const ProductInstance& inst, const AtomPermutation& u) {
  if (!is_automorphism(inst.product, u)) throw ContractViolation("permutation is not an automorphism");
  const auto n1 = inst.left_size(), n2 = inst.right_size();

  const auto first_row = u.apply(inst.row(0));
  bool swap = false;
  bool matched = false;
  for (std::size_t q = 0; q < n1 && !matched; ++q)
    if (first_row == inst.row(q)) matched = true;
  for (std::size_t q = 0; q < n2 && !matched; ++q)
    if (first_row == inst.column(q)) matched = swap = true;
  if (!matched) return {std::nullopt, "image of the first row is neither a row nor a column"};
  if (swap && n1 != n2) return {std::nullopt, "swap between factors of different sizes"};

  auto pair_of = [&](std::size_t p1, std::size_t p2) { return inst.pairing[u(inst.atom_of(p1, p2))]; };
  std::vector<std::size_t> v1(n1), v2(n2);
  for (std::size_t p1 = 0; p1 < n1; ++p1) v1[p1] = swap ? pair_of(p1, 0).second : pair_of(p1, 0).first;
  for (std::size_t p2 = 0; p2 < n2; ++p2) v2[p2] = swap ? pair_of(0, p2).first : pair_of(0, p2).second;

  for (std::size_t p1 = 0; p1 < n1; ++p1)
    for (std::size_t p2 = 0; p2 < n2; ++p2) {
      auto got = pair_of(p1, p2);
      auto want = swap ? std::make_pair(v2[p2], v1[p1]) : std::make_pair(v1[p1], v2[p2]);
      if (got != want) return {std::nullopt, "u does not act coordinatewise at (" + std::to_string(p1) + "," +
                                                 std::to_string(p2) + ")"};
    }

  ProductDecomposition d;
  try {
    d.v1 = AtomPermutation(std::move(v1));
    d.v2 = AtomPermutation(std::move(v2));
  } catch (const InputError&) {
    return {std::nullopt, "factor map is not a bijection"};
  }
  d.swap = swap;
  const auto& to1 = swap ? inst.right : inst.left;
  const auto& to2 = swap ? inst.left : inst.right;
  if (!is_isomorphism(inst.left, to1, d.v1)) return {std::nullopt, "v1 is not an isomorphism"};
  if (!is_isomorphism(inst.right, to2, d.v2)) return {std::nullopt, "v2 is not an isomorphism"};
  return {std::move(d), ""};
}

InducedAutomorphism induced_product_automorphism(const ProductInstance& inst, const AtomPermutation& v1,
                                                 const AtomPermutation& v2, bool swap) {
  const auto& to1 = swap ? inst.right : inst.left;
  const auto& to2 = swap ? inst.left : inst.right;
  if (!is_isomorphism(inst.left, to1, v1)) throw InputError("v1 is not an isomorphism of the left factor");
  if (!is_isomorphism(inst.right, to2, v2)) throw InputError("v2 is not an isomorphism of the right factor");

  std::vector<std::size_t> image(inst.pairing.size());
  for (std::size_t k = 0; k < inst.pairing.size(); ++k) {
    auto [p1, p2] = inst.pairing[k];
    image[k] = swap ? inst.atom_of(v2(p2), v1(p1)) : inst.atom_of(v1(p1), v2(p2));
  }
  InducedAutomorphism out{AtomPermutation(std::move(image)), std::nullopt};
  for (const auto& a : inst.product.family()) {
    if (!inst.product.contains(out.u.apply(a))) {
      out.failure_witness = a;
      break;
    }
  }
  return out;
}

std::vector<std::size_t> dual_automorphism(const ClosureSpace& space, const OrthoMap& ortho,
                                           const AtomPermutation& u) {
  if (!verify_orthocomplementation(space, ortho).valid)
    throw ContractViolation("dual automorphism needs a verified orthocomplementation");
  if (!is_automorphism(space, u)) throw ContractViolation("permutation is not an automorphism");
  const auto& fam = space.family();
  std::vector<std::size_t> map(fam.size());
  std::vector<bool> hit(fam.size(), false);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    auto img = ortho.complement(u.apply(ortho.complement(fam[i])));
    auto idx = space.index_of(img);
    if (!idx || hit[*idx]) throw ContractViolation("dual automorphism is not a bijection on closed sets");
    hit[*idx] = true;
    map[i] = *idx;
  }
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      auto jn = space.index_of(space.closure(fam[i] | fam[j]));
      auto jm = space.closure(fam[map[i]] | fam[map[j]]);
      if (fam[map[*jn]] != jm) throw ContractViolation("dual automorphism does not preserve joins");
    }
  return map;
}

}  // namespace qll
