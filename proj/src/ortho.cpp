#include "qll/ortho.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace qll {

OrthogonalityRelation::OrthogonalityRelation(std::vector<AtomSet> rows) : rows_(std::move(rows)) {
  const auto n = rows_.size();
  for (std::size_t p = 0; p < n; ++p) {
    if (rows_[p].universe_size() != n) throw InputError("orthogonality row has wrong universe size");
    if (rows_[p].contains(p))
      throw InputError("orthogonality relation is not irreflexive at atom " + std::to_string(p));
    rows_[p].for_each([&](std::size_t q) {
      if (!rows_[q].contains(p)) {
        throw InputError("orthogonality relation is not symmetric at (" + std::to_string(p) + "," +
                         std::to_string(q) + ")");
      }
    });
  }
}

OrthogonalityRelation OrthogonalityRelation::from_pairs(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<AtomSet> rows(n, AtomSet(n));
  for (auto [p, q] : pairs) {
    rows.at(p).insert(q);
    rows.at(q).insert(p);
  }
  return OrthogonalityRelation(std::move(rows));
}

OrthogonalityRelation product_orthogonality(const OrthogonalityRelation& left,
                                            const OrthogonalityRelation& right) {
  const auto n1 = left.universe_size(), n2 = right.universe_size();
  const auto n = n1 * n2;
  std::vector<AtomSet> rows(n, AtomSet(n));
  for (std::size_t p1 = 0; p1 < n1; ++p1)
    for (std::size_t p2 = 0; p2 < n2; ++p2)
      for (std::size_t q1 = 0; q1 < n1; ++q1)
        for (std::size_t q2 = 0; q2 < n2; ++q2)
          if (left.orthogonal(p1, q1) || right.orthogonal(p2, q2)) rows[p1 * n2 + p2].insert(q1 * n2 + q2);
  return OrthogonalityRelation(std::move(rows));
}

AtomSet OrthoMap::complement(const AtomSet& a) const {
  AtomSet acc = AtomSet::full(atom_image.size());
  a.for_each([&](std::size_t p) { acc &= atom_image[p]; });
  return acc;
}

namespace {

VerificationReport failure(std::string law, std::vector<AtomSet> sets, std::string detail) {
  return VerificationReport{false, std::move(law), std::move(sets), std::move(detail)};
}

}  // namespace

VerificationReport verify_orthocomplementation(const ClosureSpace& space, const OrthoMap& candidate) {
  const auto n = space.universe_size();
  if (candidate.atom_image.size() != n)
    throw InputError("ortho map assigns " + std::to_string(candidate.atom_image.size()) +
                     " atoms, space has " + std::to_string(n));
  auto co = coatoms(space);
  std::unordered_set<AtomSet, AtomSetHash> coatom_set(co.begin(), co.end());
  for (std::size_t p = 0; p < n; ++p) {
    if (!coatom_set.count(candidate.atom_image[p]))
      throw InputError("image of atom " + std::to_string(p) + " is not a coatom: " +
                       candidate.atom_image[p].to_string());
  }

  for (std::size_t p = 0; p < n; ++p) {
    if (candidate.atom_image[p].contains(p))
      return failure("complement-at-atoms", {space.atom(p), candidate.atom_image[p]},
                     "atom lies in its own complement");
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (candidate.atom_image[p].contains(q) != candidate.atom_image[q].contains(p))
        return failure("symmetry", {space.atom(p), space.atom(q)}, "q <= p' but not p <= q'");

  const auto& fam = space.family();
  const auto top = space.universe();
  std::vector<AtomSet> comp(fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& a = fam[i];
    comp[i] = candidate.complement(a);
    if (candidate.complement(comp[i]) != a)
      return failure("involution", {a, comp[i], candidate.complement(comp[i])}, "a'' != a");
    if ((a & comp[i]).size() != 0) return failure("meet-zero", {a, comp[i]}, "a & a' != 0");
    if (space.closure(a | comp[i]) != top) return failure("join-one", {a, comp[i]}, "a v a' != 1");
  }
  auto g = cover_graph(space);
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (auto j : g.upper[i])
      if (!comp[j].is_subset_of(comp[i]))
        return failure("order-reversal", {fam[i], fam[j]}, "a <= b but not b' <= a'");
  return {};
}

namespace {

class OrthoSearch {
 public:
  OrthoSearch(const ClosureSpace& space, const OrthoSearchOptions& opt)
      : space_(space), opt_(opt), nodes_(opt.node_cap), n_(space.universe_size()) {
    coatoms_ = coatoms(space);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::vector<std::size_t> degree(n_, 0);
    for (const auto& c : coatoms_) c.for_each([&](std::size_t p) { ++degree[p]; });
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
    assigned_.assign(n_, kNone);
    used_.assign(coatoms_.size(), false);
  }

  const std::vector<AtomSet>& coatom_list() const { return coatoms_; }

  OrthoSearchResult run() {
    OrthoSearchResult result;
    search(0, result);
    result.complete = !stopped_;
    result.nodes = nodes_.count();
    std::sort(result.maps.begin(), result.maps.end());
    return result;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  const AtomSet& image(std::size_t p) const { return coatoms_[assigned_[p]]; }

  bool consistent(std::size_t p, const AtomSet& c) const {
    if (c.contains(p)) return false;
    for (std::size_t q = 0; q < n_; ++q) {
      if (assigned_[q] == kNone) continue;
      // q <= p' iff p <= q'
      if (c.contains(q) != image(q).contains(p)) return false;
    }
    return true;
  }

  // For every atom r whose complement's atoms are all assigned, r'' = r.
  bool atoms_involutive() const {
    for (std::size_t r = 0; r < n_; ++r) {
      if (assigned_[r] == kNone) continue;
      const auto& rc = image(r);
      AtomSet acc = AtomSet::full(n_);
      bool all = true;
      rc.for_each([&](std::size_t q) {
        if (!all) return;
        if (assigned_[q] == kNone) {
          all = false;
          return;
        }
        acc &= image(q);
      });
      if (all && acc != space_.atom(r)) return false;
    }
    return true;
  }

  void search(std::size_t depth, OrthoSearchResult& result) {
    if (stopped_) return;
    nodes_.tick();
    if (depth == n_) {
      OrthoMap m;
      m.atom_image.reserve(n_);
      for (std::size_t p = 0; p < n_; ++p) m.atom_image.push_back(image(p));
      if (verify_orthocomplementation(space_, m).valid) {
        result.maps.push_back(std::move(m));
        if (result.maps.size() >= opt_.limit) stopped_ = true;
      }
      return;
    }
    const auto p = order_[depth];
    for (std::size_t c = 0; c < coatoms_.size() && !stopped_; ++c) {
      if (used_[c] || !consistent(p, coatoms_[c])) continue;
      assigned_[p] = c;
      used_[c] = true;
      if (atoms_involutive()) search(depth + 1, result);
      used_[c] = false;
      assigned_[p] = kNone;
    }
  }

  const ClosureSpace& space_;
  OrthoSearchOptions opt_;
  NodeCounter nodes_;
  std::size_t n_;
  std::vector<AtomSet> coatoms_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> assigned_;
  std::vector<bool> used_;
  bool stopped_ = false;
};

}  // namespace

OrthoSearchResult find_orthocomplementations(const ClosureSpace& space, const OrthoSearchOptions& options) {
  if (options.limit == 0) return OrthoSearchResult{{}, false, std::nullopt, 0};
  OrthoSearch search(space, options);
  const auto atom_count = space.universe_size();
  const auto coatom_count = search.coatom_list().size();
  if (options.use_counting_certificate && atom_count != coatom_count) {
    OrthoSearchResult r;
    r.complete = true;
    r.counting_certificate = std::make_pair(atom_count, coatom_count);
    return r;
  }
  return search.run();
}

OrthoConstruction ortho_from_atom_orthogonality(const ClosureSpace& space, const OrthogonalityRelation& rel) {
  const auto n = space.universe_size();
  if (rel.universe_size() != n) throw InputError("relation and space have different universes");
  auto co = coatoms(space);
  std::unordered_set<AtomSet, AtomSetHash> coatom_set(co.begin(), co.end());
  OrthoMap m;
  for (std::size_t p = 0; p < n; ++p) {
    if (!coatom_set.count(rel.row(p))) {
      return {std::nullopt, failure("not-a-coatom", {space.atom(p), rel.row(p)},
                                    "atoms orthogonal to " + std::to_string(p) + " do not form a coatom")};
    }
    m.atom_image.push_back(rel.row(p));
  }
  auto report = verify_orthocomplementation(space, m);
  if (!report.valid) return {std::nullopt, report};
  return {std::move(m), report};
}

std::optional<std::pair<AtomSet, AtomSet>> orthomodularity_failure(const ClosureSpace& space,
                                                                   const OrthoMap& ortho) {
  if (!verify_orthocomplementation(space, ortho).valid)
    throw ContractViolation("orthomodularity requires a verified orthocomplementation");
  const auto& fam = space.family();
  for (const auto& a : fam) {
    const auto ac = ortho.complement(a);
    for (const auto& b : fam) {
      if (!a.is_subset_of(b)) continue;
      if (space.closure(a | (b & ac)) != b) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

bool is_orthomodular(const ClosureSpace& space, const OrthoMap& ortho) {
  return !orthomodularity_failure(space, ortho);
}

namespace {

// Atoms t below p v q that p v q covers.
AtomSet covered_atoms_of_join(const ClosureSpace& space, std::size_t p, std::size_t q) {
  const auto j = space.closure(space.atom(p) | space.atom(q));
  AtomSet out(space.universe_size());
  j.for_each([&](std::size_t t) {
    if (covers(space, space.atom(t), j)) out.insert(t);
  });
  return out;
}

bool exists_join_covering(const ClosureSpace& space, std::size_t min_atoms) {
  const auto n = space.universe_size();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      auto cov = covered_atoms_of_join(space, p, q);
      if (cov.contains(p) && cov.contains(q) && cov.size() >= min_atoms) return true;
    }
  return false;
}

}  // namespace

bool third_atom_condition(const ClosureSpace& space) { return exists_join_covering(space, 3); }

bool four_atom_condition(const ClosureSpace& space) { return exists_join_covering(space, 4); }

bool cal0sym_condition(const ClosureSpace& space) {
  const auto n = space.universe_size();
  auto co = coatoms(space);
  for (const auto& x : co)
    for (const auto& y : co)
      if ((x | y).is_full()) return false;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p; q < n; ++q) {
      bool found = std::any_of(co.begin(), co.end(),
                               [&](const AtomSet& z) { return !z.contains(p) && !z.contains(q); });
      if (!found) return false;
    }
  return true;
}

bool every_atom_pair_join_has_third(const ClosureSpace& space) {
  const auto n = space.universe_size();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      if (space.closure(space.atom(p) | space.atom(q)).size() < 3) return false;
  return true;
}

}  // namespace qll
