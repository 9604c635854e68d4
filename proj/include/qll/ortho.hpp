#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qll/atom_set.hpp"
#include "qll/budget.hpp"
#include "qll/closure_space.hpp"

namespace qll {

/// Symmetric, irreflexive binary relation on atoms.
class OrthogonalityRelation {
 public:
  OrthogonalityRelation() = default;

  /// rows[p] is the set of atoms orthogonal to p. Throws InputError when the
  /// relation is not symmetric or not irreflexive.
  explicit OrthogonalityRelation(std::vector<AtomSet> rows);

  static OrthogonalityRelation from_pairs(std::size_t n,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  std::size_t universe_size() const noexcept { return rows_.size(); }
  bool orthogonal(std::size_t p, std::size_t q) const { return rows_.at(p).contains(q); }
  const AtomSet& row(std::size_t p) const { return rows_.at(p); }
  const std::vector<AtomSet>& rows() const noexcept { return rows_; }

  friend bool operator==(const OrthogonalityRelation&, const OrthogonalityRelation&) = default;

 private:
  std::vector<AtomSet> rows_;
};

/// (p1,p2) # (q1,q2) iff p1 is orthogonal to q1 or p2 is orthogonal to q2,
/// on the product universe indexed p1 * n2 + p2.
OrthogonalityRelation product_orthogonality(const OrthogonalityRelation& left,
                                            const OrthogonalityRelation& right);

/// A closure space together with an orthogonality relation on its atoms.
struct OrthoSpace {
  ClosureSpace space;
  OrthogonalityRelation perp;
};

/// Candidate orthocomplementation, given by the coatom assigned to each atom.
/// The complement of a closed set a is the intersection of the images of the
/// atoms in a.
struct OrthoMap {
  std::vector<AtomSet> atom_image;

  AtomSet complement(const AtomSet& a) const;

  friend bool operator==(const OrthoMap&, const OrthoMap&) = default;
  friend bool operator<(const OrthoMap& a, const OrthoMap& b) { return a.atom_image < b.atom_image; }
};

struct VerificationReport {
  bool valid = true;
  std::string law;                   // first law broken, empty when valid
  std::vector<AtomSet> counterexample;
  std::string detail;
};

/// Checks the complement law at atoms, symmetry, involution, order reversal,
/// a & a' = 0 and a v a' = 1 over every closed set. Throws InputError when an
/// atom image is not a coatom.
VerificationReport verify_orthocomplementation(const ClosureSpace& space, const OrthoMap& candidate);

struct OrthoSearchOptions {
  std::size_t limit = 1;
  std::uint64_t node_cap = Budgets{}.node_cap;
  // Stop immediately when #atoms != #coatoms. Disable to force the
  // backtracking search to establish emptiness on its own.
  bool use_counting_certificate = true;
};

struct OrthoSearchResult {
  std::vector<OrthoMap> maps;
  bool complete = false;  // the whole space was searched (or certified empty)
  std::optional<std::pair<std::size_t, std::size_t>> counting_certificate;  // (#atoms, #coatoms)
  std::uint64_t nodes = 0;
};

/// Exhaustive backtracking over injective atom -> coatom assignments. Throws
/// BudgetExceeded when the node cap is hit before the search finishes.
OrthoSearchResult find_orthocomplementations(const ClosureSpace& space,
                                             const OrthoSearchOptions& options = {});

struct OrthoConstruction {
  std::optional<OrthoMap> ortho;
  VerificationReport report;
};

/// p' := { q : q perp p }. Fails (with the law named) unless every p' is a
/// coatom and the induced map verifies.
OrthoConstruction ortho_from_atom_orthogonality(const ClosureSpace& space,
                                                const OrthogonalityRelation& rel);

/// Closed sets a <= b with b != a v (b & a').
std::optional<std::pair<AtomSet, AtomSet>> orthomodularity_failure(const ClosureSpace& space,
                                                                   const OrthoMap& ortho);
bool is_orthomodular(const ClosureSpace& space, const OrthoMap& ortho);

// Structural hypotheses, evaluated literally by exhaustive scan.

/// Two atoms p, q such that p v q contains a third atom r and covers p, q, r.
bool third_atom_condition(const ClosureSpace& space);
/// Four atoms p, q, r, s such that p v q covers each of them.
bool four_atom_condition(const ClosureSpace& space);
/// For all coatoms x, y and atoms p, q there is an atom r outside x u y and a
/// coatom z avoiding p and q.
bool cal0sym_condition(const ClosureSpace& space);
/// The join of any two distinct atoms contains a third atom.
bool every_atom_pair_join_has_third(const ClosureSpace& space);

}  // namespace qll
