#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qll/budget.hpp"
#include "qll/closure_space.hpp"
#include "qll/hilbert.hpp"
#include "qll/permutation.hpp"

namespace qll {

/// A closure space on Sigma1 x Sigma2 together with its factors.
///
/// Product atom k corresponds to the pair pairing[k]; every constructor here
/// uses k = p1 * |Sigma2| + p2, but consumers read the pairing table rather
/// than assuming the arithmetic.
struct ProductInstance {
  std::string kind;  // sep, top, down, star, or custom
  ClosureSpace left;
  ClosureSpace right;
  ClosureSpace product;
  std::vector<std::pair<std::size_t, std::size_t>> pairing;

  std::size_t left_size() const { return left.universe_size(); }
  std::size_t right_size() const { return right.universe_size(); }
  /// Product atom for (p1, p2).
  std::size_t atom_of(std::size_t p1, std::size_t p2) const;

  /// a1 x Sigma2 u Sigma1 x a2.
  AtomSet cross(const AtomSet& a1, const AtomSet& a2) const;
  /// a1 x a2.
  AtomSet rectangle(const AtomSet& a1, const AtomSet& a2) const;
  /// {p1} x Sigma2.
  AtomSet row(std::size_t p1) const { return rectangle(left.atom(p1), right.universe()); }
  /// Sigma1 x {p2}.
  AtomSet column(std::size_t p2) const { return rectangle(left.universe(), right.atom(p2)); }

  /// The row-major pairing table for the given factor sizes.
  static std::vector<std::pair<std::size_t, std::size_t>> standard_pairing(std::size_t n1, std::size_t n2);
};

/// Builds an instance over explicit factors from an arbitrary family; throws
/// InputError if the family is not a simple closure space.
ProductInstance make_product_instance(std::string kind, const ClosureSpace& left, const ClosureSpace& right,
                                      std::vector<AtomSet> family, const Budgets& budgets = {});

/// (R1[p], R2[p]): the column through p restricted to Sigma1 and the row
/// through p restricted to Sigma2.
std::pair<AtomSet, AtomSet> sections(const AtomSet& relation, std::size_t n1, std::size_t n2,
                                     std::size_t p1, std::size_t p2);

/// All intersections of `generators` (including the empty intersection,
/// the universe), by pairwise closure to a fixpoint.
std::vector<AtomSet> intersection_closure(std::size_t universe_size, std::vector<AtomSet> generators,
                                          std::uint64_t cap = Budgets{}.family_cap);

/// Separated product: intersections of the crosses a1 x Sigma2 u Sigma1 x a2.
ProductInstance sep_product(const ClosureSpace& left, const ClosureSpace& right, const Budgets& budgets = {});

/// Top product: every relation whose rows are closed in `right` and columns
/// closed in `left`. Implicit backend.
ProductInstance top_product(const ClosureSpace& left, const ClosureSpace& right);

/// Explicit top product, enumerated row by row over the family of `right`.
/// Throws BudgetExceeded when the row enumeration exceeds the node cap.
ProductInstance materialize_top_product(const ClosureSpace& left, const ClosureSpace& right,
                                        const Budgets& budgets = {});

struct DownProduct {
  ProductInstance instance;
  TensorSpace tensor;
  std::size_t subspace_count = 0;
  std::size_t collisions = 0;  // distinct subspaces sharing a product-atom set
};

/// { sigma_down(V) : V a subspace of the tensor model }.
DownProduct down_product(const SubspaceModel& left, const SubspaceModel& right, const Budgets& budgets = {});

/// Proper relations whose every row is a coatom of `right` or Sigma2 and every
/// column a coatom of `left` or Sigma1.
std::vector<AtomSet> star_generators(const ClosureSpace& left, const ClosureSpace& right,
                                     const Budgets& budgets = {});

/// Intersections of star_generators. Requires coatomistic explicit factors.
ProductInstance star_product(const ClosureSpace& left, const ClosureSpace& right, const Budgets& budgets = {});

struct AxiomReport {
  struct Item {
    std::string axiom;
    bool passed = true;
    std::string detail;
    std::vector<AtomSet> witness;
  };
  std::vector<Item> items;

  bool passed() const;
  const Item* find(const std::string& axiom) const;
};

/// P1 (universe is Sigma1 x Sigma2), P2 (every cross is closed), P3 (closed
/// rectangles p1 x A2 / A1 x p2 have closed sides). Implicit products are
/// scanned over all subsets of each factor, which needs factors of at most 20
/// atoms.
AxiomReport check_p123(const ProductInstance& instance);

/// P4: for every (v1, v2) in T1 x T2, (p1, p2) -> (v1 p1, v2 p2) maps the
/// family onto itself. Explicit product required.
AxiomReport check_p4(const ProductInstance& instance, const std::vector<AtomPermutation>& t1,
                     const std::vector<AtomPermutation>& t2);

/// sep <= instance <= top, with strictness witnesses when available.
struct IntervalReport {
  bool lower_holds = true;
  bool lower_strict = false;
  std::optional<AtomSet> lower_violation;  // sep member missing from instance
  std::optional<AtomSet> lower_witness;    // instance member outside sep
  bool upper_holds = true;
  std::optional<bool> upper_strict;        // unknown when top is too large to materialize
  std::optional<AtomSet> upper_violation;  // instance member outside top
  std::optional<AtomSet> upper_witness;    // top member outside instance

  bool strict_both() const { return lower_holds && upper_holds && lower_strict && upper_strict.value_or(false); }
};

IntervalReport interval_check(const ProductInstance& instance, const Budgets& budgets = {});

/// Members of `outer` not in `inner`, canonically ordered.
std::vector<AtomSet> family_difference(const ClosureSpace& outer, const ClosureSpace& inner);
bool family_includes(const ClosureSpace& outer, const ClosureSpace& inner);

}  // namespace qll
