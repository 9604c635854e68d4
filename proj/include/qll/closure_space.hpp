#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qll/atom_set.hpp"
#include "qll/budget.hpp"

namespace qll {

/// Outcome of checking a family against the simple-closure-space axioms.
struct ValidationReport {
  struct Violation {
    enum class Kind { MissingEmpty, MissingUniverse, MissingSingleton, MissingIntersection };
    Kind kind;
    AtomSet witness;             // the absent set
    std::optional<AtomSet> lhs;  // intersection operands, when relevant
    std::optional<AtomSet> rhs;
  };

  std::vector<Violation> violations;

  bool valid() const noexcept { return violations.empty(); }
  std::string summary() const;
};

const char* to_string(ValidationReport::Violation::Kind kind);

/// Lists every violation of: contains the empty set, the universe, every
/// singleton, and is closed under pairwise intersection. Throws InputError when
/// the members disagree on the universe size.
ValidationReport validate_simple_closure_space(std::size_t universe_size,
                                               const std::vector<AtomSet>& family);

/// A simple closure space on {0..n-1}.
///
/// Either backed by an explicit, canonically sorted family of closed sets, or
/// by an implicit membership test plus closure operator. Cheap to copy; the
/// backend is shared and immutable.
class ClosureSpace {
 public:
  using Membership = std::function<bool(const AtomSet&)>;
  using ClosureOp = std::function<AtomSet(const AtomSet&)>;

  ClosureSpace() = default;

  /// Sorts and deduplicates `family`, validates it, and throws InputError
  /// (with the validation summary) if it is not a simple closure space.
  static ClosureSpace from_family(std::size_t universe_size, std::vector<AtomSet> family,
                                  std::vector<std::string> atom_labels = {},
                                  std::uint64_t family_cap = Budgets{}.family_cap);

  static ClosureSpace implicit(std::size_t universe_size, Membership membership,
                               ClosureOp closure, std::vector<std::string> atom_labels = {});

  /// The full powerset of an n-atom universe.
  static ClosureSpace boolean(std::size_t n);

  std::size_t universe_size() const noexcept { return n_; }
  bool is_explicit() const noexcept { return static_cast<bool>(explicit_); }

  /// Closed sets in canonical order. Throws Unsupported for implicit spaces.
  const std::vector<AtomSet>& family() const;

  /// Position of a closed set in family(); nullopt if not closed.
  std::optional<std::size_t> index_of(const AtomSet& a) const;

  bool contains(const AtomSet& a) const;
  AtomSet closure(const AtomSet& a) const;

  AtomSet universe() const { return AtomSet::full(n_); }
  AtomSet empty_set() const { return AtomSet(n_); }
  AtomSet atom(std::size_t p) const { return AtomSet::singleton(n_, p); }

  const std::vector<std::string>& atom_labels() const noexcept { return labels_; }

  /// Equality of explicit spaces is equality of canonical families.
  friend bool operator==(const ClosureSpace& a, const ClosureSpace& b);

 private:
  struct ExplicitData {
    std::vector<AtomSet> family;
    std::unordered_map<AtomSet, std::size_t, AtomSetHash> index;
  };
  struct ImplicitData {
    Membership membership;
    ClosureOp closure;
  };

  void check_universe(const AtomSet& a) const;

  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::shared_ptr<const ExplicitData> explicit_;
  std::shared_ptr<const ImplicitData> implicit_;
};

/// Sorts by (cardinality, lexicographic member order) and removes duplicates.
void canonicalize(std::vector<AtomSet>& family);

AtomSet join(const ClosureSpace& space, const AtomSet& a, const AtomSet& b);
AtomSet meet(const ClosureSpace& space, const AtomSet& a, const AtomSet& b);

/// Hasse diagram of an explicit space, indexed by family position.
struct CoverGraph {
  std::vector<std::vector<std::size_t>> upper;  // upper[i]: indices covering i
  std::vector<std::vector<std::size_t>> lower;  // lower[i]: indices covered by i

  bool covers(std::size_t lo, std::size_t hi) const;
  std::size_t edge_count() const;
};

CoverGraph cover_graph(const ClosureSpace& space);

std::vector<AtomSet> coatoms(const ClosureSpace& space);
bool covers(const ClosureSpace& space, const AtomSet& a, const AtomSet& b);
std::vector<AtomSet> upper_covers(const ClosureSpace& space, const AtomSet& a);

/// A closed set `base` and an atom outside it whose join with `base` fails to
/// cover `base`.
struct CoveringWitness {
  AtomSet base;
  std::size_t atom;
  AtomSet join;
};

std::optional<CoveringWitness> covering_failure(const ClosureSpace& space);
bool has_covering_property(const ClosureSpace& space);
bool is_atomistic(const ClosureSpace& space);
bool is_coatomistic(const ClosureSpace& space);

/// Both the lattice and its order dual are atomistic with the covering
/// property. The dual is evaluated as a reindexed poset of the family.
bool is_dac(const ClosureSpace& space);

/// True iff every subset of the universe is closed.
bool is_powerset(const ClosureSpace& space);

}  // namespace qll
