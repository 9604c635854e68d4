#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qll/budget.hpp"
#include "qll/closure_space.hpp"
#include "qll/ortho.hpp"
#include "qll/permutation.hpp"
#include "qll/products.hpp"

namespace qll {

/// True iff u maps the closed-set family onto itself.
bool is_automorphism(const ClosureSpace& space, const AtomPermutation& u);

/// True iff u maps the family of `from` onto the family of `to`.
bool is_isomorphism(const ClosureSpace& from, const ClosureSpace& to, const AtomPermutation& u);

/// All automorphisms of an explicit space, as atom permutations in canonical
/// order. Backtracks over atom images, pruned by each atom's closed-set size
/// profile and by checking every closed set as soon as all of its atoms have
/// images.
std::vector<AtomPermutation> automorphism_group(const ClosureSpace& space,
                                                std::uint64_t node_cap = Budgets{}.node_cap);

/// Orbits of the atom action, each sorted, ordered by smallest member.
std::vector<std::vector<std::size_t>> orbits(const std::vector<AtomPermutation>& group);

bool is_transitive(const std::vector<AtomPermutation>& group);

/// u(p)_{sigma(i)} = v_i(p_i). With swap, v1 maps Sigma1 to Sigma2 and v2
/// maps Sigma2 to Sigma1.
struct ProductDecomposition {
  bool swap = false;
  AtomPermutation v1;
  AtomPermutation v2;

  friend auto operator<=>(const ProductDecomposition&, const ProductDecomposition&) = default;
};

struct DecompositionResult {
  std::optional<ProductDecomposition> value;
  std::string failure;  // reason when value is empty
};

/// Reads sigma, v1, v2 off u and verifies them. Throws ContractViolation when
/// u is not an automorphism of the instance.
DecompositionResult decompose_automorphism(const ProductInstance& instance, const AtomPermutation& u);

struct InducedAutomorphism {
  AtomPermutation u;
  std::optional<AtomSet> failure_witness;  // closed set mapped outside the family

  bool is_automorphism() const { return !failure_witness; }
};

/// (p1, p2) -> (v1 p1, v2 p2), or (v2 p2, v1 p1) with swap, checked against the
/// instance family. Throws InputError when the factor maps are not
/// isomorphisms between the right factors.
InducedAutomorphism induced_product_automorphism(const ProductInstance& instance, const AtomPermutation& v1,
                                                 const AtomPermutation& v2, bool swap);

/// a -> (u(a'))' on family indices. Throws ContractViolation unless the result
/// is a join-preserving bijection.
std::vector<std::size_t> dual_automorphism(const ClosureSpace& space, const OrthoMap& ortho,
                                           const AtomPermutation& u);

}  // namespace qll
