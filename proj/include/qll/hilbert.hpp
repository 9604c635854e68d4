#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qll/budget.hpp"
#include "qll/closure_space.hpp"
#include "qll/finite_field.hpp"
#include "qll/ortho.hpp"
#include "qll/permutation.hpp"

namespace qll {

/// GF(q)^n with a symmetric nondegenerate bilinear form: the finite stand-in
/// for a Hilbert space. Atoms are the projective points, normalized so the
/// first nonzero coordinate is 1 and ordered by little-endian base-q value.
class SubspaceModel {
 public:
  /// Throws InputError for a non-prime modulus, a non-square or asymmetric
  /// form, or a degenerate form.
  static SubspaceModel make(int q, const gf::Matrix& form);
  static SubspaceModel standard(int q, int n) { return make(q, gf::Matrix::Identity(n, n)); }

  int q() const noexcept { return q_; }
  int dimension() const noexcept { return static_cast<int>(form_.rows()); }
  const gf::Matrix& form() const noexcept { return form_; }

  std::size_t atom_count() const noexcept { return atoms_.size(); }
  const std::vector<gf::Vector>& atoms() const noexcept { return atoms_; }
  const gf::Vector& atom(std::size_t i) const { return atoms_.at(i); }
  /// Index of the projective point spanned by a nonzero vector.
  std::size_t atom_index(const gf::Vector& v) const;

  int form_value(const gf::Vector& x, const gf::Vector& y) const;

  /// (n1, n2) when this model was built as a tensor product.
  const std::optional<std::pair<int, int>>& factor_dimensions() const noexcept { return factors_; }

  std::vector<std::string> atom_labels() const;

 private:
  friend SubspaceModel tensor_model(const SubspaceModel&, const SubspaceModel&);

  int q_ = 3;
  gf::Matrix form_;
  std::vector<gf::Vector> atoms_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::optional<std::pair<int, int>> factors_;
};

/// A subspace, held as the reduced row echelon form of a basis.
struct Subspace {
  gf::Matrix basis;  // dim x n

  int dimension() const { return static_cast<int>(basis.rows()); }
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.basis.rows() == b.basis.rows() && a.basis.cols() == b.basis.cols() && a.basis == b.basis;
  }
};

Subspace span(const SubspaceModel& model, const gf::Matrix& rows);
Subspace zero_subspace(const SubspaceModel& model);
Subspace full_subspace(const SubspaceModel& model);
bool contains_vector(const SubspaceModel& model, const Subspace& v, const gf::Vector& x);
bool is_subspace_of(const SubspaceModel& model, const Subspace& v, const Subspace& w);

/// { x : form(x, b) = 0 for every b in v }.
Subspace orthogonal_complement(const SubspaceModel& model, const Subspace& v);

/// Projective points lying in v.
AtomSet atoms_in(const SubspaceModel& model, const Subspace& v);

/// Every subspace, by dimension then by echelon pattern.
std::vector<Subspace> enumerate_subspaces(const SubspaceModel& model,
                                          std::uint64_t cap = Budgets{}.subspace_cap);

/// Closure space of projective points whose closed sets are the point sets of
/// subspaces. No orthogonality is attached, so isotropic forms are fine.
ClosureSpace projective_closure_space(const SubspaceModel& model,
                                      std::uint64_t subspace_cap = Budgets{}.subspace_cap);

/// Projective closure space plus p perp q iff form(p, q) = 0. Throws
/// InputError when some point is isotropic (p perp p), Unsupported when q is
/// not an odd prime.
OrthoSpace build_projective_space(const SubspaceModel& model,
                                  std::uint64_t subspace_cap = Budgets{}.subspace_cap);

/// MO_n: 2n atoms, closed sets {empty, singletons, all}, pairs (2k, 2k+1)
/// orthogonal.
OrthoSpace mo_lattice(std::size_t n);

/// GF(q)^(n1 n2) with the Kronecker form; coordinate i * n2 + j is e_i (x) e_j.
SubspaceModel tensor_model(const SubspaceModel& left, const SubspaceModel& right);

gf::Vector tensor_vector(const gf::Vector& x, const gf::Vector& y);

/// Two factor models, their tensor model, and the map from product atoms
/// (p1 * |atoms2| + p2) to atoms of the tensor model.
struct TensorSpace {
  SubspaceModel left;
  SubspaceModel right;
  SubspaceModel tensor;
  std::vector<std::size_t> product_atom;

  std::size_t pair_count() const { return product_atom.size(); }
};

/// Throws InputError for mismatched moduli.
TensorSpace make_tensor_space(const SubspaceModel& left, const SubspaceModel& right);

/// Injective map Sigma1 x Sigma2 -> atoms of the tensor model, p1 (x) p2.
std::vector<std::size_t> product_atoms(const SubspaceModel& left, const SubspaceModel& right,
                                       const SubspaceModel& tensor);

/// Pairs (p1, p2) with p1 (x) p2 in v.
AtomSet sigma_down(const TensorSpace& ts, const Subspace& v);

struct GroupOptions {
  bool isometries_only = false;  // multiplier fixed to 1
  std::uint64_t node_cap = Budgets{}.node_cap;
};

/// Atom permutations induced by invertible g with form(gx, gy) = l form(x, y),
/// l != 0. Canonically sorted, duplicate-free.
std::vector<AtomPermutation> similitude_group(const SubspaceModel& model, const GroupOptions& opt = {});

/// (p1, p2) -> (v1 p1, v2 p2) for all v1, v2 in the factor similitude groups.
std::vector<AtomPermutation> tensor_similitudes(const SubspaceModel& left, const SubspaceModel& right,
                                                const GroupOptions& opt = {});

/// Pairs (p, q) with form2(q, A p) = 0, for A an n2 x n1 matrix. Throws
/// InputError for the zero map.
AtomSet linear_map_coatom(const SubspaceModel& left, const SubspaceModel& right, const gf::Matrix& a);

}  // namespace qll
