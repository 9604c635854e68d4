#include "qll/hilbert.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace qll {

SubspaceModel SubspaceModel::make(int q, const gf::Matrix& form) {
  if (!gf::is_prime(q)) throw InputError("field modulus " + std::to_string(q) + " is not prime");
  if (form.rows() != form.cols() || form.rows() < 1) throw InputError("form must be a nonempty square matrix");
  gf::Matrix f = gf::reduced(form, q);
  if (f != f.transpose()) throw InputError("form is not symmetric");
  if (gf::rank(f, q) != f.rows()) throw InputError("form is degenerate");

  SubspaceModel m;
  m.q_ = q;
  m.form_ = f;
  const int n = static_cast<int>(f.rows());
  gf::for_each_matrix(n, 1, q, [&](const gf::Matrix& v) {
    gf::Vector x = v.col(0);
    if (!x.isZero() && gf::normalize_projective(x, q) == x) m.atoms_.push_back(x);
    return true;
  });
  std::sort(m.atoms_.begin(), m.atoms_.end(), [q](const gf::Vector& a, const gf::Vector& b) {
    return gf::little_endian_key(a, q) < gf::little_endian_key(b, q);
  });
  for (std::size_t i = 0; i < m.atoms_.size(); ++i) m.index_.emplace(gf::little_endian_key(m.atoms_[i], q), i);
  return m;
}

std::size_t SubspaceModel::atom_index(const gf::Vector& v) const {
  if (v.size() != dimension()) throw InputError("vector has wrong dimension");
  auto it = index_.find(gf::little_endian_key(gf::normalize_projective(v, q_), q_));
  return it->second;
}

int SubspaceModel::form_value(const gf::Vector& x, const gf::Vector& y) const {
  long long acc = 0;
  for (int i = 0; i < dimension(); ++i)
    for (int j = 0; j < dimension(); ++j) acc += static_cast<long long>(x(i)) * form_(i, j) * y(j);
  return gf::mod(acc, q_);
}

std::vector<std::string> SubspaceModel::atom_labels() const {
  std::vector<std::string> out;
  for (const auto& a : atoms_) {
    std::string s = "(";
    for (int i = 0; i < a.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(a(i));
    }
    out.push_back(s + ")");
  }
  return out;
}

Subspace span(const SubspaceModel& model, const gf::Matrix& rows) {
  if (rows.cols() != model.dimension()) throw InputError("basis vectors have wrong dimension");
  return Subspace{gf::rref(rows, model.q()).rows};
}

Subspace zero_subspace(const SubspaceModel& model) {
  return Subspace{gf::Matrix::Zero(0, model.dimension())};
}

Subspace full_subspace(const SubspaceModel& model) {
  return Subspace{gf::Matrix::Identity(model.dimension(), model.dimension())};
}

bool contains_vector(const SubspaceModel& model, const Subspace& v, const gf::Vector& x) {
  const int q = model.q();
  gf::Vector r = gf::reduced(x, q);
  // Basis is in RREF: eliminate each pivot in turn.
  for (int i = 0; i < v.basis.rows(); ++i) {
    int pivot = 0;
    while (v.basis(i, pivot) == 0) ++pivot;
    const int f = r(pivot);
    if (f != 0) r = gf::reduced(r - f * v.basis.row(i).transpose(), q);
  }
  return r.isZero();
}

bool is_subspace_of(const SubspaceModel& model, const Subspace& v, const Subspace& w) {
  for (int i = 0; i < v.basis.rows(); ++i)
    if (!contains_vector(model, w, v.basis.row(i).transpose())) return false;
  return true;
}

Subspace orthogonal_complement(const SubspaceModel& model, const Subspace& v) {
  if (v.dimension() == 0) return full_subspace(model);
  gf::Matrix constraints = gf::reduced(v.basis * model.form(), model.q());
  return span(model, gf::nullspace(constraints, model.q()));
}

AtomSet atoms_in(const SubspaceModel& model, const Subspace& v) {
  AtomSet out(model.atom_count());
  for (std::size_t i = 0; i < model.atom_count(); ++i)
    if (contains_vector(model, v, model.atom(i))) out.insert(i);
  return out;
}

std::vector<Subspace> enumerate_subspaces(const SubspaceModel& model, std::uint64_t cap) {
  const int n = model.dimension(), q = model.q();
  std::vector<Subspace> out;
  for (int k = 0; k <= n; ++k) {
    // Pivot columns as an increasing k-subset of {0..n-1}.
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      std::vector<std::pair<int, int>> free_cells;
      for (int i = 0; i < k; ++i)
        for (int c = piv[i] + 1; c < n; ++c)
          if (!std::binary_search(piv.begin(), piv.end(), c)) free_cells.emplace_back(i, c);

      std::vector<int> digits(free_cells.size(), 0);
      while (true) {
        gf::Matrix b = gf::Matrix::Zero(k, n);
        for (int i = 0; i < k; ++i) b(i, piv[i]) = 1;
        for (std::size_t f = 0; f < free_cells.size(); ++f) b(free_cells[f].first, free_cells[f].second) = digits[f];
        out.push_back(Subspace{b});
        if (out.size() > cap) throw BudgetExceeded("subspace enumeration", cap);
        std::size_t f = 0;
        for (; f < digits.size(); ++f) {
          if (++digits[f] < q) break;
          digits[f] = 0;
        }
        if (f == digits.size()) break;
      }

      int i = k - 1;
      while (i >= 0 && piv[i] == n - k + i) --i;
      if (i < 0) break;
      ++piv[i];
      for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

ClosureSpace projective_closure_space(const SubspaceModel& model, std::uint64_t subspace_cap) {
  std::vector<AtomSet> family;
  for (const auto& v : enumerate_subspaces(model, subspace_cap)) family.push_back(atoms_in(model, v));
  return ClosureSpace::from_family(model.atom_count(), std::move(family), model.atom_labels());
}

OrthoSpace build_projective_space(const SubspaceModel& model, std::uint64_t subspace_cap) {
  const auto n = model.atom_count();
  std::vector<AtomSet> rows(n, AtomSet(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t r = 0; r < n; ++r)
      if (model.form_value(model.atom(p), model.atom(r)) == 0) rows[p].insert(r);
    if (rows[p].contains(p)) {
      throw InputError("isotropic point " + model.atom_labels()[p] +
                       " is orthogonal to itself; orthogonality would not be irreflexive");
    }
  }
  if (model.q() == 2) throw Unsupported("orthogonality over GF(2) is not supported");
  return OrthoSpace{projective_closure_space(model, subspace_cap), OrthogonalityRelation(std::move(rows))};
}

OrthoSpace mo_lattice(std::size_t n) {
  if (n < 2) throw InputError("MO_n needs n >= 2");
  const auto atoms = 2 * n;
  std::vector<AtomSet> family{AtomSet(atoms), AtomSet::full(atoms)};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t p = 0; p < atoms; ++p) family.push_back(AtomSet::singleton(atoms, p));
  for (std::size_t k = 0; k < n; ++k) pairs.emplace_back(2 * k, 2 * k + 1);
  return OrthoSpace{ClosureSpace::from_family(atoms, std::move(family)),
                    OrthogonalityRelation::from_pairs(atoms, pairs)};
}

gf::Vector tensor_vector(const gf::Vector& x, const gf::Vector& y) {
  gf::Vector v(x.size() * y.size());
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < y.size(); ++j) v(i * y.size() + j) = x(i) * y(j);
  return v;
}

SubspaceModel tensor_model(const SubspaceModel& left, const SubspaceModel& right) {
  if (left.q() != right.q()) throw InputError("tensor factors must share the field modulus");
  const int n1 = left.dimension(), n2 = right.dimension();
  gf::Matrix f(n1 * n2, n1 * n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < n1; ++k)
        for (int l = 0; l < n2; ++l) f(i * n2 + j, k * n2 + l) = left.form()(i, k) * right.form()(j, l);
  auto m = SubspaceModel::make(left.q(), f);
  m.factors_ = std::make_pair(n1, n2);
  return m;
}

std::vector<std::size_t> product_atoms(const SubspaceModel& left, const SubspaceModel& right,
                                       const SubspaceModel& tensor) {
  std::vector<std::size_t> out;
  out.reserve(left.atom_count() * right.atom_count());
  for (const auto& x : left.atoms())
    for (const auto& y : right.atoms()) out.push_back(tensor.atom_index(tensor_vector(x, y)));
  return out;
}

TensorSpace make_tensor_space(const SubspaceModel& left, const SubspaceModel& right) {
  auto t = tensor_model(left, right);
  auto pa = product_atoms(left, right, t);
  return TensorSpace{left, right, std::move(t), std::move(pa)};
}

AtomSet sigma_down(const TensorSpace& ts, const Subspace& v) {
  const auto inside = atoms_in(ts.tensor, v);
  AtomSet out(ts.pair_count());
  for (std::size_t k = 0; k < ts.pair_count(); ++k)
    if (inside.contains(ts.product_atom[k])) out.insert(k);
  return out;
}

std::vector<AtomPermutation> similitude_group(const SubspaceModel& model, const GroupOptions& opt) {
  const int n = model.dimension(), q = model.q();
  const auto& f = model.form();
  NodeCounter nodes(opt.node_cap, "matrix enumeration");
  // Reference entry for reading off the multiplier.
  int ri = 0, rj = 0;
  while (f(ri, rj) == 0) {
    if (++rj == n) {
      rj = 0;
      ++ri;
    }
  }
  std::set<AtomPermutation> perms;
  gf::for_each_matrix(n, n, q, [&](const gf::Matrix& g) {
    nodes.tick();
    gf::Matrix pulled = gf::reduced(g.transpose() * f * g, q);
    const int lambda = gf::mod(static_cast<long long>(pulled(ri, rj)) * gf::inverse(f(ri, rj), q), q);
    if (lambda == 0 || (opt.isometries_only && lambda != 1)) return true;
    if (pulled != gf::reduced(f * lambda, q)) return true;
    std::vector<std::size_t> image(model.atom_count());
    for (std::size_t p = 0; p < model.atom_count(); ++p) image[p] = model.atom_index(gf::reduced(g * model.atom(p), q));
    perms.insert(AtomPermutation(std::move(image)));
    return true;
  });
  return {perms.begin(), perms.end()};
}

std::vector<AtomPermutation> tensor_similitudes(const SubspaceModel& left, const SubspaceModel& right,
                                                const GroupOptions& opt) {
  auto g1 = similitude_group(left, opt);
  auto g2 = similitude_group(right, opt);
  const auto n1 = left.atom_count(), n2 = right.atom_count();
  std::vector<AtomPermutation> out;
  out.reserve(g1.size() * g2.size());
  for (const auto& v1 : g1)
    for (const auto& v2 : g2) {
      std::vector<std::size_t> image(n1 * n2);
      for (std::size_t p1 = 0; p1 < n1; ++p1)
        for (std::size_t p2 = 0; p2 < n2; ++p2) image[p1 * n2 + p2] = v1(p1) * n2 + v2(p2);
      out.emplace_back(std::move(image));
    }
  std::sort(out.begin(), out.end());
  return out;
}

AtomSet linear_map_coatom(const SubspaceModel& left, const SubspaceModel& right, const gf::Matrix& a) {
  if (a.rows() != right.dimension() || a.cols() != left.dimension())
    throw InputError("linear map has wrong shape");
  const int q = left.q();
  if (gf::reduced(a, q).isZero()) throw InputError("the zero map does not define a coatom");
  const auto n2 = right.atom_count();
  AtomSet out(left.atom_count() * n2);
  for (std::size_t p = 0; p < left.atom_count(); ++p) {
    gf::Vector ap = gf::reduced(a * left.atom(p), q);
    for (std::size_t r = 0; r < n2; ++r)
      if (right.form_value(right.atom(r), ap) == 0) out.insert(p * n2 + r);
  }
  return out;
}

}  // namespace qll
