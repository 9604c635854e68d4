#include "qll/finite_field.hpp"

#include <string>

namespace qll::gf {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

int inverse(int a, int q) {
  a = mod(a, q);
  if (a == 0) throw InputError("zero has no inverse in GF(" + std::to_string(q) + ")");
  // Extended Euclid.
  int t = 0, new_t = 1, r = q, new_r = a;
  while (new_r != 0) {
    int quot = r / new_r;
    int tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  return mod(t, q);
}

EchelonForm rref(const Matrix& input, int q) {
  Matrix m = reduced(input, q);
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  EchelonForm out;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.row(r).swap(m.row(piv));
    const int inv = inverse(m(r, c), q);
    m.row(r) = reduced(m.row(r) * inv, q);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const int f = m(i, c);
      m.row(i) = reduced(m.row(i) - f * m.row(r), q);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rows = m.topRows(r);
  return out;
}

int rank(const Matrix& m, int q) { return rref(m, q).rank(); }

Matrix nullspace(const Matrix& m, int q) {
  const int cols = static_cast<int>(m.cols());
  auto e = rref(m, q);
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix basis = Matrix::Zero(static_cast<int>(free_cols.size()), cols);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int f = free_cols[k];
    basis(static_cast<int>(k), f) = 1;
    for (int i = 0; i < e.rank(); ++i) basis(static_cast<int>(k), e.pivots[i]) = mod(-e.rows(i, f), q);
  }
  return basis;
}

Vector normalize_projective(const Vector& v, int q) {
  Vector w = reduced(v, q);
  for (int i = 0; i < w.size(); ++i) {
    if (w(i) != 0) {
      const int inv = inverse(w(i), q);
      return reduced(w * inv, q);
    }
  }
  throw InputError("the zero vector is not a projective point");
}

std::uint64_t little_endian_key(const Vector& v, int q) {
  std::uint64_t key = 0, scale = 1;
  for (int i = 0; i < v.size(); ++i) {
    key += static_cast<std::uint64_t>(mod(v(i), q)) * scale;
    scale *= static_cast<std::uint64_t>(q);
  }
  return key;
}

}  // namespace qll::gf
