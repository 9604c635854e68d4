#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "qll/errors.hpp"

namespace qll::gf {

// Dense matrices over a prime field GF(q). Entries are kept reduced to
// [0, q); every free function takes the modulus explicitly.
using Matrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<int, Eigen::Dynamic, 1>;

bool is_prime(int q);

inline int mod(long long x, int q) {
  auto r = static_cast<int>(x % q);
  return r < 0 ? r + q : r;
}

int inverse(int a, int q);

template <typename Derived>
auto reduced(const Eigen::MatrixBase<Derived>& m, int q) {
  return m.unaryExpr([q](int x) { return mod(x, q); }).eval();
}

struct EchelonForm {
  Matrix rows;               // nonzero rows of the reduced row echelon form
  std::vector<int> pivots;   // pivot column of each row
  int rank() const { return static_cast<int>(pivots.size()); }
};

/// Reduced row echelon form; canonical for the row space.
EchelonForm rref(const Matrix& m, int q);

int rank(const Matrix& m, int q);

/// Rows spanning { x : m x = 0 }.
Matrix nullspace(const Matrix& m, int q);

/// Scales v so its first nonzero coordinate is 1. Throws on the zero vector.
Vector normalize_projective(const Vector& v, int q);

/// sum_i v_i q^i; orders projective points canonically.
std::uint64_t little_endian_key(const Vector& v, int q);

/// All q^(rows*cols) matrices, visited in lexicographic order of the
/// row-major entry sequence. Stops early when `visit` returns false.
template <typename Visit>
void for_each_matrix(int rows, int cols, int q, Visit&& visit) {
  Matrix m = Matrix::Zero(rows, cols);
  const int cells = rows * cols;
  while (true) {
    if (!visit(static_cast<const Matrix&>(m))) return;
    int i = cells - 1;
    for (; i >= 0; --i) {
      int& e = m(i / cols, i % cols);
      if (++e < q) break;
      e = 0;
    }
    if (i < 0) return;
  }
}

}  // namespace qll::gf
