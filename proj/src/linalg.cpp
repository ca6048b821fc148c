#include "redstar/linalg.hpp"

#include <utility>

namespace redstar {

namespace {

int rows(const Matrix& a) { return static_cast<int>(a.size()); }
int cols(const Matrix& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(Matrix& a) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols(a) && r < rows(a); ++c) {
    int p = r;
    while (p < rows(a) && a[p][c] == 0) ++p;
    if (p == rows(a)) continue;
    std::swap(a[p], a[r]);
    Scalar inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (int i = 0; i < rows(a); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Scalar f = a[i][c];
      for (int j = c; j < cols(a); ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix zero_matrix(int r, int c) {
  return Matrix(static_cast<std::size_t>(r), std::vector<Scalar>(static_cast<std::size_t>(c), Scalar(0)));
}

Matrix identity_matrix(int n) {
  Matrix m = zero_matrix(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix transpose(const Matrix& a) {
  Matrix t = zero_matrix(cols(a), rows(a));
  for (int i = 0; i < rows(a); ++i)
    for (int j = 0; j < cols(a); ++j) t[j][i] = a[i][j];
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (cols(a) != rows(b)) throw InputError("matrix shapes do not match");
  Matrix m = zero_matrix(rows(a), cols(b));
  for (int i = 0; i < rows(a); ++i)
    for (int k = 0; k < cols(a); ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < cols(b); ++j) m[i][j] += a[i][k] * b[k][j];
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (rows(a) != rows(b) || cols(a) != cols(b)) throw InputError("matrix shapes do not match");
  Matrix m = a;
  for (int i = 0; i < rows(a); ++i)
    for (int j = 0; j < cols(a); ++j) m[i][j] += b[i][j];
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + scaled(b, Scalar(-1)); }

Matrix scaled(const Matrix& a, const Scalar& c) {
  Matrix m = a;
  for (auto& row : m)
    for (auto& x : row) x *= c;
  return m;
}

Scalar determinant(Matrix a) {
  if (rows(a) != cols(a)) throw InputError("determinant of a non-square matrix");
  Scalar det = 1;
  int n = rows(a);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Scalar f = a[i][c] / a[c][c];
      for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

Matrix inverse(const Matrix& a) {
  int n = rows(a);
  if (n != cols(a)) throw InputError("inverse of a non-square matrix");
  Matrix aug = zero_matrix(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw InputError("matrix is singular");
  Matrix inv = zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& a) {
  Matrix m = a;
  auto piv = rref(m);
  int nc = cols(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(nc), false);
  for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int f = 0; f < nc; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<Scalar> v(static_cast<std::size_t>(nc), Scalar(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[static_cast<std::size_t>(piv[r])] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace redstar
