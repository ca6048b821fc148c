#pragma once

#include <vector>

#include "redstar/scalar.hpp"

namespace redstar {

/// Dense exact matrix, row-major.
using Matrix = std::vector<std::vector<Scalar>>;

Matrix zero_matrix(int rows, int cols);
Matrix identity_matrix(int n);
Matrix transpose(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, const Scalar& c);

Scalar determinant(Matrix a);
/// Throws InputError when singular.
Matrix inverse(const Matrix& a);
/// Basis of {x : a x = 0}, one vector per free column of the reduced
/// row echelon form.
std::vector<std::vector<Scalar>> nullspace(const Matrix& a);

}  // namespace redstar
