#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abelcs/errors.hpp"

namespace abelcs {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Parses "p/q" or "p" (optional leading sign). Throws ParseError on a zero
/// denominator or any non-integer token.
Scalar parse_scalar(std::string_view text);
/// Formats as "p/q", or "p" when q == 1.
std::string format_scalar(const Scalar& s);

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator-(const Vector& a);
Vector operator*(const Scalar& s, const Vector& v);
Vector& operator+=(Vector& a, const Vector& b);
/// a += s * b
void axpy(Vector& a, const Scalar& s, const Vector& b);
Scalar dot(const Vector& a, const Vector& b);
std::string format_vector(const Vector& v);

// ---------------------------------------------------------------------------
// Dense row-major rational matrix. Also used for linear maps: column j is
// the image of basis vector j.
// ---------------------------------------------------------------------------

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Row-major initializer; all rows must have equal length.
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  void set_col(std::size_t c, const Vector& v);

  Matrix transpose() const;
  Scalar trace() const;
  bool is_zero() const;
  Vector apply(const Vector& v) const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using LinearMap = Matrix;

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(const Scalar& s, const Matrix& m);
/// a*b - b*a
Matrix commutator(const Matrix& a, const Matrix& b);
std::string format_matrix(const Matrix& m);

/// Reduced row echelon form with the leftmost-nonzero pivot rule.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

RowEchelon row_reduce(Matrix m);
std::size_t rank(const Matrix& m);
/// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vector> nullspace(const Matrix& m);
/// Some x with m x = b, or nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
/// Throws PreconditionError when singular.
Matrix inverse(const Matrix& m);
Scalar determinant(const Matrix& m);
/// Symmetric with all leading principal minors positive.
bool is_symmetric_positive_definite(const Matrix& m);

// ---------------------------------------------------------------------------
// Rank-3 tensor t(i,j,k) stored as n0 x n1 fibres of length n2.
// ---------------------------------------------------------------------------

class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t n0, std::size_t n1, std::size_t n2);
  explicit Tensor3(std::size_t n) : Tensor3(n, n, n) {}

  std::size_t extent0() const { return n0_; }
  std::size_t extent1() const { return n1_; }
  std::size_t extent2() const { return n2_; }

  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * n1_ + j) * n2_ + k];
  }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n1_ + j) * n2_ + k];
  }

  /// The length-n2 fibre t(i,j,.).
  Vector fibre(std::size_t i, std::size_t j) const;
  void set_fibre(std::size_t i, std::size_t j, const Vector& v);
  /// sum_ij x_i y_j t(i,j,.)
  Vector contract(const Vector& x, const Vector& y) const;
  bool is_zero() const;
  /// Exact sum of squared entries.
  Scalar squared_norm() const;

  friend bool operator==(const Tensor3& a, const Tensor3& b) = default;

 private:
  std::size_t n0_ = 0;
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::vector<Scalar> data_;
};

}  // namespace abelcs
