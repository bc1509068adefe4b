#pragma once

// Exact linear algebra over the rationals.
//
// Maps act on column vectors from the left: a linear map k^n -> k^m is an
// m x n matrix. Matrices with a zero extent are legal and model maps into or
// out of the zero space.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace qsheaf {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix scalar(std::size_t n, const Scalar& c);
  /// Matrix whose columns are the given vectors, each of length `rows`.
  static Matrix from_columns(std::size_t rows, std::span<const Vector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Dimension of the source space.
  std::size_t domain_dim() const noexcept { return cols_; }
  /// Dimension of the target space.
  std::size_t codomain_dim() const noexcept { return rows_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& entries() const noexcept { return data_; }

  Vector column(std::size_t j) const;
  Matrix transpose() const;
  Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const Matrix& m);
  void swap_rows(std::size_t a, std::size_t b);
  bool is_zero() const;
  bool is_identity() const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// A linear map carried by its matrix: domain_dim() = cols, codomain_dim() = rows.
using LinearMap = Matrix;

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& c, const Matrix& m);

/// Blocks stacked top to bottom; all blocks must share a column count.
Matrix vstack(std::span<const Matrix> blocks, std::size_t cols);
/// Blocks placed left to right; all blocks must share a row count.
Matrix hstack(std::span<const Matrix> blocks, std::size_t rows);

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Basis of the null space, one vector per free column of rref(m).
std::vector<Vector> kernel_basis(const Matrix& m);
/// Some x with m x = b, or nothing when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
std::optional<Matrix> inverse(const Matrix& m);
bool is_isomorphism(const LinearMap& f);
LinearMap transpose_map(const LinearMap& f);

/// Finite diagram of coordinate spaces: node i is k^{nodes[i]}, each arrow a
/// linear map between its endpoint nodes.
struct Diagram {
  struct Arrow {
    std::size_t source;
    std::size_t target;
    LinearMap map;
  };
  std::vector<std::size_t> nodes;
  std::vector<Arrow> arrows;

  /// Throws DimensionMismatch on a malformed arrow.
  void check() const;
};

/// Universal (co)cone. For a colimit legs[i] maps node i into the apex; for a
/// limit legs[i] projects the apex onto node i.
struct UniversalCone {
  std::size_t dim = 0;
  std::vector<LinearMap> legs;
};

/// Quotient of the direct sum of the nodes by the relations
/// in_src(x) - in_dst(f x), one per arrow and basis vector x.
UniversalCone colimit(const Diagram& d);
/// Subspace of the direct sum of the nodes where f x_src = x_dst for every arrow.
UniversalCone limit(const Diagram& d);

}  // namespace qsheaf
