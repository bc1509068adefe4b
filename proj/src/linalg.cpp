#include "qsheaf/linalg.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "qsheaf/error.hpp"

namespace qsheaf {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require(data_.size() == rows_ * cols_, "entry count does not match shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    require(row.size() == cols_, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) { return scalar(n, 1); }

Matrix Matrix::scalar(std::size_t n, const Scalar& c) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::span<const Vector> columns) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require(columns[j].size() == rows, "column length does not match row count");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                     std::size_t ncols) const {
  require(row0 + nrows <= rows_ && col0 + ncols <= cols_, "block out of range");
  Matrix b(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
  return b;
}

void Matrix::set_block(std::size_t row0, std::size_t col0, const Matrix& m) {
  require(row0 + m.rows() <= rows_ && col0 + m.cols() <= cols_, "block out of range");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) (*this)(row0 + i, col0 + j) = m(i, j);
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "product of incompatible shapes");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  require(a.cols() == x.size(), "matrix-vector product of incompatible shapes");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) y[i] += a(i, k) * x[k];
  return y;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "sum of incompatible shapes");
  std::vector<Scalar> e(a.entries());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
  return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "difference of incompatible shapes");
  std::vector<Scalar> e(a.entries());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries()[i];
  return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix operator*(const Scalar& c, const Matrix& m) {
  std::vector<Scalar> e(m.entries());
  for (auto& x : e) x *= c;
  return Matrix(m.rows(), m.cols(), std::move(e));
}

Matrix vstack(std::span<const Matrix> blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    require(b.cols() == cols, "vstack column mismatch");
    rows += b.rows();
  }
  Matrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    out.set_block(r, 0, b);
    r += b.rows();
  }
  return out;
}

Matrix hstack(std::span<const Matrix> blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    require(b.rows() == rows, "hstack row mismatch");
    cols += b.cols();
  }
  Matrix out(rows, cols);
  std::size_t c = 0;
  for (const auto& b : blocks) {
    out.set_block(0, c, b);
    c += b.cols();
  }
  return out;
}

RowEchelon rref(const Matrix& m) {
  Matrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t p = row;
    while (p < r.rows() && sgn(r(p, col)) == 0) ++p;
    if (p == r.rows()) continue;
    r.swap_rows(row, p);

    const Scalar inv = 1 / r(row, col);
    for (std::size_t j = col; j < r.cols(); ++j) r(row, j) *= inv;

    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || sgn(r(i, col)) == 0) continue;
      const Scalar factor = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j) r(i, j) -= factor * r(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(r), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> kernel_basis(const Matrix& m) {
  const auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  require(b.size() == m.rows(), "right-hand side length does not match row count");
  Matrix aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];

  const auto [r, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;

  Vector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, m.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix::identity(n));
  const auto [r, pivots] = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  return r.block(0, n, n, n);
}

bool is_isomorphism(const LinearMap& f) {
  return f.rows() == f.cols() && rank(f) == f.cols();
}

LinearMap transpose_map(const LinearMap& f) { return f.transpose(); }

void Diagram::check() const {
  for (const auto& a : arrows) {
    require(a.source < nodes.size() && a.target < nodes.size(), "arrow endpoint out of range");
    require(a.map.cols() == nodes[a.source] && a.map.rows() == nodes[a.target],
            "arrow map shape does not match its endpoint nodes");
  }
}

namespace {

std::vector<std::size_t> offsets_of(const std::vector<std::size_t>& nodes) {
  std::vector<std::size_t> off(nodes.size() + 1, 0);
  std::partial_sum(nodes.begin(), nodes.end(), off.begin() + 1);
  return off;
}

}  // namespace

UniversalCone colimit(const Diagram& d) {
  d.check();
  const auto off = offsets_of(d.nodes);
  const std::size_t total = off.back();

  // One relation column per (arrow, source basis vector).
  std::vector<Vector> relations;
  for (const auto& a : d.arrows) {
    for (std::size_t x = 0; x < d.nodes[a.source]; ++x) {
      Vector rel(total);
      rel[off[a.source] + x] += 1;
      for (std::size_t y = 0; y < d.nodes[a.target]; ++y) rel[off[a.target] + y] -= a.map(y, x);
      relations.push_back(std::move(rel));
    }
  }
  const Matrix rel = Matrix::from_columns(total, relations);

  // Rows of `quotient` span the annihilator of the relation space, so
  // quotient : total -> dim has kernel exactly span(relations).
  const auto annihilator = kernel_basis(rel.transpose());
  Matrix quotient(annihilator.size(), total);
  for (std::size_t i = 0; i < annihilator.size(); ++i)
    for (std::size_t j = 0; j < total; ++j) quotient(i, j) = annihilator[i][j];

  UniversalCone out;
  out.dim = annihilator.size();
  for (std::size_t n = 0; n < d.nodes.size(); ++n)
    out.legs.push_back(quotient.block(0, off[n], out.dim, d.nodes[n]));
  return out;
}

UniversalCone limit(const Diagram& d) {
  d.check();
  const auto off = offsets_of(d.nodes);
  const std::size_t total = off.back();

  std::size_t eq_rows = 0;
  for (const auto& a : d.arrows) eq_rows += d.nodes[a.target];
  Matrix eqs(eq_rows, total);
  std::size_t r = 0;
  for (const auto& a : d.arrows) {
    const std::size_t nt = d.nodes[a.target];
    for (std::size_t y = 0; y < nt; ++y) {
      for (std::size_t x = 0; x < d.nodes[a.source]; ++x) eqs(r + y, off[a.source] + x) += a.map(y, x);
      eqs(r + y, off[a.target] + y) -= 1;
    }
    r += nt;
  }

  const auto basis = kernel_basis(eqs);
  const Matrix apex = Matrix::from_columns(total, basis);
  UniversalCone out;
  out.dim = basis.size();
  for (std::size_t n = 0; n < d.nodes.size(); ++n)
    out.legs.push_back(apex.block(off[n], 0, d.nodes[n], out.dim));
  return out;
}

}  // namespace qsheaf
