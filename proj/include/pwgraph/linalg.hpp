#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

namespace pwgraph {

/// Scalar used internally where double round-off would swamp the result
/// (spectral calculus with large powers, Gram solves).
using extended = long double;

/// Dense row-major matrix.
template <class T>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  template <class U>
  static BasicMatrix cast(const BasicMatrix<U>& other) {
    BasicMatrix m(other.rows(), other.cols());
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = static_cast<T>(other.data()[i]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  T operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  std::span<const T> data() const noexcept { return data_; }

  BasicMatrix transpose() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Rows and columns selected by the given index lists.
  BasicMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    BasicMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
  }

  bool operator==(const BasicMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;
using ExtendedMatrix = BasicMatrix<extended>;

template <class T>
BasicMatrix<T> operator*(const BasicMatrix<T>& a, const BasicMatrix<T>& b);
template <class T>
std::vector<T> operator*(const BasicMatrix<T>& a, std::span<const std::type_identity_t<T>> x);

/// Largest absolute entrywise difference; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

template <class T>
struct SymmetricEigen {
  std::vector<T> values;  // ascending
  BasicMatrix<T> vectors; // column j pairs with values[j]
};

/// Householder tridiagonalization followed by implicit-shift QL.
/// Throws Error{ConvergenceFailure} if an eigenvalue needs more than
/// `max_sweeps` QL iterations. Only the lower triangle of `a` is read.
template <class T>
SymmetricEigen<T> symmetric_eigen(const BasicMatrix<T>& a, int max_sweeps = 64);

/// Lower-triangular Cholesky factor, or nullopt on a non-positive pivot.
template <class T>
std::optional<BasicMatrix<T>> cholesky_factor(const BasicMatrix<T>& a);

/// Solves (L Lᵀ) x = b given the lower factor L.
template <class T>
std::vector<T> cholesky_solve(const BasicMatrix<T>& lower, std::span<const std::type_identity_t<T>> b);

/// Singular values of `a` in descending order (one-sided Jacobi).
std::vector<double> singular_values(const Matrix& a);

}  // namespace pwgraph
