#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncdef/rational.hpp"

namespace ncdef {

using Vector = std::vector<Scalar>;

bool is_zero(std::span<const Scalar> v);
std::string to_string(std::span<const Scalar> v);

/// Row-major dense matrix over Q.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns);
  static DenseMatrix from_rows(std::size_t cols, const std::vector<Vector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;

  /// Matrix-vector product; throws InvalidInput on a length mismatch.
  Vector apply(std::span<const Scalar> v) const;
  DenseMatrix operator*(const DenseMatrix& rhs) const;
  DenseMatrix operator-(const DenseMatrix& rhs) const;
  DenseMatrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  DenseMatrix reduced;
  std::vector<std::size_t> pivots;  // strictly increasing column indices
};

/// Reduced row-echelon form. Among eligible rows the pivot is the entry with
/// the largest numerator magnitude.
RrefResult rref(DenseMatrix m);

std::size_t rank(const DenseMatrix& m);

/// Linearly independent vectors spanning {x : m x = 0}.
std::vector<Vector> kernel_basis(const DenseMatrix& m);

/// Independent columns of m spanning its column space.
std::vector<Vector> image_basis(const DenseMatrix& m);

/// Standard-basis indices e_i of the target spanning a complement of the
/// column space; later indices are preferred. Size is rows - rank.
std::vector<std::size_t> cokernel_reps(const DenseMatrix& m);

/// A witness x with m x = b, or nullopt when b is outside the column space.
std::optional<Vector> solve(const DenseMatrix& m, std::span<const Scalar> b);

/// Factors m once (E m = rref(m)) so that repeated right-hand sides are cheap.
class LinearSolver {
 public:
  explicit LinearSolver(const DenseMatrix& m);

  std::optional<Vector> solve(std::span<const Scalar> b) const;
  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  DenseMatrix transform_;
  std::vector<std::size_t> pivots_;
  DenseMatrix reduced_;
};

/// Incrementally built echelon basis of a subspace of Q^dim. Each stored
/// vector has a distinct pivot (its first nonzero coordinate, normalized to
/// one) and is zero in the pivot positions of all other stored vectors.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  /// Adds v to the span; returns false if it was already contained.
  bool insert(Vector v);
  /// Remainder of v after eliminating every pivot coordinate.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<Vector>& vectors() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  bool is_pivot(std::size_t i) const;

 private:
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace ncdef
