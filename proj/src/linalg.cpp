#include "ncdef/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "ncdef/errors.hpp"

namespace ncdef {

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

std::string to_string(std::span<const Scalar> v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].get_str();
  os << ']';
  return os.str();
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DenseMatrix DenseMatrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
  DenseMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InvalidInput("from_columns: column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::size_t cols, const std::vector<Vector>& rows) {
  DenseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidInput("from_rows: row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector DenseMatrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector DenseMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vector DenseMatrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw InvalidInput("apply: vector length mismatch");
  Vector out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (sgn(v[c]) == 0) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& e = (*this)(r, c);
      if (sgn(e) != 0) out[r] += e * v[c];
    }
  }
  return out;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidInput("matrix product: dimension mismatch");
  DenseMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Scalar& b = rhs(k, j);
        if (sgn(b) != 0) out(i, j) += a * b;
      }
    }
  return out;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidInput("matrix difference: shape mismatch");
  DenseMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool DenseMatrix::is_zero() const { return ncdef::is_zero(data_); }

namespace {

// In-place elimination shared by rref() and LinearSolver. Only the first
// `pivot_cols` columns are eligible as pivots; the remaining columns ride
// along (augmentation).
std::vector<std::size_t> eliminate(DenseMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  std::vector<std::size_t> nz;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (sgn(m(r, col)) == 0) continue;
      if (best == m.rows() ||
          mpz_cmpabs(m(r, col).get_num_mpz_t(), m(best, col).get_num_mpz_t()) > 0)
        best = r;
    }
    if (best == m.rows()) continue;
    if (best != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));

    const Scalar inv = 1 / m(row, col);
    nz.clear();
    for (std::size_t c = col; c < m.cols(); ++c)
      if (sgn(m(row, c)) != 0) {
        m(row, c) *= inv;
        nz.push_back(c);
      }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      const Scalar f = m(r, col);
      for (std::size_t c : nz) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RrefResult rref(DenseMatrix m) {
  auto pivots = eliminate(m, m.cols());
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const DenseMatrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> kernel_basis(const DenseMatrix& m) {
  const auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -red(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> image_basis(const DenseMatrix& m) {
  const auto pivots = rref(m).pivots;
  std::vector<Vector> basis;
  basis.reserve(pivots.size());
  for (auto p : pivots) basis.push_back(m.column(p));
  return basis;
}

std::vector<std::size_t> cokernel_reps(const DenseMatrix& m) {
  // Pivots of the transposed echelon form sit at the leftmost rows of m; the
  // remaining standard vectors complete the column space.
  const auto pivots = rref(m.transpose()).pivots;
  std::vector<bool> taken(m.rows(), false);
  for (auto p : pivots) taken[p] = true;
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!taken[i]) reps.push_back(i);
  return reps;
}

std::optional<Vector> solve(const DenseMatrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw InvalidInput("solve: right-hand side length mismatch");
  DenseMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const auto pivots = eliminate(aug, m.cols());
  for (std::size_t r = pivots.size(); r < m.rows(); ++r)
    if (sgn(aug(r, m.cols())) != 0) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, m.cols());
  return x;
}

LinearSolver::LinearSolver(const DenseMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
  DenseMatrix aug(rows_, cols_ + rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = m(r, c);
    aug(r, cols_ + r) = 1;
  }
  pivots_ = eliminate(aug, cols_);
  transform_ = DenseMatrix(rows_, rows_);
  reduced_ = DenseMatrix(pivots_.size(), cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < rows_; ++c) transform_(r, c) = aug(r, cols_ + c);
  for (std::size_t r = 0; r < pivots_.size(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) reduced_(r, c) = aug(r, c);
}

std::optional<Vector> LinearSolver::solve(std::span<const Scalar> b) const {
  if (b.size() != rows_) throw InvalidInput("LinearSolver: right-hand side length mismatch");
  const Vector y = transform_.apply(b);
  for (std::size_t r = pivots_.size(); r < rows_; ++r)
    if (sgn(y[r]) != 0) return std::nullopt;
  Vector x(cols_);
  for (std::size_t k = 0; k < pivots_.size(); ++k) x[pivots_[k]] = y[k];
  return x;
}

bool EchelonBasis::is_pivot(std::size_t i) const {
  return std::find(pivots_.begin(), pivots_.end(), i) != pivots_.end();
}

Vector EchelonBasis::reduce(Vector v) const {
  if (v.size() != dim_) throw InvalidInput("EchelonBasis: vector length mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar f = v[pivots_[k]];
    if (sgn(f) == 0) continue;
    const Vector& row = rows_[k];
    for (std::size_t c = 0; c < dim_; ++c)
      if (sgn(row[c]) != 0) v[c] -= f * row[c];
  }
  return v;
}

bool EchelonBasis::contains(const Vector& v) const { return ncdef::is_zero(reduce(v)); }

bool EchelonBasis::insert(Vector v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < dim_ && sgn(v[p]) == 0) ++p;
  if (p == dim_) return false;
  const Scalar inv = 1 / v[p];
  for (auto& e : v)
    if (sgn(e) != 0) e *= inv;
  // keep existing rows reduced at the new pivot
  for (auto& row : rows_) {
    const Scalar f = row[p];
    if (sgn(f) == 0) continue;
    for (std::size_t c = 0; c < dim_; ++c)
      if (sgn(v[c]) != 0) row[c] -= f * v[c];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

}  // namespace ncdef
