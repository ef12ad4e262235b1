#include "rkg/linalg.hpp"

#include <sstream>

namespace rkg {

Matrix::Matrix(FieldCtxPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw Error("negative matrix dimension");
  a_.assign(static_cast<size_t>(rows) * cols, field_->zero());
}

Matrix Matrix::identity(const FieldCtxPtr& field, int n) {
  Matrix m(field, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = field->one();
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || field_.get() != o.field_.get())
    throw ContextMismatch("matrix product shape/field mismatch");
  Matrix r(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const FieldElem& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += aik * o.at(k, j);
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_.get() != o.field_.get())
    throw ContextMismatch("matrix sum shape/field mismatch");
  Matrix r(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_.get() != o.field_.get())
    throw ContextMismatch("matrix difference shape/field mismatch");
  Matrix r(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_.get() == o.field_.get() &&
         a_ == o.a_;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

namespace {

// Reduces m in place to reduced row echelon form, choosing pivots only in
// the first pivot_limit columns; returns the pivot columns.
std::vector<int> rref_in_place(Matrix& m, int pivot_limit) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < pivot_limit && row < m.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!m.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    FieldElem inv = m.at(row, col).inv();
    for (int j = col; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      FieldElem f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int Matrix::rank() const {
  Matrix m = *this;
  return static_cast<int>(rref_in_place(m, m.cols()).size());
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) throw Error("inverse of a non-square matrix");
  Matrix aug(field_, rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = field_->one();
  }
  auto pivots = rref_in_place(aug, cols_);
  if (static_cast<int>(pivots.size()) != rows_) return std::nullopt;
  Matrix inv(field_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
  return inv;
}

std::optional<Matrix> Matrix::solve(const Matrix& rhs) const {
  if (rhs.rows_ != rows_ || rhs.field_.get() != field_.get())
    throw ContextMismatch("solve shape/field mismatch");
  Matrix aug(field_, rows_, cols_ + rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    for (int j = 0; j < rhs.cols_; ++j) aug.at(i, cols_ + j) = rhs.at(i, j);
  }
  auto pivots = rref_in_place(aug, cols_);
  Matrix x(field_, cols_, rhs.cols_);
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < rhs.cols_; ++j)
      x.at(pivots[r], j) = aug.at(static_cast<int>(r), cols_ + j);
  // consistency is checked on the residual; free variables stay zero
  if (!(*this * x == rhs)) return std::nullopt;
  return x;
}

std::string Matrix::str() const {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) out << ",";
    out << "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) out << ",";
      out << at(i, j).str();
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

}  // namespace rkg
