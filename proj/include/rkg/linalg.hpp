#pragma once

#include <optional>
#include <vector>

#include "rkg/fields.hpp"

namespace rkg {

// Dense matrix over a single exact field: just enough linear algebra for the
// workbench (multiply, rank, solve, inverse), all by fraction-free-enough
// Gaussian elimination with exact pivots.
class Matrix {
 public:
  Matrix(FieldCtxPtr field, int rows, int cols);
  static Matrix identity(const FieldCtxPtr& field, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldCtxPtr& field() const { return field_; }

  FieldElem& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const FieldElem& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  bool operator==(const Matrix& o) const;
  bool is_identity() const;

  int rank() const;
  std::optional<Matrix> inverse() const;
  // Any solution of (*this) x = rhs, columnwise (free variables set to 0);
  // nullopt when the system is inconsistent.
  std::optional<Matrix> solve(const Matrix& rhs) const;

  std::string str() const;

 private:
  FieldCtxPtr field_;
  int rows_;
  int cols_;
  std::vector<FieldElem> a_;
};

}  // namespace rkg
