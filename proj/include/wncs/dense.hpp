#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace wncs {

// Small row-major dense matrix. Row operations go through the SIMD kernels.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix transposed() const;
  Matrix& operator+=(const Matrix& other);
  Matrix& operator*=(double alpha);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
// Row vector times matrix.
std::vector<double> operator*(std::span<const double> x, const Matrix& a);

// LU factorization with partial pivoting.
class LuFactor {
 public:
  // Returns nullopt when a pivot falls below rel_tol times the largest entry.
  static std::optional<LuFactor> factor(Matrix a, double rel_tol = 1e-13);

  // Solves A x = b.
  std::vector<double> solve(std::span<const double> b) const;

  std::size_t size() const { return lu_.rows(); }
  double min_abs_pivot() const { return min_pivot_; }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double min_pivot_ = 0.0;
};

// Solves X A = B for X (row-vector systems), one LU of A^T. Returns nullopt
// when A is numerically singular.
std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);

}  // namespace wncs
