#include "wncs/dense.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "wncs/kernels.hpp"

namespace wncs {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  assert(rows_ == other.rows_ && cols_ == other.cols_);
  kernels::axpy(1.0, other.data_, data_);
  return *this;
}

Matrix& Matrix::operator*=(double alpha) {
  kernels::scale(alpha, data_);
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double s = a(i, k);
      if (s != 0.0) kernels::axpy(s, b.row(k), out);
    }
  }
  return c;
}

std::vector<double> operator*(std::span<const double> x, const Matrix& a) {
  assert(x.size() == a.rows());
  std::vector<double> out(a.cols(), 0.0);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (x[k] != 0.0) kernels::axpy(x[k], a.row(k), out);
  }
  return out;
}

std::optional<LuFactor> LuFactor::factor(Matrix a, double rel_tol) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  double scale = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (double v : a.row(r)) scale = std::max(scale, std::abs(v));
  if (n > 0 && scale == 0.0) return std::nullopt;

  LuFactor f;
  f.perm_.resize(n);
  std::iota(f.perm_.begin(), f.perm_.end(), std::size_t{0});
  f.min_pivot_ = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    }
    const double pivot = a(p, k);
    f.min_pivot_ = std::min(f.min_pivot_, std::abs(pivot));
    if (std::abs(pivot) <= rel_tol * scale) return std::nullopt;
    if (p != k) {
      std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(p).begin());
      std::swap(f.perm_[k], f.perm_[p]);
    }
    auto pivot_tail = a.row(k).subspan(k + 1);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = a(i, k) / pivot;
      a(i, k) = l;
      if (l != 0.0) kernels::axpy(-l, pivot_tail, a.row(i).subspan(k + 1));
    }
  }
  f.lu_ = std::move(a);
  return f;
}

std::vector<double> LuFactor::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  assert(b.size() == n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = b[perm_[i]] - kernels::dot(lu_.row(i).first(i), std::span<const double>(x).first(i));
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto tail = lu_.row(i).subspan(i + 1);
    const double s = kernels::dot(tail, std::span<const double>(x).subspan(i + 1));
    x[i] = (x[i] - s) / lu_(i, i);
  }
  return x;
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
  assert(a.rows() == a.cols() && b.cols() == a.rows());
  auto lu = LuFactor::factor(a.transposed());
  if (!lu) return std::nullopt;
  Matrix x(b.rows(), b.cols());
  for (std::size_t r = 0; r < b.rows(); ++r) {
    auto sol = lu->solve(b.row(r));
    std::copy(sol.begin(), sol.end(), x.row(r).begin());
  }
  return x;
}

}  // namespace wncs
