#include <doctest.h>

#include <random>

#include "wncs/dense.hpp"
#include "wncs/kernels.hpp"

using namespace wncs;
using kernels::Isa;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(n, m);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c) a(r, c) = u(rng);
  return a;
}

}  // namespace

TEST_CASE("products") {
  Matrix a(2, 3), b(3, 2);
  double v = 1.0;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 3; ++c) a(r, c) = v++;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 2; ++c) b(r, c) = v++;
  const Matrix p = a * b;
  // [1 2 3; 4 5 6] * [7 8; 9 10; 11 12]
  CHECK(p(0, 0) == 58.0);
  CHECK(p(0, 1) == 64.0);
  CHECK(p(1, 0) == 139.0);
  CHECK(p(1, 1) == 154.0);
  const std::vector<double> x{1.0, -1.0};
  const auto y = std::span<const double>(x) * a;
  CHECK(y == std::vector<double>{-3.0, -3.0, -3.0});
  CHECK(a.transposed()(2, 1) == 6.0);
}

TEST_CASE("LU solves random systems under every ISA") {
  std::mt19937_64 rng(5);
  const Isa before = kernels::active_isa();
  for (Isa isa : {Isa::scalar, kernels::best_isa()}) {
    kernels::set_isa(isa);
    for (std::size_t n : {1u, 2u, 5u, 13u, 40u}) {
      Matrix a = random_matrix(rng, n, n);
      for (std::size_t i = 0; i < n; ++i) a(i, i) += 2.0;
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i) - 3.0;
      std::vector<double> b(n, 0.0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) b[r] += a(r, c) * x[c];
      const auto lu = LuFactor::factor(a);
      REQUIRE(lu);
      const auto sol = lu->solve(b);
      for (std::size_t i = 0; i < n; ++i) CHECK(sol[i] == doctest::Approx(x[i]).epsilon(1e-10));

      const Matrix rhs = random_matrix(rng, 3, n);
      const auto xr = solve_right(a, rhs);
      REQUIRE(xr);
      const Matrix back = *xr * a;
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < n; ++c) CHECK(back(r, c) == doctest::Approx(rhs(r, c)).epsilon(1e-10));
    }
  }
  kernels::set_isa(before);
}

TEST_CASE("singular matrices are rejected") {
  Matrix a(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  CHECK_FALSE(LuFactor::factor(a));
  CHECK_FALSE(LuFactor::factor(Matrix(2, 2)));
  CHECK_FALSE(solve_right(a, Matrix::identity(3)));
}
