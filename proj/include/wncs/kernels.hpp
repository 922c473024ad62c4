#pragma once

#include <cstdint>
#include <span>

// Data-parallel inner loops used by the dense linear algebra and the
// availability sums. Every kernel has a scalar reference version and
// optional AVX2 / NEON versions; the best supported one is picked at first
// use. Vector variants reassociate reductions, so they agree with the scalar
// versions to rounding, not bit for bit.
namespace wncs::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
Isa best_isa();
Isa active_isa();
// Throws std::invalid_argument when the CPU lacks the requested ISA.
void set_isa(Isa isa);

double dot(std::span<const double> x, std::span<const double> y);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
double sum(std::span<const double> x);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
// sum of probs[i] over i with occupancy[i] <= limit
double masked_sum(std::span<const double> probs, std::span<const std::int32_t> occupancy,
                  std::int32_t limit);

// Explicit-ISA entry points for equivalence testing.
struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*max_abs_diff)(const double*, const double*, std::size_t);
  double (*masked_sum)(const double*, const std::int32_t*, std::int32_t, std::size_t);
};

const Table& table_for(Isa isa);

}  // namespace wncs::kernels
