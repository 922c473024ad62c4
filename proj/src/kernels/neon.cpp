// AArch64 only; NEON is part of the baseline there.
#include <arm_neon.h>

#include <cmath>

#include "tables.hpp"

namespace wncs::kernels {

namespace {

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0.0);
  float64x2_t a1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vfmaq_f64(a0, vld1q_f64(x + i), vld1q_f64(y + i));
    a1 = vfmaq_f64(a1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), a, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(a, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

double sum(const double* x, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0.0);
  float64x2_t a1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vaddq_f64(a0, vld1q_f64(x + i));
    a1 = vaddq_f64(a1, vld1q_f64(x + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabdq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  double out = vmaxvq_f64(m);
  for (; i < n; ++i) out = std::max(out, std::abs(x[i] - y[i]));
  return out;
}

double masked_sum(const double* p, const std::int32_t* occ, std::int32_t limit, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  const int64x2_t lim = vdupq_n_s64(limit);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    int64x2_t o = vmovl_s32(vld1_s32(occ + i));
    uint64x2_t keep = vcleq_s64(o, lim);
    acc = vaddq_f64(acc, vreinterpretq_f64_u64(vandq_u64(keep, vreinterpretq_u64_f64(vld1q_f64(p + i)))));
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) {
    if (occ[i] <= limit) out += p[i];
  }
  return out;
}

}  // namespace

const Table neon_table{dot, axpy, scale, sum, max_abs_diff, masked_sum};

}  // namespace wncs::kernels
