#include <atomic>
#include <cassert>
#include <stdexcept>
#include <string>

#include "tables.hpp"

namespace wncs::kernels {

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(WNCS_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(WNCS_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

const Table& table_for(Isa isa) {
  if (!isa_supported(isa)) throw std::invalid_argument(std::string("ISA not supported: ") + isa_name(isa));
  switch (isa) {
#if defined(WNCS_HAVE_AVX2)
    case Isa::avx2:
      return avx2_table;
#endif
#if defined(WNCS_HAVE_NEON)
    case Isa::neon:
      return neon_table;
#endif
    default:
      return scalar_table;
  }
}

namespace {

std::atomic<const Table*> g_active{nullptr};
std::atomic<Isa> g_isa{Isa::scalar};

const Table& active() {
  const Table* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    Isa isa = best_isa();
    g_isa.store(isa);
    t = &table_for(isa);
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

Isa active_isa() {
  active();
  return g_isa.load();
}

void set_isa(Isa isa) {
  const Table* t = &table_for(isa);
  g_isa.store(isa);
  g_active.store(t, std::memory_order_release);
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x) { active().scale(alpha, x.data(), x.size()); }

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().max_abs_diff(x.data(), y.data(), x.size());
}

double masked_sum(std::span<const double> probs, std::span<const std::int32_t> occupancy, std::int32_t limit) {
  assert(probs.size() == occupancy.size());
  return active().masked_sum(probs.data(), occupancy.data(), limit, probs.size());
}

}  // namespace wncs::kernels
