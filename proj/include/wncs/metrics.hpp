#pragma once

#include <array>
#include <limits>
#include <string>

#include "wncs/config.hpp"
#include "wncs/queue_model.hpp"

namespace wncs {

// Unbounded time averages (a class that is never executed) are +infinity.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();
inline bool is_unbounded(double v) { return v == kUnbounded; }

// Per-class inputs to the closed-form metrics.
struct ClassTerms {
  double gen_prob = 0.0;
  double admit_prob = 1.0;
  double uplink = 1.0;        // p_u
  double availability = 1.0;  // P(Gamma >= N_i)
  double penalty = 0.0;
};

// Time-average age of actuation:
// 1 / (g eta p_u avail) + D_C + D_T, unbounded when the product is zero.
double task_aoa(double gen_prob, double admit_prob, double uplink, double availability, double service_slots,
                double downlink_delay);

// Cost of missing actuation: sum_i omega_i g_i (1 - eta_i p_u,i avail_i).
double coma(const ClassTerms& task1, const ClassTerms& task2);

// Sensor-to-controller AoI baseline: 1 / (g1 eta1 p1 + g2 eta2 p2).
double aoi_baseline(double g1, double eta1, double pu1, double g2, double eta2, double pu2);

struct MetricsReport {
  std::array<double, 2> aoa{};
  double coma = 0.0;
  double aoi = 0.0;
  std::array<double, 2> availability{};
  std::array<double, 2> uplink{};
  Engine engine = Engine::geo_mg;
};

// Availability-parameterized composition: the caller chooses where
// availability comes from.
MetricsReport compose_metrics(const SystemConfig& config, const std::array<double, 2>& uplink,
                              const std::array<double, 2>& availability, Engine engine);

}  // namespace wncs
