#pragma once

#include <string>

#include "wncs/config.hpp"

namespace wncs {

// What the compute-pool chains need to know: structure plus the per-slot
// probability that a class-i task reaches the controller,
// a_i = g_i * eta_i * p_u,i (independent Bernoulli thinnings).
struct QueueModel {
  int capacity = 8;
  int units1 = 1;
  int units2 = 4;
  int service1 = 10;
  int service2 = 10;
  double arrive1 = 0.0;
  double arrive2 = 0.0;

  int units(int cls) const { return cls == 1 ? units1 : units2; }
  int service(int cls) const { return cls == 1 ? service1 : service2; }
  double arrive(int cls) const { return cls == 1 ? arrive1 : arrive2; }
  int occupancy(int n1, int n2) const { return units1 * n1 + units2 * n2; }

  // Uplink success from the channel model.
  static QueueModel from_config(const SystemConfig& config);
  // Uplink treated as error-free (p_u = 1).
  static QueueModel ideal_uplink(const SystemConfig& config);
};

// Joint admission distribution over {(0,0), (1,0), (0,1)}, conditioned on
// the occupancy at the start of the slot (before same-slot departures).
struct AdmissionKernel {
  double none = 1.0;
  double first = 0.0;
  double second = 0.0;
};

AdmissionKernel admission_kernel(const QueueModel& model, int occupancy);

enum class Engine { det, geo_mg, geo_direct, erlang };

const char* engine_name(Engine engine);
// Accepts det, geo-mg, geo-direct, erlang; throws ParseError otherwise.
Engine parse_engine(const std::string& name);

}  // namespace wncs
