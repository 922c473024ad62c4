#pragma once

#include <array>
#include <cstddef>

#include "wncs/metrics.hpp"
#include "wncs/queue_det.hpp"
#include "wncs/queue_model.hpp"

namespace wncs {

// P(Gamma >= N_i) for both classes from the selected queue engine.
std::array<double, 2> engine_availability(const QueueModel& model, Engine engine,
                                          std::size_t det_cap = det::StateSpace::kDefaultCap);

// Channel -> engine availability -> closed-form metrics.
MetricsReport analyze(const SystemConfig& config, Engine engine,
                      std::size_t det_cap = det::StateSpace::kDefaultCap);

}  // namespace wncs
