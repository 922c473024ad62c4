#include "wncs/analysis.hpp"

#include "wncs/channel.hpp"
#include "wncs/erlang.hpp"
#include "wncs/queue_geo.hpp"

namespace wncs {

std::array<double, 2> engine_availability(const QueueModel& model, Engine engine, std::size_t det_cap) {
  switch (engine) {
    case Engine::det: {
      const auto s = det::solve_steady_state(model, det_cap);
      return {det::availability_prob(s, model.units1), det::availability_prob(s, model.units2)};
    }
    case Engine::geo_mg: {
      const auto s = geo::solve_matrix_geometric(model);
      return {geo::availability_prob(s, model.units1), geo::availability_prob(s, model.units2)};
    }
    case Engine::geo_direct: {
      const auto s = geo::solve_direct(model);
      return {geo::availability_prob(s, model.units1), geo::availability_prob(s, model.units2)};
    }
    case Engine::erlang: {
      const auto s = erlang::erlang_steady_state(model);
      return {erlang::availability_prob_erlang(s, model.units1), erlang::availability_prob_erlang(s, model.units2)};
    }
  }
  return {0.0, 0.0};
}

MetricsReport analyze(const SystemConfig& config, Engine engine, std::size_t det_cap) {
  const std::array<double, 2> uplink{uplink_success_prob(config.channel, config.task1.tx_power),
                                     uplink_success_prob(config.channel, config.task2.tx_power)};
  QueueModel model = QueueModel::ideal_uplink(config);
  model.arrive1 *= uplink[0];
  model.arrive2 *= uplink[1];
  return compose_metrics(config, uplink, engine_availability(model, engine, det_cap), engine);
}

}  // namespace wncs
