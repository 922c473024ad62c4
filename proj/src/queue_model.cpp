#include "wncs/queue_model.hpp"

#include "wncs/channel.hpp"
#include "wncs/error.hpp"

namespace wncs {

namespace {

QueueModel structure(const SystemConfig& config) {
  QueueModel m;
  m.capacity = config.compute.capacity;
  m.units1 = config.task1.units_required;
  m.units2 = config.task2.units_required;
  m.service1 = config.task1.service_slots;
  m.service2 = config.task2.service_slots;
  return m;
}

}  // namespace

QueueModel QueueModel::from_config(const SystemConfig& config) {
  QueueModel m = structure(config);
  m.arrive1 = config.task1.gen_prob * config.task1.admit_prob *
              uplink_success_prob(config.channel, config.task1.tx_power);
  m.arrive2 = config.task2.gen_prob * config.task2.admit_prob *
              uplink_success_prob(config.channel, config.task2.tx_power);
  return m;
}

QueueModel QueueModel::ideal_uplink(const SystemConfig& config) {
  QueueModel m = structure(config);
  m.arrive1 = config.task1.gen_prob * config.task1.admit_prob;
  m.arrive2 = config.task2.gen_prob * config.task2.admit_prob;
  return m;
}

AdmissionKernel admission_kernel(const QueueModel& model, int occupancy) {
  AdmissionKernel k;
  k.first = occupancy + model.units1 <= model.capacity ? model.arrive1 : 0.0;
  k.second = occupancy + model.units2 <= model.capacity ? model.arrive2 : 0.0;
  k.none = 1.0 - k.first - k.second;
  return k;
}

const char* engine_name(Engine engine) {
  switch (engine) {
    case Engine::det:
      return "det";
    case Engine::geo_mg:
      return "geo-mg";
    case Engine::geo_direct:
      return "geo-direct";
    case Engine::erlang:
      return "erlang";
  }
  return "unknown";
}

Engine parse_engine(const std::string& name) {
  if (name == "det") return Engine::det;
  if (name == "geo-mg") return Engine::geo_mg;
  if (name == "geo-direct") return Engine::geo_direct;
  if (name == "erlang") return Engine::erlang;
  throw ParseError("unknown engine '" + name + "' (expected det, geo-mg, geo-direct, erlang)");
}

}  // namespace wncs
