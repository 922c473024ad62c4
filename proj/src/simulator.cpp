#include "wncs/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <sstream>

#include "wncs/channel.hpp"
#include "wncs/error.hpp"
#include "wncs/format.hpp"

namespace wncs::sim {

const char* to_string(ServiceMode m) { return m == ServiceMode::deterministic ? "deterministic" : "geometric"; }

const char* to_string(DepartureSemantics d) { return d == DepartureSemantics::pre ? "pre" : "post"; }

const char* to_string(UplinkMode u) {
  switch (u) {
    case UplinkMode::bernoulli:
      return "bernoulli";
    case UplinkMode::fading:
      return "fading";
    case UplinkMode::ideal:
      return "ideal";
  }
  return "unknown";
}

namespace {

// One generator per stochastic stage so that switching, e.g., the uplink
// mode leaves the other draws untouched.
enum Stream : std::uint64_t { kGeneration = 1, kAdmission, kUplink, kService };

std::mt19937_64 make_stream(std::uint64_t seed, Stream stage) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stage)};
  return std::mt19937_64(seq);
}

inline double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

class BatchMeans {
 public:
  explicit BatchMeans(int batches) : num_(batches, 0.0), den_(batches, 0.0) {}

  void add(int batch, double value, double weight = 1.0) {
    num_[batch] += value;
    den_[batch] += weight;
  }

  // Pooled ratio with the standard error of the per-batch ratios. Batches
  // without any weight are skipped.
  Estimate estimate() const {
    double tn = 0.0;
    double td = 0.0;
    std::vector<double> ratios;
    for (std::size_t b = 0; b < num_.size(); ++b) {
      tn += num_[b];
      td += den_[b];
      if (den_[b] > 0.0) ratios.push_back(num_[b] / den_[b]);
    }
    Estimate e;
    e.mean = td > 0.0 ? tn / td : std::nan("");
    if (ratios.size() >= 2) {
      double m = 0.0;
      for (double r : ratios) m += r;
      m /= static_cast<double>(ratios.size());
      double ss = 0.0;
      for (double r : ratios) ss += (r - m) * (r - m);
      const double k = static_cast<double>(ratios.size());
      e.std_error = std::sqrt(ss / (k - 1.0) / k);
    } else {
      e.std_error = std::nan("");
    }
    return e;
  }

 private:
  std::vector<double> num_;
  std::vector<double> den_;
};

struct Entry {
  std::int64_t generated_at;
  int remaining;  // deterministic mode only
  int cls;        // 0 or 1
};

}  // namespace

SimResult run(const SystemConfig& config, const SimOptions& options) {
  const auto report = validate(config);
  if (!report.valid()) throw ValidationError("simulator: invalid configuration: " + report.violations.front());
  if (options.batches < 2) throw ValidationError("simulator: need at least two batches");

  SimResult out;
  out.slots = options.slots.value_or(config.sim_slots);
  out.seed = options.seed.value_or(config.rng_seed);
  out.service = options.service;
  out.departures = options.departures;
  out.uplink = options.uplink;
  out.slot_convention = kSlotConvention;
  out.warmup = std::min(options.warmup, out.slots / 10);
  if (out.slots - out.warmup < options.batches) throw ValidationError("simulator: horizon shorter than batch count");

  const int capacity = config.compute.capacity;
  const std::array<const TaskClassParams*, 2> task{&config.task1, &config.task2};
  std::array<double, 2> psi{};
  std::array<double, 2> p_up{};
  for (int i = 0; i < 2; ++i) {
    psi[i] = fading_threshold(config.channel, task[i]->tx_power);
    p_up[i] = uplink_success_prob(config.channel, task[i]->tx_power);
  }
  const double g1 = config.task1.gen_prob;
  const double g12 = g1 + config.task2.gen_prob;

  auto gen_rng = make_stream(out.seed, kGeneration);
  auto adm_rng = make_stream(out.seed, kAdmission);
  auto up_rng = make_stream(out.seed, kUplink);
  auto svc_rng = make_stream(out.seed, kService);
  std::gamma_distribution<double> fading(config.channel.shape, 1.0 / config.channel.shape);

  const int batches = options.batches;
  const std::int64_t window = out.slots - out.warmup;
  std::array<BatchMeans, 2> aoa_bm{BatchMeans(batches), BatchMeans(batches)};
  std::array<BatchMeans, 2> block_bm{BatchMeans(batches), BatchMeans(batches)};
  std::array<BatchMeans, 2> block_slot_bm{BatchMeans(batches), BatchMeans(batches)};
  std::array<BatchMeans, 2> uplink_bm{BatchMeans(batches), BatchMeans(batches)};
  BatchMeans coma_bm(batches);
  BatchMeans aoi_bm(batches);
  std::array<std::int64_t, 2> executed_at_warmup{0, 0};
  std::int64_t received_in_window = 0;

  std::vector<Entry> pool;
  pool.reserve(static_cast<std::size_t>(capacity) + 1);
  int occupancy = 0;
  // Generation time of the most recently executed packet (a late, stale
  // completion overwrites a fresher one) and of the freshest received one.
  // Time 0 acts as a virtual initial update.
  std::array<std::int64_t, 2> last_exec{0, 0};
  std::int64_t last_rx = 0;

  auto release = [&] {
    std::array<std::int64_t, 2> done_gen{-1, -1};
    for (std::size_t k = 0; k < pool.size();) {
      Entry& e = pool[k];
      bool done;
      if (options.service == ServiceMode::deterministic) {
        done = --e.remaining == 0;
      } else {
        done = uniform(svc_rng) < 1.0 / task[e.cls]->service_slots;
      }
      if (done) {
        done_gen[e.cls] = std::max(done_gen[e.cls], e.generated_at);
        ++out.counts[e.cls].executed;
        occupancy -= task[e.cls]->units_required;
        e = pool.back();
        pool.pop_back();
      } else {
        ++k;
      }
    }
    for (int i = 0; i < 2; ++i) {
      if (done_gen[i] >= 0) last_exec[i] = done_gen[i];
    }
  };

  for (std::int64_t t = 0; t < out.slots; ++t) {
    const bool measured = t >= out.warmup;
    const int batch = measured ? static_cast<int>((t - out.warmup) * batches / window) : -1;

    if (t == out.warmup) {
      for (int i = 0; i < 2; ++i) executed_at_warmup[i] = out.counts[i].executed;
    }
    if (measured) {
      for (int i = 0; i < 2; ++i) aoa_bm[i].add(batch, static_cast<double>(t - last_exec[i]));
      aoi_bm.add(batch, static_cast<double>(t - last_rx));
    }

    // Departures at the end of this slot; under post semantics they free
    // their units before this slot's admission check.
    if (options.departures == DepartureSemantics::post) release();

    if (measured) {
      for (int i = 0; i < 2; ++i) {
        block_slot_bm[i].add(batch, occupancy + task[i]->units_required > capacity ? 1.0 : 0.0);
      }
    }

    double penalty = 0.0;
    const double u = uniform(gen_rng);
    const int cls = u < g1 ? 0 : (u < g12 ? 1 : -1);
    std::optional<Entry> admitted;
    if (cls >= 0) {
      const auto& tp = *task[cls];
      auto& cnt = out.counts[cls];
      ++cnt.generated;
      if (uniform(adm_rng) >= tp.admit_prob) {
        ++cnt.rejected;
        penalty += tp.penalty;
      } else {
        bool ok = true;
        switch (options.uplink) {
          case UplinkMode::bernoulli:
            ok = uniform(up_rng) < p_up[cls];
            break;
          case UplinkMode::fading:
            ok = fading(up_rng) >= psi[cls];
            break;
          case UplinkMode::ideal:
            break;
        }
        if (measured) uplink_bm[cls].add(batch, ok ? 1.0 : 0.0);
        if (!ok) {
          ++cnt.uplink_lost;
          penalty += tp.penalty;
        } else {
          last_rx = t;
          if (measured) ++received_in_window;
          const bool blocked = occupancy + tp.units_required > capacity;
          if (measured) block_bm[cls].add(batch, blocked ? 1.0 : 0.0);
          if (blocked) {
            ++cnt.compute_blocked;
            penalty += tp.penalty;
          } else {
            admitted = Entry{t, tp.service_slots, cls};
          }
        }
      }
    }
    if (measured) coma_bm.add(batch, penalty);

    if (options.departures == DepartureSemantics::pre) release();
    if (admitted) {
      pool.push_back(*admitted);
      occupancy += task[admitted->cls]->units_required;
    }
    assert(occupancy <= capacity);
    out.max_occupancy = std::max(out.max_occupancy, occupancy);
  }

  for (const auto& e : pool) ++out.counts[e.cls].in_flight;

  for (int i = 0; i < 2; ++i) {
    out.aoa[i] = aoa_bm[i].estimate();
    out.aoa[i].mean += task[i]->downlink_delay;
    if (out.counts[i].executed == executed_at_warmup[i]) out.aoa[i] = {std::numeric_limits<double>::infinity(), std::nan("")};
    out.blocking[i] = block_bm[i].estimate();
    out.blocking_slots[i] = block_slot_bm[i].estimate();
    out.uplink_success[i] = uplink_bm[i].estimate();
  }
  out.coma = coma_bm.estimate();
  out.aoi = aoi_bm.estimate();
  if (received_in_window == 0) out.aoi = {std::numeric_limits<double>::infinity(), std::nan("")};
  return out;
}

std::string csv_header() {
  return "service,departures,uplink,slots,warmup,seed,"
         "aoa1,aoa1_se,aoa2,aoa2_se,coma,coma_se,aoi,aoi_se,"
         "blocking1,blocking1_se,blocking2,blocking2_se,"
         "blocking_slots1,blocking_slots1_se,blocking_slots2,blocking_slots2_se,"
         "uplink1,uplink1_se,uplink2,uplink2_se,"
         "generated1,rejected1,uplink_lost1,compute_blocked1,executed1,in_flight1,"
         "generated2,rejected2,uplink_lost2,compute_blocked2,executed2,in_flight2,"
         "max_occupancy,slot_convention";
}

std::string csv_row(const SimResult& r) {
  std::ostringstream o;
  auto est = [&](const Estimate& e) { o << ',' << fmt_double(e.mean) << ',' << fmt_double(e.std_error); };
  o << to_string(r.service) << ',' << to_string(r.departures) << ',' << to_string(r.uplink) << ',' << r.slots << ','
    << r.warmup << ',' << r.seed;
  est(r.aoa[0]);
  est(r.aoa[1]);
  est(r.coma);
  est(r.aoi);
  est(r.blocking[0]);
  est(r.blocking[1]);
  est(r.blocking_slots[0]);
  est(r.blocking_slots[1]);
  est(r.uplink_success[0]);
  est(r.uplink_success[1]);
  for (const auto& c : r.counts) {
    o << ',' << c.generated << ',' << c.rejected << ',' << c.uplink_lost << ',' << c.compute_blocked << ','
      << c.executed << ',' << c.in_flight;
  }
  o << ',' << r.max_occupancy << ',' << r.slot_convention;
  return o.str();
}

}  // namespace wncs::sim
