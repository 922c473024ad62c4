#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "wncs/config.hpp"
#include "wncs/queue_model.hpp"

// Exact chain for deterministic service (Geo/D/C/C). The state holds one
// execution pipeline per class: bit k-1 of pipeline i is set when a class-i
// task has exactly k slots of service left.
namespace wncs::det {

struct DetState {
  std::uint64_t pipeline1 = 0;
  std::uint64_t pipeline2 = 0;

  bool operator==(const DetState&) const = default;
};

struct DetStateHash {
  std::size_t operator()(const DetState& s) const noexcept {
    std::uint64_t h = s.pipeline1 * 0x9e3779b97f4a7c15ull ^ (s.pipeline2 + 0x632be59bd9b4e019ull);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

int active_count(std::uint64_t pipeline);
int occupancy(const QueueModel& model, const DetState& s);

// Upper bound on the state count: all (v1, v2) with |v1| + N|v2| <= C.
// Throws ResourceError when the count does not fit in 64 bits.
std::uint64_t count_states(int d1, int d2, int capacity, int units2);

// Joint admission distribution in state s (pre-departure occupancy).
AdmissionKernel admission_kernel(const QueueModel& model, const DetState& s);

// Shift both pipelines one slot; the admitted task enters with the full
// service time. Throws std::invalid_argument on an infeasible admission.
DetState next_state(const QueueModel& model, const DetState& s, bool admit1, bool admit2);

struct Transition {
  std::uint32_t to;
  double prob;
};

// Reachable states in breadth-first order from the empty state, with the
// transition lists of each state.
class StateSpace {
 public:
  static constexpr std::size_t kDefaultCap = 5'000'000;

  // Throws ResourceError when the reachable set exceeds `cap` states or a
  // service time exceeds 63 slots.
  static std::shared_ptr<const StateSpace> enumerate(const QueueModel& model, std::size_t cap = kDefaultCap);

  const QueueModel& model() const { return model_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<DetState>& states() const { return states_; }
  const std::vector<std::int32_t>& occupancies() const { return occupancy_; }
  // Row i of the transition matrix.
  std::span<const Transition> transitions(std::size_t i) const {
    return {edges_.data() + row_begin_[i], row_begin_[i + 1] - row_begin_[i]};
  }
  std::size_t transition_count() const { return edges_.size(); }
  // Ordinal of s, or -1 when unreachable.
  std::int64_t index_of(const DetState& s) const;

 private:
  QueueModel model_;
  std::vector<DetState> states_;
  std::vector<std::int32_t> occupancy_;
  std::unordered_map<DetState, std::uint32_t, DetStateHash> index_;
  std::vector<std::size_t> row_begin_;
  std::vector<Transition> edges_;
};

std::shared_ptr<const StateSpace> enumerate_states(const SystemConfig& config,
                                                   std::size_t cap = StateSpace::kDefaultCap);

struct SteadyState {
  std::shared_ptr<const StateSpace> space;
  std::vector<double> probs;
  double residual = 0.0;  // ||S(P - I)||_inf
  bool used_fallback = false;
};

// Sparse LU on (P^T - I) with one equation replaced by normalization;
// falls back to damped power iteration if the LU fails or its residual is
// above 1e-10. Throws NumericalError when neither reaches 1e-10.
SteadyState solve_steady_state(std::shared_ptr<const StateSpace> space);
SteadyState solve_steady_state(const QueueModel& model, std::size_t cap = StateSpace::kDefaultCap);
SteadyState solve_steady_state(const SystemConfig& config, std::size_t cap = StateSpace::kDefaultCap);

// ||S(P - I)||_inf for an arbitrary vector over the space.
double balance_residual(const StateSpace& space, std::span<const double> probs);

// P(Gamma >= units_needed): probability that units_needed units are free.
double availability_prob(const SteadyState& steady, int units_needed);

// Text dump: header, one "state" line per ordinal, then "row col value".
void write_triplets(std::ostream& out, const StateSpace& space);

}  // namespace wncs::det
