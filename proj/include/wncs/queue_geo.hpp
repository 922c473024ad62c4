#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wncs/config.hpp"
#include "wncs/dense.hpp"
#include "wncs/queue_model.hpp"

// Occupancy-count chain for geometric service (Geo/Geo/C/C): each active
// class-i task completes independently with probability 1/D_C,i per slot.
namespace wncs::geo {

struct GeoState {
  int n1 = 0;
  int n2 = 0;

  bool operator==(const GeoState&) const = default;
};

// States grouped by level n1; within a level n2 ascends. Ordinals follow
// that order.
class StateSpace {
 public:
  StateSpace() = default;
  StateSpace(int capacity, int units1, int units2);

  int capacity() const { return capacity_; }
  int units1() const { return units1_; }
  int units2() const { return units2_; }
  int levels() const { return static_cast<int>(level_begin_.size()) - 1; }
  std::size_t level_size(int n1) const { return level_begin_[n1 + 1] - level_begin_[n1]; }
  std::size_t level_begin(int n1) const { return level_begin_[n1]; }

  std::size_t size() const { return states_.size(); }
  const std::vector<GeoState>& states() const { return states_; }
  const std::vector<std::int32_t>& occupancies() const { return occupancy_; }
  bool contains(const GeoState& s) const;
  std::size_t index_of(const GeoState& s) const;

 private:
  int capacity_ = 0;
  int units1_ = 1;
  int units2_ = 1;
  std::vector<GeoState> states_;
  std::vector<std::int32_t> occupancy_;
  std::vector<std::size_t> level_begin_;
};

// Closed-form count of {(n1, n2) : n1 + N n2 <= C}.
std::uint64_t count_states_geo(int capacity, int units2);

// C(n, k) (1 - mu)^k mu^(n - k): probability that k of n tasks remain.
double binomial_departure(int n, double mu, int kappa);

double transition_prob_geo(const GeoState& from, const GeoState& to, const QueueModel& model);

// Full transition matrix over the state space ordering.
Matrix transition_matrix(const QueueModel& model, const StateSpace& space);

struct SteadyState {
  StateSpace space;
  std::vector<double> probs;
  double residual = 0.0;  // ||S(P - I)||_inf
};

// Dense LU of the full balance system. Oracle for the recursion below.
SteadyState solve_direct(const QueueModel& model);
SteadyState solve_direct(const SystemConfig& config);

// Level-wise backward recursion on the block lower Hessenberg generator
// Q = P - I partitioned by n1. Throws NumericalError naming the level whose
// censored block is singular.
SteadyState solve_matrix_geometric(const QueueModel& model);
SteadyState solve_matrix_geometric(const SystemConfig& config);

struct LevelPartition {
  StateSpace space;
  Matrix transition;  // P over the full ordering
  // blocks[j][k] = Q_{j,k}, sized (level j) x (level k).
  std::vector<std::vector<Matrix>> blocks;
};

LevelPartition partition(const QueueModel& model);

double balance_residual(const QueueModel& model, const SteadyState& steady);

double availability_prob(const SteadyState& steady, int units_needed);

void write_triplets(std::ostream& out, const QueueModel& model, const StateSpace& space);

}  // namespace wncs::geo
