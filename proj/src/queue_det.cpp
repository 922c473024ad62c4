#include "wncs/queue_det.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wncs/error.hpp"
#include "wncs/format.hpp"
#include "wncs/kernels.hpp"

namespace wncs::det {

int active_count(std::uint64_t pipeline) { return std::popcount(pipeline); }

int occupancy(const QueueModel& model, const DetState& s) {
  return model.occupancy(active_count(s.pipeline1), active_count(s.pipeline2));
}

namespace {

using u128 = unsigned __int128;

u128 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<u128>(n - k + i) / static_cast<u128>(i);
  return r;
}

}  // namespace

std::uint64_t count_states(int d1, int d2, int capacity, int units2) {
  if (d1 < 1 || d2 < 1 || capacity < 1 || units2 < 1)
    throw std::invalid_argument("count_states: arguments must be positive");
  u128 total = 0;
  const int max2 = std::min(d2, capacity / units2);
  for (int n2 = 0; n2 <= max2; ++n2) {
    const int max1 = std::min(d1, capacity - units2 * n2);
    const u128 b2 = binomial(d2, n2);
    for (int n1 = 0; n1 <= max1; ++n1) {
      total += binomial(d1, n1) * b2;
      if (total > std::numeric_limits<std::uint64_t>::max())
        throw ResourceError("count_states: state count exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(total);
}

AdmissionKernel admission_kernel(const QueueModel& model, const DetState& s) {
  return wncs::admission_kernel(model, occupancy(model, s));
}

DetState next_state(const QueueModel& model, const DetState& s, bool admit1, bool admit2) {
  if (admit1 && admit2) throw std::invalid_argument("next_state: at most one admission per slot");
  const int occ = occupancy(model, s);
  if ((admit1 && occ + model.units1 > model.capacity) || (admit2 && occ + model.units2 > model.capacity))
    throw std::invalid_argument("next_state: admission exceeds capacity");
  DetState n;
  n.pipeline1 = (s.pipeline1 >> 1) | (static_cast<std::uint64_t>(admit1) << (model.service1 - 1));
  n.pipeline2 = (s.pipeline2 >> 1) | (static_cast<std::uint64_t>(admit2) << (model.service2 - 1));
  return n;
}

std::shared_ptr<const StateSpace> StateSpace::enumerate(const QueueModel& model, std::size_t cap) {
  if (model.service1 < 1 || model.service1 > 63 || model.service2 < 1 || model.service2 > 63)
    throw ResourceError("deterministic engine supports service times of 1..63 slots; use the geo surrogate");

  auto space = std::make_shared<StateSpace>();
  space->model_ = model;
  space->row_begin_.push_back(0);

  auto intern = [&](const DetState& s) -> std::uint32_t {
    auto [it, inserted] = space->index_.try_emplace(s, static_cast<std::uint32_t>(space->states_.size()));
    if (inserted) {
      if (space->states_.size() >= cap) {
        throw ResourceError("deterministic state space exceeds " + std::to_string(cap) +
                            " states; use the geo-mg surrogate engine");
      }
      space->states_.push_back(s);
      space->occupancy_.push_back(occupancy(model, s));
    }
    return it->second;
  };

  intern(DetState{});
  // states_ doubles as the BFS queue.
  for (std::size_t i = 0; i < space->states_.size(); ++i) {
    const DetState s = space->states_[i];
    const auto k = admission_kernel(model, s);
    auto add = [&](double p, bool a1, bool a2) {
      if (p <= 0.0) return;
      const std::uint32_t to = intern(next_state(model, s, a1, a2));
      space->edges_.push_back({to, p});
    };
    add(k.none, false, false);
    add(k.first, true, false);
    add(k.second, false, true);
    space->row_begin_.push_back(space->edges_.size());
  }
  return space;
}

std::int64_t StateSpace::index_of(const DetState& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::shared_ptr<const StateSpace> enumerate_states(const SystemConfig& config, std::size_t cap) {
  return StateSpace::enumerate(QueueModel::from_config(config), cap);
}

namespace {

std::vector<double> left_multiply(const StateSpace& space, std::span<const double> x) {
  std::vector<double> y(space.size(), 0.0);
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (const auto& t : space.transitions(i)) y[t.to] += x[i] * t.prob;
  }
  return y;
}

void clean_and_normalize(std::vector<double>& p) {
  for (double& v : p) {
    if (v < 0.0) v = 0.0;
  }
  const double total = kernels::sum(p);
  if (total > 0.0) kernels::scale(1.0 / total, p);
}

std::optional<std::vector<double>> sparse_lu_solve(const StateSpace& space, std::string& diagnostics) {
  const auto n = static_cast<Eigen::Index>(space.size());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(space.transition_count() + 2 * space.size());
  const Eigen::Index last = n - 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& t : space.transitions(static_cast<std::size_t>(i))) {
      if (static_cast<Eigen::Index>(t.to) != last) triplets.emplace_back(t.to, i, t.prob);
    }
    if (i != last) triplets.emplace_back(i, i, -1.0);
    triplets.emplace_back(last, i, 1.0);
  }
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    diagnostics = "sparse LU failed: " + lu.lastErrorMessage();
    return std::nullopt;
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(last) = 1.0;
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success) {
    diagnostics = "sparse LU solve failed: " + lu.lastErrorMessage();
    return std::nullopt;
  }
  return std::vector<double>(x.data(), x.data() + n);
}

std::vector<double> power_iteration(const StateSpace& space) {
  constexpr double tol = 1e-12;
  constexpr int max_iter = 1'000'000;
  std::vector<double> x(space.size(), 1.0 / static_cast<double>(space.size()));
  for (int it = 0; it < max_iter; ++it) {
    // Lazy chain (P + I)/2 has the same stationary vector and is aperiodic.
    auto y = left_multiply(space, x);
    kernels::axpy(1.0, x, y);
    kernels::scale(0.5, y);
    const double change = kernels::max_abs_diff(x, y);
    x = std::move(y);
    if (change < tol) break;
  }
  return x;
}

}  // namespace

double balance_residual(const StateSpace& space, std::span<const double> probs) {
  const auto y = left_multiply(space, probs);
  return kernels::max_abs_diff(y, probs);
}

SteadyState solve_steady_state(std::shared_ptr<const StateSpace> space) {
  constexpr double tol = 1e-10;
  SteadyState out;
  out.space = space;
  if (space->size() == 1) {
    out.probs = {1.0};
    out.residual = balance_residual(*space, out.probs);
    return out;
  }

  std::string diagnostics;
  if (auto x = sparse_lu_solve(*space, diagnostics)) {
    clean_and_normalize(*x);
    const double r = balance_residual(*space, *x);
    if (r <= tol) {
      out.probs = std::move(*x);
      out.residual = r;
      return out;
    }
    diagnostics = "sparse LU residual " + fmt_double(r);
  }

  auto x = power_iteration(*space);
  clean_and_normalize(x);
  const double r = balance_residual(*space, x);
  if (!(r <= tol)) {
    throw NumericalError("deterministic chain: no stationary solution within 1e-10 (" + diagnostics +
                         "; power iteration residual " + fmt_double(r) + ", " +
                         std::to_string(space->size()) + " states)");
  }
  out.probs = std::move(x);
  out.residual = r;
  out.used_fallback = true;
  return out;
}

SteadyState solve_steady_state(const QueueModel& model, std::size_t cap) {
  return solve_steady_state(StateSpace::enumerate(model, cap));
}

SteadyState solve_steady_state(const SystemConfig& config, std::size_t cap) {
  return solve_steady_state(enumerate_states(config, cap));
}

double availability_prob(const SteadyState& steady, int units_needed) {
  const int limit = steady.space->model().capacity - units_needed;
  if (limit < 0) return 0.0;
  return kernels::masked_sum(steady.probs, steady.space->occupancies(), limit);
}

namespace {

std::string bits(std::uint64_t v, int len) {
  std::string s(static_cast<std::size_t>(len), '0');
  for (int k = 0; k < len; ++k) {
    if ((v >> k) & 1u) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

}  // namespace

void write_triplets(std::ostream& out, const StateSpace& space) {
  const auto& m = space.model();
  out << "# wncs-triplets v1 engine=det states=" << space.size() << " nonzeros=" << space.transition_count()
      << "\n";
  out << "# state <ordinal> <pipeline1 k=1..D1> <pipeline2 k=1..D2>\n";
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << "state " << i << ' ' << bits(space.states()[i].pipeline1, m.service1) << ' '
        << bits(space.states()[i].pipeline2, m.service2) << '\n';
  }
  out << "# <row> <col> <value>\n";
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (const auto& t : space.transitions(i)) out << i << ' ' << t.to << ' ' << fmt_double(t.prob) << '\n';
  }
}

}  // namespace wncs::det
