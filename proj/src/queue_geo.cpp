#include "wncs/queue_geo.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "wncs/error.hpp"
#include "wncs/format.hpp"
#include "wncs/kernels.hpp"

namespace wncs::geo {

StateSpace::StateSpace(int capacity, int units1, int units2)
    : capacity_(capacity), units1_(units1), units2_(units2) {
  if (capacity < 0 || units1 < 1 || units2 < 1) throw std::invalid_argument("geo::StateSpace: bad dimensions");
  for (int n1 = 0; units1 * n1 <= capacity; ++n1) {
    level_begin_.push_back(states_.size());
    for (int n2 = 0; units1 * n1 + units2 * n2 <= capacity; ++n2) {
      states_.push_back({n1, n2});
      occupancy_.push_back(units1 * n1 + units2 * n2);
    }
  }
  level_begin_.push_back(states_.size());
}

bool StateSpace::contains(const GeoState& s) const {
  return s.n1 >= 0 && s.n2 >= 0 && units1_ * s.n1 + units2_ * s.n2 <= capacity_;
}

std::size_t StateSpace::index_of(const GeoState& s) const {
  if (!contains(s)) throw std::out_of_range("geo::StateSpace: state outside the capacity constraint");
  return level_begin_[static_cast<std::size_t>(s.n1)] + static_cast<std::size_t>(s.n2);
}

std::uint64_t count_states_geo(int capacity, int units2) {
  if (capacity < 1 || units2 < 1) throw std::invalid_argument("count_states_geo: arguments must be positive");
  const std::uint64_t c = static_cast<std::uint64_t>(capacity);
  const std::uint64_t q = c / static_cast<std::uint64_t>(units2);
  // (C + 1 + (C + 1 - N q)) (q + 1) / 2; the product is always even.
  return ((c + 1) + (c + 1 - static_cast<std::uint64_t>(units2) * q)) * (q + 1) / 2;
}

double binomial_departure(int n, double mu, int kappa) {
  if (kappa < 0 || kappa > n) return 0.0;
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(kappa + 1.0) - std::lgamma(n - kappa + 1.0);
  const int departed = n - kappa;
  // Exact zeros for mu in {0, 1} avoid log(0).
  if ((mu == 0.0 && departed > 0) || (mu == 1.0 && kappa > 0)) return 0.0;
  double log_p = log_choose;
  if (kappa > 0) log_p += kappa * std::log1p(-mu);
  if (departed > 0) log_p += departed * std::log(mu);
  return std::exp(log_p);
}

double transition_prob_geo(const GeoState& from, const GeoState& to, const QueueModel& model) {
  const double mu1 = 1.0 / model.service1;
  const double mu2 = 1.0 / model.service2;
  const auto k = admission_kernel(model, model.occupancy(from.n1, from.n2));
  auto term = [&](double p, int a1, int a2) {
    if (p == 0.0) return 0.0;
    return p * binomial_departure(from.n1, mu1, to.n1 - a1) * binomial_departure(from.n2, mu2, to.n2 - a2);
  };
  return term(k.none, 0, 0) + term(k.first, 1, 0) + term(k.second, 0, 1);
}

namespace {

// pmf[n][kappa] = B(n, mu | kappa)
std::vector<std::vector<double>> remaining_pmf(int max_n, double mu) {
  std::vector<std::vector<double>> pmf(static_cast<std::size_t>(max_n) + 1);
  for (int n = 0; n <= max_n; ++n) {
    pmf[n].resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) pmf[n][k] = binomial_departure(n, mu, k);
  }
  return pmf;
}

}  // namespace

Matrix transition_matrix(const QueueModel& model, const StateSpace& space) {
  const int max1 = model.capacity / model.units1;
  const int max2 = model.capacity / model.units2;
  const auto pmf1 = remaining_pmf(max1, 1.0 / model.service1);
  const auto pmf2 = remaining_pmf(max2, 1.0 / model.service2);

  Matrix p(space.size(), space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto [n1, n2] = space.states()[i];
    const auto k = admission_kernel(model, space.occupancies()[i]);
    auto spread = [&](double pa, int a1, int a2) {
      if (pa == 0.0) return;
      for (int r1 = 0; r1 <= n1; ++r1) {
        const double w1 = pa * pmf1[n1][r1];
        if (w1 == 0.0) continue;
        for (int r2 = 0; r2 <= n2; ++r2) {
          p(i, space.index_of({r1 + a1, r2 + a2})) += w1 * pmf2[n2][r2];
        }
      }
    };
    spread(k.none, 0, 0);
    spread(k.first, 1, 0);
    spread(k.second, 0, 1);
  }
  return p;
}

LevelPartition partition(const QueueModel& model) {
  LevelPartition lp;
  lp.space = StateSpace(model.capacity, model.units1, model.units2);
  lp.transition = transition_matrix(model, lp.space);
  const Matrix& p = lp.transition;
  const int levels = lp.space.levels();
  lp.blocks.resize(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) {
    lp.blocks[j].reserve(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k) {
      Matrix b(lp.space.level_size(j), lp.space.level_size(k));
      for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
          b(r, c) = p(lp.space.level_begin(j) + r, lp.space.level_begin(k) + c) - (j == k && r == c ? 1.0 : 0.0);
        }
      }
      lp.blocks[j].push_back(std::move(b));
    }
  }
  return lp;
}

namespace {

void clean_and_normalize(std::vector<double>& p) {
  for (double& v : p) {
    if (v < 0.0) v = 0.0;
  }
  const double total = kernels::sum(p);
  if (total > 0.0) kernels::scale(1.0 / total, p);
}

double residual_of(const Matrix& p, std::span<const double> s) {
  const auto sp = s * p;
  return kernels::max_abs_diff(sp, s);
}

}  // namespace

double balance_residual(const QueueModel& model, const SteadyState& steady) {
  return residual_of(transition_matrix(model, steady.space), steady.probs);
}

SteadyState solve_direct(const QueueModel& model) {
  SteadyState out;
  out.space = StateSpace(model.capacity, model.units1, model.units2);
  const Matrix p = transition_matrix(model, out.space);
  const auto n = static_cast<Eigen::Index>(out.space.size());

  Eigen::MatrixXd a(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) a(r, c) = p(static_cast<std::size_t>(c), static_cast<std::size_t>(r));
  a.diagonal().array() -= 1.0;
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    throw NumericalError("geo direct solve: balance system is singular (rank " + std::to_string(lu.rank()) +
                         " of " + std::to_string(n) + ")");
  }
  Eigen::VectorXd x = lu.solve(b);
  out.probs.assign(x.data(), x.data() + n);
  clean_and_normalize(out.probs);
  out.residual = residual_of(p, out.probs);
  if (!(out.residual <= 1e-12)) {
    throw NumericalError("geo direct solve: residual " + fmt_double(out.residual) + " above 1e-12");
  }
  return out;
}

SteadyState solve_direct(const SystemConfig& config) { return solve_direct(QueueModel::from_config(config)); }

SteadyState solve_matrix_geometric(const QueueModel& model) {
  const LevelPartition lp = partition(model);
  const auto& q = lp.blocks;
  const int top = lp.space.levels() - 1;

  // rate[k] = R_k for k = 1..top; rate[0] unused.
  std::vector<Matrix> rate(static_cast<std::size_t>(top) + 1);

  // Q_{k,k} plus the excursions above level k folded back in.
  auto censored = [&](int k) {
    Matrix folded = q[k][k];
    Matrix path;
    for (int n = k + 1; n <= top; ++n) {
      path = (n == k + 1) ? rate[n] : path * rate[n];
      folded += path * q[n][k];
    }
    return folded;
  };

  for (int k = top; k >= 1; --k) {
    Matrix qt = censored(k);
    Matrix rhs = q[k - 1][k];
    rhs *= -1.0;
    auto r = solve_right(qt, rhs);
    if (!r) throw NumericalError("matrix-geometric: censored block at level " + std::to_string(k) + " is singular");
    rate[k] = std::move(*r);
  }

  // Boundary system for level 0 with the normalization weights
  // 1 + sum_n (R_1 ... R_n) 1.
  const Matrix qt0 = censored(0);
  const std::size_t m0 = lp.space.level_size(0);
  std::vector<double> weight(m0, 1.0);
  {
    Matrix path;
    for (int n = 1; n <= top; ++n) {
      path = (n == 1) ? rate[1] : path * rate[n];
      for (std::size_t r = 0; r < m0; ++r) weight[r] += kernels::sum(path.row(r));
    }
  }

  Matrix sys = qt0.transposed();
  for (std::size_t c = 0; c < m0; ++c) sys(m0 - 1, c) = weight[c];
  std::vector<double> b(m0, 0.0);
  b[m0 - 1] = 1.0;
  auto lu = LuFactor::factor(sys);
  if (!lu) throw NumericalError("matrix-geometric: boundary system at level 0 is singular");
  std::vector<double> level = lu->solve(b);

  SteadyState out;
  out.space = lp.space;
  out.probs.reserve(lp.space.size());
  out.probs.insert(out.probs.end(), level.begin(), level.end());
  for (int k = 1; k <= top; ++k) {
    level = std::span<const double>(level) * rate[k];
    out.probs.insert(out.probs.end(), level.begin(), level.end());
  }
  clean_and_normalize(out.probs);
  out.residual = residual_of(lp.transition, out.probs);
  return out;
}

SteadyState solve_matrix_geometric(const SystemConfig& config) {
  return solve_matrix_geometric(QueueModel::from_config(config));
}

double availability_prob(const SteadyState& steady, int units_needed) {
  const int limit = steady.space.capacity() - units_needed;
  if (limit < 0) return 0.0;
  return kernels::masked_sum(steady.probs, steady.space.occupancies(), limit);
}

void write_triplets(std::ostream& out, const QueueModel& model, const StateSpace& space) {
  const Matrix p = transition_matrix(model, space);
  std::size_t nnz = 0;
  for (std::size_t r = 0; r < p.rows(); ++r)
    for (double v : p.row(r)) nnz += v != 0.0;
  out << "# wncs-triplets v1 engine=geo states=" << space.size() << " nonzeros=" << nnz << "\n";
  out << "# state <ordinal> <n1> <n2>\n";
  for (std::size_t i = 0; i < space.size(); ++i)
    out << "state " << i << ' ' << space.states()[i].n1 << ' ' << space.states()[i].n2 << '\n';
  out << "# <row> <col> <value>\n";
  for (std::size_t r = 0; r < p.rows(); ++r) {
    for (std::size_t c = 0; c < p.cols(); ++c) {
      if (p(r, c) != 0.0) out << r << ' ' << c << ' ' << fmt_double(p(r, c)) << '\n';
    }
  }
}

}  // namespace wncs::geo
