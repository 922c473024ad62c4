#pragma once

// Test-only reference computations. Nothing here calls the library code path
// it is used to check.

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "wncs/pareto.hpp"

namespace oracle {

// |{(v1, v2) in {0,1}^D1 x {0,1}^D2 : |v1| + N|v2| <= C}| by listing every
// bit pattern.
std::uint64_t brute_count_det(int d1, int d2, int capacity, int units2);

// |{(n1, n2) >= 0 : n1 + N n2 <= C}| by listing.
std::uint64_t brute_count_geo(int capacity, int units2);

// Stationary vector of a row-stochastic matrix by Gaussian elimination with
// partial pivoting on (P^T - I) plus a normalization row. Plain loops.
std::vector<double> stationary_dense(const std::vector<std::vector<double>>& p);

// Geo/Geo/C/C chain built from scratch: sum over departure counts and the
// admission outcome. Keys are (n1, n2).
struct GeoChain {
  std::vector<std::pair<int, int>> states;
  std::vector<std::vector<double>> p;
};
GeoChain geo_chain(int capacity, int units1, int units2, double a1, double a2, double mu1, double mu2);

// Same for deterministic service, states as (pipeline1, pipeline2) bit masks
// reached from the empty state.
struct DetChain {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> states;
  std::vector<std::vector<std::pair<int, double>>> rows;  // sparse P
  std::vector<int> occupancy;
};
DetChain det_chain(int capacity, int units1, int units2, int d1, int d2, double a1, double a2);

// P(occupancy + need <= C) under `probs` for the given occupancy list.
double availability(const std::vector<double>& probs, const std::vector<int>& occupancy, int capacity, int need);

// Product form rho1^n1/n1! rho2^n2/n2! normalized by direct summation.
std::map<std::pair<int, int>, double> erlang_direct(double rho1, double rho2, int capacity, int units1, int units2);

// Upper regularized gamma Q(m, x) for integer m: e^-x sum_{k<m} x^k / k!.
double q_integer(int m, double x);

// Q(a, x) by composite Simpson quadrature of t^(a-1) e^-t over [x, x + 60]
// normalized by tgamma(a).
double q_quadrature(double a, double x);

// Exact long-run time-average AoA of class `cls` (1 or 2) for deterministic
// service, using the general age formula with the first two moments of the
// gap between consecutive executions. Moments come from first-passage
// equations on the deterministic chain under the stationary law at an
// execution epoch.
// Returned value excludes the downlink delay. a_i are the per-slot arrival
// probabilities at the controller.
double exact_det_aoa(int capacity, int units1, int units2, int d1, int d2, double a1, double a2, int cls);

// O(n^2) non-dominance over the feasible points with finite aoa1.
std::vector<wncs::pareto::DecisionPoint> brute_front(const std::vector<wncs::pareto::DecisionPoint>& points);

}  // namespace oracle
