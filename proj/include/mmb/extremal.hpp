#pragma once

#include <string>
#include <vector>

#include "mmb/rational.hpp"

namespace mmb::extremal {

// Symmetric mixture: mass side_masses[j] at +positive_nodes[j] and the
// same mass at -positive_nodes[j], mass center_mass at zero.
struct SymmetricDistribution {
  std::vector<double> positive_nodes;  // t_1 < ... < t_m
  std::vector<double> side_masses;     // q_1 .. q_m, all > 0
  double center_mass = 0.0;            // p0 = 1 - 2 sum q_j
  int matched_even_moments = 0;

  double r_star() const {
    double r = 0.0;
    for (double q : side_masses) r += q;
    return r;
  }
};

// Least-favorable distribution for k matched even moments, k even.
// Nodes are the square roots of the nonzero root squares of He_{k+1};
// masses solve the half-moment system in the squared variable.
SymmetricDistribution extremal_even(int k, double root_tolerance = 1e-13);

// F(0) - Phi(0) = (1 - r*) - 1/2 = p0 / 2.
double deviation_at_zero(const SymmetricDistribution& d);

struct HalfBoundReport {
  int k = 0;
  double p0 = 0.0;
  Rat bound;              // exact 1/(H^-1)_{0,0}
  double p0_diff = 0.0;   // |p0 - bound|
  double deviation = 0.0;
  double deviation_diff = 0.0;  // |deviation - bound/2|
  Rat s_exact;            // s from exact Hermite coefficients
  double s_roots = 0.0;   // s from elementary symmetric functions of roots
  double s_rel_diff = 0.0;
  double r_star = 0.0;
  double r_star_identity_diff = 0.0;  // |r* - (1 - s/M_2k)/2|
  bool pass = false;
};

// Checks p0 against the exact Hankel bound, the two routes to s, and the
// r* identity, all at 1e-10.
HalfBoundReport verify_half_bound(int k);

struct SweepRecord {
  double largest_node = 0.0;
  bool feasible = false;
  std::vector<double> node_squares;  // ascending, last = largest_node^2
  std::vector<double> masses;
  double r_star = 0.0;
  double p0 = 0.0;
  double tail_mass = 0.0;
  double tail_bound = 0.0;  // (M_2k / 2) / T^2k
  std::string note;
};

struct OddCaseSweep {
  int k = 0;
  std::vector<SweepRecord> records;
};

// For each scheduled largest node T, pins the largest node square at T^2
// and solves the remaining (k-1)/2 node squares and all masses so the k
// half-moment equations hold with positive masses. Nested bisection on
// the free nodes; entries with no positive-mass solution are recorded as
// infeasible and the sweep continues. k odd, 3 <= k <= 9 supported
// (k > 7 best-effort).
OddCaseSweep odd_case_sweep(int k, const std::vector<double>& largest_nodes);

// s evaluated from the elementary symmetric functions of the computed
// root squares (the floating route paired against s_from_hermite).
double s_from_root_squares(int k, const std::vector<double>& root_squares);

}  // namespace mmb::extremal
