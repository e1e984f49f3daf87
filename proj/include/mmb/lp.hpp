#pragma once

#include <vector>

namespace mmb::lp {

// Grid LP: nonnegative mass per grid point, total mass 1, the first 2k
// raw moments matched (odd targets zero), objective = mass at zero.
struct GridLP {
  std::vector<double> grid;  // symmetric about 0, contains 0, ascending
  int k = 0;                 // number of even moments to match
};

enum class LPStatus { optimal, infeasible };

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  std::vector<double> masses;
  double objective = 0.0;  // mass at zero
  std::vector<double> active_support;  // points with mass > 1e-10
  double constraint_residual = 0.0;    // max scaled equality residual
};

struct SymmetryReport {
  double raw_asymmetry = 0.0;       // max |mass(x) - mass(-x)| as returned
  double averaged_asymmetry = 0.0;  // after x/-x averaging (identically 0)
  double averaged_residual = 0.0;   // constraint residual of the averaged masses
  double objective_change = 0.0;    // objective shift under averaging
  bool pass = false;
};

// Symmetric grid of count uniformly spaced points per side over (0, extent],
// plus 0, plus the symmetrized include list. Duplicates within 1e-12 are
// collapsed silently.
std::vector<double> build_grid(double extent, int count,
                               const std::vector<double>& include);

// Dense two-phase simplex with Bland's anti-cycling rule; deterministic.
LPSolution solve_lp(const GridLP& problem);

// A symmetric optimum must exist: averages masses across x/-x (objective
// and feasibility preserving for a genuine solution) and reports the
// residual drift that averaging exposes.
SymmetryReport symmetry_report(const GridLP& problem, const LPSolution& sol);

}  // namespace mmb::lp
