#include "mmb/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmb/moments.hpp"
#include "mmb/rational.hpp"

namespace mmb::lp {

namespace {

constexpr double kPivotTol = 1e-11;

// Row-scaled equality system A x = b for the grid LP.
struct System {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::size_t zero_index = 0;
};

System build_system(const GridLP& problem) {
  const std::size_t n = problem.grid.size();
  const int rows = 2 * problem.k + 1;
  System sys;
  sys.a.assign(rows, std::vector<double>(n));
  sys.b.assign(rows, 0.0);
  bool found_zero = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (problem.grid[i] == 0.0) {
      sys.zero_index = i;
      found_zero = true;
    }
    double pw = 1.0;
    sys.a[0][i] = 1.0;
    for (int j = 1; j < rows; ++j) {
      pw *= problem.grid[i];
      sys.a[j][i] = pw;
    }
  }
  if (!found_zero) throw std::invalid_argument("grid must contain 0");
  sys.b[0] = 1.0;
  for (int j = 1; j < rows; ++j)
    sys.b[j] = rat_double(moments::normal_moment(j));
  for (int j = 0; j < rows; ++j) {
    double scale = 0.0;
    for (double v : sys.a[j]) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) scale = 1.0;
    for (double& v : sys.a[j]) v /= scale;
    sys.b[j] /= scale;
  }
  return sys;
}

// Tableau simplex, minimization, Bland's rule throughout.
class Simplex {
 public:
  Simplex(const System& sys) : m_(sys.b.size()), n_(sys.a[0].size()) {
    // columns: n structural + m artificial + rhs
    tab_.assign(m_, std::vector<double>(n_ + m_ + 1, 0.0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = sys.b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = sign * sys.a[i][j];
      tab_[i][n_ + i] = 1.0;
      tab_[i].back() = sign * sys.b[i];
      basis_[i] = n_ + i;
    }
  }

  bool run_phase1() {
    std::vector<double> cost(n_ + m_, 0.0);
    for (std::size_t j = n_; j < n_ + m_; ++j) cost[j] = 1.0;
    iterate(cost, /*allow_artificial=*/true);
    double phase1 = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) phase1 += tab_[i].back();
    return phase1 <= 1e-9;
  }

  // Pivot artificials out of the basis (they sit at zero after phase 1);
  // rows with no structural entry are redundant and stay inert.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::fabs(tab_[i][j]) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  void run_phase2(std::size_t objective_col) {
    std::vector<double> cost(n_ + m_, 0.0);
    cost[objective_col] = -1.0;  // maximize mass at zero
    iterate(cost, /*allow_artificial=*/false);
  }

  std::vector<double> solution() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = tab_[i].back();
    return x;
  }

 private:
  void iterate(const std::vector<double>& cost, bool allow_artificial) {
    const std::size_t limit = allow_artificial ? n_ + m_ : n_;
    for (int guard = 0; guard < 100000; ++guard) {
      // reduced costs against the current basis
      std::vector<double> y(m_);
      for (std::size_t i = 0; i < m_; ++i) y[i] = cost[basis_[i]];
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        double rc = cost[j];
        for (std::size_t i = 0; i < m_; ++i) rc -= y[i] * tab_[i][j];
        if (rc < -kPivotTol) { enter = j; break; }  // Bland: lowest index
      }
      if (enter == limit) return;
      // ratio test; Bland ties by smallest basis index
      std::size_t leave = m_;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= kPivotTol) continue;
        const double ratio = tab_[i].back() / tab_[i][enter];
        if (leave == m_ || ratio < best - 1e-15 ||
            (std::fabs(ratio - best) <= 1e-15 && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return;  // unbounded; cannot happen with mass bound
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = tab_[row][col];
    for (double& v : tab_[row]) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = tab_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < tab_[i].size(); ++j)
        tab_[i][j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  std::size_t m_, n_;
  std::vector<std::vector<double>> tab_;
  std::vector<std::size_t> basis_;
};

double max_residual(const System& sys, const std::vector<double>& x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < sys.b.size(); ++i) {
    double acc = -sys.b[i];
    for (std::size_t j = 0; j < x.size(); ++j) acc += sys.a[i][j] * x[j];
    worst = std::max(worst, std::fabs(acc));
  }
  return worst;
}

}  // namespace

std::vector<double> build_grid(double extent, int count,
                               const std::vector<double>& include) {
  if (extent <= 0.0) throw std::invalid_argument("build_grid: extent must be > 0");
  if (count < 3) throw std::invalid_argument("build_grid: count must be >= 3");
  std::vector<double> pts = {0.0};
  for (int i = 1; i <= count; ++i) {
    const double x = extent * i / count;
    pts.push_back(x);
    pts.push_back(-x);
  }
  for (double v : include) {
    if (v == 0.0) continue;
    pts.push_back(std::fabs(v));
    pts.push_back(-std::fabs(v));
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> grid;
  for (double x : pts)
    if (grid.empty() || x - grid.back() > 1e-12) grid.push_back(x);
  return grid;
}

LPSolution solve_lp(const GridLP& problem) {
  if (problem.k < 1) throw std::invalid_argument("solve_lp: k must be >= 1");
  const System sys = build_system(problem);
  Simplex simplex(sys);
  LPSolution sol;
  if (!simplex.run_phase1()) {
    sol.status = LPStatus::infeasible;
    return sol;
  }
  simplex.drive_out_artificials();
  simplex.run_phase2(sys.zero_index);
  sol.status = LPStatus::optimal;
  sol.masses = simplex.solution();
  for (double& v : sol.masses)
    if (v < 0.0 && v > -1e-12) v = 0.0;
  sol.objective = sol.masses[sys.zero_index];
  for (std::size_t i = 0; i < sol.masses.size(); ++i)
    if (sol.masses[i] > 1e-10) sol.active_support.push_back(problem.grid[i]);
  sol.constraint_residual = max_residual(sys, sol.masses);
  return sol;
}

SymmetryReport symmetry_report(const GridLP& problem, const LPSolution& sol) {
  if (sol.status != LPStatus::optimal)
    throw std::invalid_argument("symmetry_report: solution must be optimal");
  const std::size_t n = problem.grid.size();
  SymmetryReport rep;
  std::vector<double> averaged(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t mirror = n - 1 - i;  // symmetric sorted grid
    rep.raw_asymmetry = std::max(
        rep.raw_asymmetry, std::fabs(sol.masses[i] - sol.masses[mirror]));
    averaged[i] = 0.5 * (sol.masses[i] + sol.masses[mirror]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t mirror = n - 1 - i;
    rep.averaged_asymmetry = std::max(
        rep.averaged_asymmetry, std::fabs(averaged[i] - averaged[mirror]));
  }
  const System sys = build_system(problem);
  rep.averaged_residual = max_residual(sys, averaged);
  rep.objective_change =
      std::fabs(averaged[sys.zero_index] - sol.objective);
  rep.pass = rep.averaged_asymmetry <= 1e-8 && rep.averaged_residual <= 1e-9 &&
             rep.objective_change <= 1e-10;
  return rep;
}

}  // namespace mmb::lp
