#include "mmb/extremal.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "mmb/hermite.hpp"
#include "mmb/matching.hpp"
#include "mmb/moments.hpp"

namespace mmb::extremal {

namespace {

std::vector<double> half_even_moments(int count) {
  std::vector<double> half(count);
  for (int i = 1; i <= count; ++i)
    half[i - 1] = rat_double(moments::normal_moment(2 * i) / 2);
  return half;
}

}  // namespace

SymmetricDistribution extremal_even(int k, double root_tolerance) {
  if (k < 2 || k % 2 != 0 || k > 40)
    throw std::invalid_argument("extremal_even: k must be even, 2 <= k <= 40");
  const auto roots = hermite::nonzero_root_squares(k + 1, root_tolerance);
  const int m = k / 2;
  matching::Support support{roots.values};
  const auto result =
      matching::solve_probabilities(support, half_even_moments(m));

  SymmetricDistribution d;
  d.matched_even_moments = k;
  d.positive_nodes.reserve(m);
  for (double u : roots.values) d.positive_nodes.push_back(std::sqrt(u));
  d.side_masses = result.probabilities;
  for (double q : d.side_masses)
    if (q <= 0.0)
      throw std::runtime_error(
          "extremal_even: non-positive quadrature mass for k=" +
          std::to_string(k));
  d.center_mass = 1.0 - 2.0 * result.r;
  return d;
}

double deviation_at_zero(const SymmetricDistribution& d) {
  return 0.5 - d.r_star();
}

double s_from_root_squares(int k, const std::vector<double>& root_squares) {
  const int m = k / 2;
  if (static_cast<int>(root_squares.size()) != m)
    throw std::invalid_argument("s_from_root_squares: expected k/2 squares");
  const auto e = matching::elementary_symmetric(
      std::vector<long double>(root_squares.begin(), root_squares.end()));
  // Q(u) = prod (u - u_j); Q_a = (-1)^(m-a) e_{m-a}.
  long double acc = 0.0L;
  for (int a = 0; a <= m; ++a) {
    const long double qa = ((m - a) % 2 == 0 ? 1.0L : -1.0L) * e[m - a];
    acc += qa * rat_long_double(moments::normal_moment(2 * a));
  }
  const long double q0 = (m % 2 == 0 ? 1.0L : -1.0L) * e[m];
  return static_cast<double>(
      rat_long_double(moments::normal_moment(2 * k)) * acc / q0);
}

HalfBoundReport verify_half_bound(int k) {
  HalfBoundReport rep;
  rep.k = k;
  const auto d = extremal_even(k);
  rep.p0 = d.center_mass;
  rep.bound = moments::lindsay_bound(k);
  rep.p0_diff = std::fabs(rep.p0 - rat_double(rep.bound));
  rep.deviation = deviation_at_zero(d);
  rep.deviation_diff = std::fabs(rep.deviation - rat_double(rep.bound / 2));
  rep.s_exact = moments::s_from_hermite(k);
  rep.s_roots =
      s_from_root_squares(k, hermite::nonzero_root_squares(k + 1).values);
  rep.s_rel_diff = std::fabs(rep.s_roots - rat_double(rep.s_exact)) /
                   std::fabs(rat_double(rep.s_exact));
  rep.r_star = d.r_star();
  const Rat identity =
      (Rat(1) - rep.s_exact / moments::normal_moment(2 * k)) / 2;
  rep.r_star_identity_diff = std::fabs(rep.r_star - rat_double(identity));
  rep.pass = rep.p0_diff <= 1e-10 && rep.deviation_diff <= 1e-10 &&
             rep.s_rel_diff <= 1e-10 && rep.r_star_identity_diff <= 1e-10;
  return rep;
}

namespace {

// One scheduled entry of the odd-k sweep: largest node square pinned at U,
// free node squares found by nested bisection, level t zeroing the
// relative residual of half-moment equation d+1+t.
class SweepEntrySolver {
 public:
  SweepEntrySolver(int k, const std::vector<double>& seeds, double largest_sq)
      : k_(k),
        d_((k - 1) / 2),
        seeds_(seeds),
        upper_(largest_sq),
        half_(half_even_moments(k)) {}

  std::optional<matching::MatchResult> masses(
      const std::vector<double>& nodes) const {
    try {
      matching::Support support{nodes};
      return matching::solve_probabilities(
          support, std::vector<double>(half_.begin(), half_.begin() + d_ + 1));
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }

  std::optional<double> residual(const std::vector<double>& nodes,
                                 int eq) const {
    const auto sol = masses(nodes);
    if (!sol) return std::nullopt;
    long double total = 0.0L, scale = 0.0L;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const long double term =
          static_cast<long double>(sol->probabilities[j]) *
          std::pow(static_cast<long double>(nodes[j]), eq);
      total += term;
      scale += std::fabs(term);
    }
    const long double target = half_[eq - 1];
    scale = std::max<long double>(scale, std::fabs(target));
    return static_cast<double>((total - target) / scale);
  }

  // Solves levels t..1 below the fixed nodes `above`; returns the free
  // node squares u_1 < ... < u_t, or nullopt if no bracket exists.
  std::optional<std::vector<double>> solve_level(
      int t, const std::vector<double>& above) const {
    const double lo = 0.2 * seeds_[t - 1];
    const double hi = std::min(4.0 * seeds_[t - 1], 0.98 * above.front());
    if (hi <= lo) return std::nullopt;
    const int grid = t >= 3 ? 56 : 80;

    auto eval = [&](double ut)
        -> std::optional<std::pair<double, std::vector<double>>> {
      std::vector<double> solved;
      if (t > 1) {
        std::vector<double> inner_above;
        inner_above.push_back(ut);
        inner_above.insert(inner_above.end(), above.begin(), above.end());
        auto sub = solve_level(t - 1, inner_above);
        if (!sub) return std::nullopt;
        solved = *sub;
      }
      solved.push_back(ut);
      std::vector<double> nodes = solved;
      nodes.insert(nodes.end(), above.begin(), above.end());
      const auto r = residual(nodes, d_ + 1 + t);
      if (!r) return std::nullopt;
      return std::make_pair(*r, solved);
    };

    const double ratio = std::pow(hi / lo, 1.0 / grid);
    double a = 0.0, fa = 0.0;
    bool have_prev = false;
    for (int i = 0; i <= grid; ++i) {
      const double u = (i == grid) ? hi : lo * std::pow(ratio, i);
      const auto v = eval(u);
      if (!v) { have_prev = false; continue; }
      if (have_prev && std::signbit(v->first) != std::signbit(fa)) {
        double left = a, fleft = fa, right = u;
        for (int iter = 0; iter < 80; ++iter) {
          const double mid = std::sqrt(left * right);
          const auto fm = eval(mid);
          if (!fm) break;
          if (std::signbit(fm->first) == std::signbit(fleft)) {
            left = mid;
            fleft = fm->first;
          } else {
            right = mid;
          }
          if (right - left <= 1e-15 * right) break;
        }
        const auto final = eval(0.5 * (left + right));
        if (final) return final->second;
        return std::nullopt;
      }
      a = u;
      fa = v->first;
      have_prev = true;
    }
    return std::nullopt;
  }

  SweepRecord run(double largest_node) const {
    SweepRecord rec;
    rec.largest_node = largest_node;
    rec.tail_bound = rat_double(moments::normal_moment(2 * k_) / 2) /
                     std::pow(largest_node, 2 * k_);
    const auto free_nodes = solve_level(d_, {upper_});
    if (!free_nodes) {
      rec.note = "no bracketed positive-mass solution";
      return rec;
    }
    std::vector<double> nodes = *free_nodes;
    nodes.push_back(upper_);
    const auto sol = masses(nodes);
    if (!sol) {
      rec.note = "mass solve failed";
      return rec;
    }
    double max_res = 0.0;
    for (int eq = 1; eq <= k_; ++eq) {
      const auto r = residual(nodes, eq);
      if (r) max_res = std::max(max_res, std::fabs(*r));
    }
    bool positive = true;
    for (double q : sol->probabilities) positive = positive && q > 0.0;
    rec.node_squares = nodes;
    rec.masses = sol->probabilities;
    rec.r_star = sol->r;
    rec.p0 = 1.0 - 2.0 * sol->r;
    rec.tail_mass = sol->probabilities.back();
    if (!positive) {
      rec.note = "solution has non-positive mass";
    } else if (max_res > 1e-7) {
      rec.note = "moment residual above tolerance";
    } else {
      rec.feasible = true;
    }
    return rec;
  }

 private:
  int k_;
  int d_;
  std::vector<double> seeds_;
  double upper_;
  std::vector<double> half_;
};

}  // namespace

OddCaseSweep odd_case_sweep(int k, const std::vector<double>& largest_nodes) {
  if (k < 3 || k % 2 == 0 || k > 9)
    throw std::invalid_argument("odd_case_sweep: k must be odd, 3 <= k <= 9");
  if (largest_nodes.empty())
    throw std::invalid_argument("odd_case_sweep: empty schedule");
  for (std::size_t i = 1; i < largest_nodes.size(); ++i)
    if (largest_nodes[i] <= largest_nodes[i - 1])
      throw std::invalid_argument("odd_case_sweep: schedule must increase");
  // The escaping solutions converge to the (k-1)-even extremal nodes,
  // which are the root squares of He_k.
  const auto seeds = hermite::nonzero_root_squares(k).values;
  const auto even_limit = extremal_even(k - 1);
  if (largest_nodes.front() <= even_limit.positive_nodes.back())
    throw std::invalid_argument(
        "odd_case_sweep: schedule must start above the even-case largest node");

  OddCaseSweep sweep;
  sweep.k = k;
  for (double t : largest_nodes) {
    SweepEntrySolver solver(k, seeds, t * t);
    sweep.records.push_back(solver.run(t));
  }
  return sweep;
}

}  // namespace mmb::extremal
