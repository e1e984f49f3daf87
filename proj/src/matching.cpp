#include "mmb/matching.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace mmb::matching {

namespace {

void validate(const Support& support, const std::vector<double>& moments) {
  const std::size_t n = support.points.size();
  if (n == 0) throw std::invalid_argument("support must be nonempty");
  if (moments.size() != n)
    throw std::invalid_argument("support and moment vector sizes differ");
  for (std::size_t i = 0; i < n; ++i) {
    if (support.points[i] == 0.0)
      throw std::invalid_argument("support points must be nonzero");
    for (std::size_t j = i + 1; j < n; ++j)
      if (support.points[i] == support.points[j])
        throw std::invalid_argument("support points must be distinct");
  }
}

std::vector<long double> widen(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

std::vector<long double> esym(const std::vector<long double>& values) {
  std::vector<long double> e(values.size() + 1, 0.0L);
  e[0] = 1.0L;
  std::size_t used = 0;
  for (long double v : values) {
    ++used;
    for (std::size_t m = used; m >= 1; --m) e[m] += v * e[m - 1];
  }
  return e;
}

}  // namespace

std::vector<long double> elementary_symmetric(
    const std::vector<long double>& values) {
  return esym(values);
}

std::vector<double> elementary_symmetric(const std::vector<double>& values) {
  const auto e = esym(widen(values));
  return {e.begin(), e.end()};
}

std::vector<long double> leave_one_out_symmetric(
    const std::vector<long double>& values, std::size_t j) {
  if (j >= values.size())
    throw std::invalid_argument("leave_one_out_symmetric: index out of range");
  std::vector<long double> rest;
  rest.reserve(values.size() - 1);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (i != j) rest.push_back(values[i]);
  return esym(rest);
}

std::vector<double> leave_one_out_symmetric(const std::vector<double>& values,
                                            std::size_t j) {
  const auto e = leave_one_out_symmetric(widen(values), j);
  return {e.begin(), e.end()};
}

MatchResult solve_probabilities(const Support& support,
                                const std::vector<double>& moments) {
  validate(support, moments);
  const auto x = widen(support.points);
  const auto mom = widen(moments);
  const std::size_t n = x.size();

  MatchResult out;
  out.probabilities.resize(n);
  long double r = 0.0L, worst_cond = 0.0L;
  for (std::size_t j = 0; j < n; ++j) {
    const auto e = leave_one_out_symmetric(x, j);
    long double num = 0.0L, num_abs = 0.0L;
    for (std::size_t i = 1; i <= n; ++i) {
      const long double term =
          ((n - i) % 2 == 0 ? 1.0L : -1.0L) * e[n - i] * mom[i - 1];
      num += term;
      num_abs += std::fabs(term);
    }
    long double denom = x[j];
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) denom *= x[j] - x[k];
    const long double p = num / denom;
    out.probabilities[j] = static_cast<double>(p);
    r += p;
    if (num_abs / std::fabs(denom) > worst_cond)
      worst_cond = num_abs / std::fabs(denom);
  }
  out.r = static_cast<double>(r);
  // The moment-reproduction residual sees the numerator cancellation
  // amplified by the largest power of the support entering Sum p_j x_j^i.
  long double xmax = 1.0L;
  for (const long double v : x) xmax = std::max(xmax, std::fabs(v));
  out.condition_estimate =
      static_cast<double>(worst_cond * std::pow(xmax, static_cast<int>(n)));
  return out;
}

MatchResult solve_probabilities_direct(const Support& support,
                                       const std::vector<double>& moments) {
  validate(support, moments);
  const std::size_t n = support.points.size();
  // V22: row i (1-based power) holds x_j^i.
  std::vector<std::vector<long double>> a(n,
                                          std::vector<long double>(n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    long double pw = 1.0L;
    for (std::size_t i = 0; i < n; ++i) {
      pw *= static_cast<long double>(support.points[j]);
      a[i][j] = pw;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    a[i][n] = static_cast<long double>(moments[i]);

  // Gaussian elimination with partial pivoting.
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0L)
      throw std::invalid_argument("solve_probabilities_direct: singular system");
    std::swap(a[col], a[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const long double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  MatchResult out;
  out.probabilities.resize(n);
  std::vector<long double> p(n);
  for (std::size_t i = n; i-- > 0;) {
    long double acc = a[i][n];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * p[c];
    p[i] = acc / a[i][i];
  }
  long double r = 0.0L;
  for (std::size_t j = 0; j < n; ++j) {
    out.probabilities[j] = static_cast<double>(p[j]);
    r += p[j];
  }
  out.r = static_cast<double>(r);
  out.condition_estimate = 0.0;
  return out;
}

double probability_sum(const Support& support,
                       const std::vector<double>& moments) {
  validate(support, moments);
  const auto x = widen(support.points);
  const auto mom = widen(moments);
  const std::size_t n = x.size();
  const auto e = esym(x);
  long double num = 0.0L;
  for (std::size_t i = 1; i <= n; ++i)
    num += ((i + 1) % 2 == 0 ? 1.0L : -1.0L) * e[n - i] * mom[i - 1];
  return static_cast<double>(num / e[n]);
}

std::vector<double> r_star_partials(const Support& support,
                                    const std::vector<double>& moments) {
  validate(support, moments);
  const auto y = widen(support.points);
  const auto mom = widen(moments);
  const std::size_t n = y.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (y[j] <= 0.0L)
      throw std::invalid_argument("r_star_partials: points must be positive");
    if (j + 1 < n && y[j] >= y[j + 1])
      throw std::invalid_argument("r_star_partials: points must be increasing");
  }
  // r = A_j / (C_j y_j) + g(~y_j) with
  //   A_j = sum_i (-1)^(i+1) M_i e_{n-i}(~y_j),  C_j = e_{n-1}(~y_j),
  // so dr/dy_j = -A_j / (C_j y_j^2).
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto e = leave_one_out_symmetric(y, j);
    long double a = 0.0L;
    for (std::size_t i = 1; i <= n; ++i)
      a += ((i + 1) % 2 == 0 ? 1.0L : -1.0L) * mom[i - 1] * e[n - i];
    out[j] = static_cast<double>(-a / (e[n - 1] * y[j] * y[j]));
  }
  return out;
}

std::vector<double> r_star_partials_fd(const Support& support,
                                       const std::vector<double>& moments,
                                       double relative_step) {
  validate(support, moments);
  const std::size_t n = support.points.size();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double h = relative_step * std::fabs(support.points[j]);
    Support up = support, down = support;
    up.points[j] += h;
    down.points[j] -= h;
    out[j] = (probability_sum(up, moments) - probability_sum(down, moments)) /
             (2.0 * h);
  }
  return out;
}

}  // namespace mmb::matching
