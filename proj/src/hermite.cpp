#include "mmb/hermite.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmb::hermite {

HermitePolynomial hermite_coefficients(int n) {
  if (n < 0) throw std::invalid_argument("hermite_coefficients: n must be >= 0");
  if (n > kMaxDegree)
    throw std::invalid_argument("hermite_coefficients: degree " +
                                std::to_string(n) + " exceeds cap " +
                                std::to_string(kMaxDegree));
  std::vector<Int> prev = {1};       // He_0
  if (n == 0) return {0, prev};
  std::vector<Int> cur = {0, 1};     // He_1
  for (int m = 1; m < n; ++m) {
    // He_{m+1} = x He_m - m He_{m-1}
    std::vector<Int> next(m + 2);
    for (int i = 0; i <= m; ++i) next[i + 1] = cur[i];
    for (int i = 0; i < static_cast<int>(prev.size()); ++i)
      next[i] -= m * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {n, cur};
}

long double evaluate(const HermitePolynomial& p, long double x) {
  long double acc = 0.0L;
  for (int i = p.degree; i >= 0; --i)
    acc = acc * x + static_cast<long double>(p.coefficients[i]);
  return acc;
}

std::vector<Int> square_variable_coefficients(const HermitePolynomial& p) {
  if (p.degree % 2 == 0)
    throw std::invalid_argument("square_variable_coefficients: degree must be odd");
  std::vector<Int> q((p.degree - 1) / 2 + 1);
  for (std::size_t a = 0; a < q.size(); ++a)
    q[a] = p.coefficients[2 * a + 1];
  return q;
}

long double evaluate_in_square_variable(const HermitePolynomial& p,
                                        long double u) {
  const auto q = square_variable_coefficients(p);
  long double acc = 0.0L;
  for (auto it = q.rbegin(); it != q.rend(); ++it)
    acc = acc * u + static_cast<long double>(*it);
  return acc;
}

namespace {

struct LPoly {
  std::vector<long double> c;  // c[i] * u^i

  long double eval(long double u) const {
    long double acc = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
    return acc;
  }
  long double deriv(long double u) const {
    long double acc = 0.0L;
    for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i)
      acc = acc * u + static_cast<long double>(i) * c[i];
    return acc;
  }
  // Scale of the Horner sum: sum |c_i| u^i. Backward-error yardstick.
  long double scale(long double u) const {
    long double acc = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
      acc = acc * u + std::fabs(*it);
    return acc;
  }
};

long double refine_root(const LPoly& q, long double lo, long double hi,
                        double tolerance, int degree) {
  long double flo = q.eval(lo);
  for (int iter = 0; iter < 200; ++iter) {
    long double mid = 0.5L * (lo + hi);
    long double fm = q.eval(mid);
    if (fm == 0.0L) { lo = hi = mid; break; }
    if ((fm > 0) == (flo > 0)) { lo = mid; flo = fm; }
    else hi = mid;
    if (hi - lo <= 1e-14L * hi) break;
  }
  // Newton polish from the bisection estimate, kept inside the bracket.
  long double u = 0.5L * (lo + hi);
  for (int iter = 0; iter < 50; ++iter) {
    long double f = q.eval(u);
    long double d = q.deriv(u);
    if (d == 0.0L) break;
    long double step = f / d;
    long double next = u - step;
    if (next <= lo || next >= hi) break;
    u = next;
    if (std::fabs(step) <= 1e-19L * u) break;
  }
  if (std::fabs(q.eval(u)) > tolerance * q.scale(u))
    throw std::runtime_error("nonzero_root_squares: refinement failed for He_" +
                             std::to_string(degree));
  return u;
}

}  // namespace

RootSquares nonzero_root_squares(int n, double tolerance) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("nonzero_root_squares: n must be odd and >= 3");
  if (tolerance <= 0)
    throw std::invalid_argument("nonzero_root_squares: tolerance must be > 0");
  const auto poly = hermite_coefficients(n);
  const auto qi = square_variable_coefficients(poly);
  LPoly q;
  q.c.reserve(qi.size());
  for (const auto& c : qi) q.c.push_back(static_cast<long double>(c));

  const int m = (n - 1) / 2;
  const long double hi = 4.0L * n;
  const long double lo = hi * 1e-8L;

  // All m roots lie in (0, 4n); densify the geometric grid until every
  // root is bracketed by a sign change.
  std::vector<std::pair<long double, long double>> brackets;
  for (int points = 64 * m; points <= (1 << 22); points *= 2) {
    brackets.clear();
    const long double ratio = std::pow(hi / lo, 1.0L / points);
    long double a = lo, fa = q.eval(lo);
    if (q.eval(0.0L) != 0.0L && (fa > 0) != (q.c[0] > 0)) {
      // sign change already between 0 and lo
      brackets.emplace_back(hi * 1e-30L, lo);
    }
    for (int i = 1; i <= points; ++i) {
      long double b = (i == points) ? hi : lo * std::pow(ratio, i);
      long double fb = q.eval(b);
      if (fb == 0.0L || (fa > 0) != (fb > 0)) brackets.emplace_back(a, b);
      a = b;
      fa = fb;
    }
    if (static_cast<int>(brackets.size()) >= m) break;
  }
  if (static_cast<int>(brackets.size()) != m)
    throw std::runtime_error("nonzero_root_squares: expected " +
                             std::to_string(m) + " brackets for He_" +
                             std::to_string(n) + ", found " +
                             std::to_string(brackets.size()));

  RootSquares out;
  for (const auto& [a, b] : brackets) {
    long double u = refine_root(q, a, b, tolerance, n);
    out.values.push_back(static_cast<double>(u));
    out.residuals.push_back(
        static_cast<double>(std::fabs(q.eval(u)) / q.scale(u)));
  }
  return out;
}

}  // namespace mmb::hermite
