#pragma once

#include <vector>

#include "mmb/rational.hpp"

namespace mmb::hermite {

// Probabilists' Hermite polynomial He_n with exact integer coefficients.
// coefficients[i] holds the coefficient of x^i; the polynomial is monic
// and coefficients vanish when i and degree have opposite parity.
struct HermitePolynomial {
  int degree = 0;
  std::vector<Int> coefficients;
};

// Squares of the positive roots of an odd-degree He_n, ascending.
// residuals[i] bounds |Q(values[i])| relative to the Horner term scale,
// where Q is He_n with the zero root factored out, written in u = x^2.
struct RootSquares {
  std::vector<double> values;
  std::vector<double> residuals;
};

inline constexpr int kMaxDegree = 200;

// Three-term recursion He_{n+1} = x He_n - n He_{n-1}. Rejects n < 0 and
// n > kMaxDegree with std::invalid_argument.
HermitePolynomial hermite_coefficients(int n);

// Horner evaluation with exact coefficients in long double.
long double evaluate(const HermitePolynomial& p, long double x);

// For odd degree: He_n(x) = x Q(x^2). Returns the exact coefficients of Q,
// index a holding the coefficient of u^a.
std::vector<Int> square_variable_coefficients(const HermitePolynomial& p);

// Evaluates Q(u) for odd-degree p.
long double evaluate_in_square_variable(const HermitePolynomial& p,
                                        long double u);

// The (n-1)/2 squares of the positive roots of He_n, n odd >= 3.
// Bracketing by sign changes on a geometric grid over (0, 4n], then
// bisection with a Newton polish on exact-coefficient Horner values.
// Throws std::runtime_error (naming the degree) if refinement fails.
RootSquares nonzero_root_squares(int n, double tolerance = 1e-13);

}  // namespace mmb::hermite
