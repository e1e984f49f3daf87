#pragma once

#include <cstddef>
#include <vector>

namespace mmb::matching {

// Ordered distinct nonzero mass points; may be signed.
struct Support {
  std::vector<double> points;
};

// Probabilities matching the target moments on the support. Negative
// entries are legal; positivity is the symmetric layer's concern.
struct MatchResult {
  std::vector<double> probabilities;
  double r = 0.0;                   // sum of probabilities
  // max_j sum|numerator terms| / |denominator|, scaled by max(1,|x|)^n so
  // that moment-reproduction residuals stay within condition_estimate*1e-14.
  double condition_estimate = 0.0;
};

// e_0 .. e_n of the argument list, by the incremental product expansion.
std::vector<long double> elementary_symmetric(
    const std::vector<long double>& values);
std::vector<double> elementary_symmetric(const std::vector<double>& values);

// e_0 .. e_{n-1} of the list with entry j deleted.
std::vector<long double> leave_one_out_symmetric(
    const std::vector<long double>& values, std::size_t j);
std::vector<double> leave_one_out_symmetric(const std::vector<double>& values,
                                            std::size_t j);

// Closed-form solve: p_j = sum_i (-1)^(n-i) e_{n-i}(~x_j) M_i
//                        / (x_j * prod_{k!=j} (x_j - x_k)).
// Requires |support| == |moments|; duplicate or zero points are rejected
// with std::invalid_argument.
MatchResult solve_probabilities(const Support& support,
                                const std::vector<double>& moments);

// Dense LU solve of the V22 system; the in-repo oracle for the closed form.
MatchResult solve_probabilities_direct(const Support& support,
                                       const std::vector<double>& moments);

// r = sum_i (-1)^(i+1) e_{n-i}(x) M_i / e_n(x), as a single expression.
double probability_sum(const Support& support,
                       const std::vector<double>& moments);

// Analytic partials of r with respect to each support point, from the
// factorization r = A_j / (C_j y_j) + g(~y_j). Requires strictly positive,
// strictly increasing support.
std::vector<double> r_star_partials(const Support& support,
                                    const std::vector<double>& moments);

// Central finite differences of probability_sum; cross-check companion.
std::vector<double> r_star_partials_fd(const Support& support,
                                       const std::vector<double>& moments,
                                       double relative_step = 1e-6);

}  // namespace mmb::matching
