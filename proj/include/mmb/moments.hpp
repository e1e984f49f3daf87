#pragma once

#include <vector>

#include "mmb/rational.hpp"

namespace mmb::moments {

// Target moment sequence; values[j-1] holds M_j.
struct MomentVector {
  enum class Source { normal, user };
  std::vector<Rat> values;
  Source source = Source::normal;
};

// (m+1) x (m+1) matrix of even moments, entry (i,j) = M_{2(i+j)}.
struct HankelMatrix {
  int order = 0;
  std::vector<std::vector<Rat>> entries;
};

// M_l for Z ~ N(0,1): 0 for odd l, (l-1)!! for even l. Exact.
Rat normal_moment(int l);

// M_1 .. M_len as an exact normal moment vector.
MomentVector normal_moments(int len);

HankelMatrix hankel_matrix(int m);

// Hankel matrix populated from a user moment vector; values must reach M_{4m}.
HankelMatrix hankel_matrix(int m, const MomentVector& user);

// Exact determinant by fraction-free (Bareiss) elimination.
Rat determinant(const std::vector<std::vector<Rat>>& a);

// 1 / (H^-1)_{0,0} for the order-(k/2) even-moment Hankel matrix,
// i.e. det(H) / det(H with row 0 and column 0 deleted). k must be even
// and positive. Throws std::domain_error if the minor is singular.
Rat lindsay_bound(int k);
Rat lindsay_bound(int k, const MomentVector& user);

// The quantity s with r* = (1 - s / M_{2k}) / 2, computed from the exact
// coefficients of the even Hermite polynomial of degree k+2 paired against
// even normal moments.
Rat s_from_hermite(int k);

// Sum over j of M_{2j+2i} * He[2l+2i+2]_{2j}; zero for every l >= 0, i >= 0
// by orthogonality of He against lower-degree monomials.
Rat orthogonality_check(int l, int i);

}  // namespace mmb::moments
