#include "mmb/moments.hpp"

#include <stdexcept>
#include <utility>

#include "mmb/hermite.hpp"

namespace mmb::moments {

Rat normal_moment(int l) {
  if (l < 0) throw std::invalid_argument("normal_moment: l must be >= 0");
  if (l % 2 == 1) return 0;
  Int acc = 1;
  for (int f = l - 1; f > 1; f -= 2) acc *= f;
  return Rat(acc);
}

MomentVector normal_moments(int len) {
  MomentVector mv;
  mv.source = MomentVector::Source::normal;
  mv.values.reserve(len);
  for (int j = 1; j <= len; ++j) mv.values.push_back(normal_moment(j));
  return mv;
}

HankelMatrix hankel_matrix(int m) {
  if (m < 1) throw std::invalid_argument("hankel_matrix: m must be >= 1");
  HankelMatrix h;
  h.order = m;
  h.entries.assign(m + 1, std::vector<Rat>(m + 1));
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) h.entries[i][j] = normal_moment(2 * (i + j));
  return h;
}

HankelMatrix hankel_matrix(int m, const MomentVector& user) {
  if (m < 1) throw std::invalid_argument("hankel_matrix: m must be >= 1");
  if (static_cast<int>(user.values.size()) < 4 * m)
    throw std::invalid_argument("hankel_matrix: moment vector must reach M_{4m}");
  HankelMatrix h;
  h.order = m;
  h.entries.assign(m + 1, std::vector<Rat>(m + 1));
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      const int l = 2 * (i + j);
      h.entries[i][j] = (l == 0) ? Rat(1) : user.values[l - 1];
    }
  return h;
}

Rat determinant(const std::vector<std::vector<Rat>>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  std::vector<std::vector<Rat>> w = a;
  Rat prev = 1;
  int sign = 1;
  for (int col = 0; col < n - 1; ++col) {
    if (w[col][col] == 0) {
      int piv = -1;
      for (int r = col + 1; r < n; ++r)
        if (w[r][col] != 0) { piv = r; break; }
      if (piv < 0) return 0;
      std::swap(w[col], w[piv]);
      sign = -sign;
    }
    // Bareiss step: exact division by the previous pivot.
    for (int r = col + 1; r < n; ++r)
      for (int c = col + 1; c < n; ++c)
        w[r][c] = (w[col][col] * w[r][c] - w[r][col] * w[col][c]) / prev;
    prev = w[col][col];
  }
  return sign * w[n - 1][n - 1];
}

namespace {

void require_even_positive(int k) {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("k must be an even positive integer");
}

Rat bound_from_hankel(const HankelMatrix& h) {
  const int m = h.order;
  std::vector<std::vector<Rat>> minor(m, std::vector<Rat>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) minor[i][j] = h.entries[i + 1][j + 1];
  const Rat minor_det = determinant(minor);
  if (minor_det == 0)
    throw std::domain_error("lindsay_bound: Hankel minor is singular");
  return determinant(h.entries) / minor_det;
}

}  // namespace

Rat lindsay_bound(int k) {
  require_even_positive(k);
  return bound_from_hankel(hankel_matrix(k / 2));
}

Rat lindsay_bound(int k, const MomentVector& user) {
  require_even_positive(k);
  return bound_from_hankel(hankel_matrix(k / 2, user));
}

Rat s_from_hermite(int k) {
  require_even_positive(k);
  const auto p = hermite::hermite_coefficients(k + 2);
  Rat acc = 0;
  for (int i = 0; i <= k / 2; ++i)
    acc += Rat((i + 1) * p.coefficients[2 * i + 2]) * normal_moment(2 * i);
  return normal_moment(2 * k) * acc / Rat(p.coefficients[2]);
}

Rat orthogonality_check(int l, int i) {
  if (l < 0 || i < 0)
    throw std::invalid_argument("orthogonality_check: indices must be >= 0");
  const int deg = 2 * l + 2 * i + 2;
  const auto p = hermite::hermite_coefficients(deg);
  Rat acc = 0;
  for (int j = 0; 2 * j <= deg; ++j)
    acc += Rat(p.coefficients[2 * j]) * normal_moment(2 * j + 2 * i);
  return acc;
}

}  // namespace mmb::moments
