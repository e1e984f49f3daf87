#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "mmb/moments.hpp"

using mmb::Rat;
using namespace mmb::moments;

TEST_CASE("normal moments") {
  CHECK(normal_moment(0) == 1);
  CHECK(normal_moment(2) == 1);
  CHECK(normal_moment(7) == 0);
  CHECK(normal_moment(8) == 105);
  CHECK_THROWS_AS(normal_moment(-1), std::invalid_argument);
}

TEST_CASE("double-factorial recursion, exact, j <= 40") {
  for (int j = 1; j <= 40; ++j)
    CHECK(normal_moment(2 * j) == Rat(2 * j - 1) * normal_moment(2 * j - 2));
}

TEST_CASE("hankel matrix entries") {
  auto h1 = hankel_matrix(1);
  CHECK(h1.entries[0][0] == 1);
  CHECK(h1.entries[0][1] == 1);
  CHECK(h1.entries[1][0] == 1);
  CHECK(h1.entries[1][1] == 3);

  auto h2 = hankel_matrix(2);
  CHECK(h2.entries[0][2] == 3);
  CHECK(h2.entries[1][1] == 3);
  CHECK(h2.entries[1][2] == 15);
  CHECK(h2.entries[2][2] == 105);

  auto h3 = hankel_matrix(3);
  CHECK(h3.entries[3][3] == 10395);  // M_12 = 11!!
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      CHECK(h3.entries[i][j] == h3.entries[j][i]);
}

TEST_CASE("leading principal minors positive for normal moments, m <= 8") {
  auto h = hankel_matrix(8);
  for (int lead = 1; lead <= 9; ++lead) {
    std::vector<std::vector<Rat>> sub(lead, std::vector<Rat>(lead));
    for (int i = 0; i < lead; ++i)
      for (int j = 0; j < lead; ++j) sub[i][j] = h.entries[i][j];
    CHECK(determinant(sub) > 0);
  }
}

TEST_CASE("k=6 Hankel determinants") {
  auto h = hankel_matrix(3);
  CHECK(determinant(h.entries) == 34560);
  std::vector<std::vector<Rat>> minor(3, std::vector<Rat>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) minor[i][j] = h.entries[i + 1][j + 1];
  CHECK(determinant(minor) == 75600);
}

TEST_CASE("lindsay bound values") {
  CHECK(lindsay_bound(2) == Rat(2, 3));
  CHECK(lindsay_bound(4) == Rat(8, 15));
  CHECK(lindsay_bound(6) == Rat(16, 35));
  CHECK(lindsay_bound(8) == Rat(128, 315));
  CHECK_THROWS_AS(lindsay_bound(3), std::invalid_argument);
  CHECK_THROWS_AS(lindsay_bound(0), std::invalid_argument);
}

TEST_CASE("user-supplied moments: singular Hankel signalled") {
  // all moments 1 (point mass at 1): the minor is rank one
  MomentVector user;
  user.source = MomentVector::Source::user;
  user.values.assign(8, Rat(1));
  CHECK_THROWS_AS(lindsay_bound(4, user), std::domain_error);
}

TEST_CASE("user-supplied normal moments reproduce the normal bound") {
  MomentVector user = normal_moments(8);
  user.source = MomentVector::Source::user;
  CHECK(lindsay_bound(4, user) == Rat(8, 15));
}

TEST_CASE("s from Hermite coefficients") {
  CHECK(s_from_hermite(2) == 2);
  CHECK(s_from_hermite(4) == 56);
  CHECK(s_from_hermite(6) == 4752);
  // r* identity at the exact level: (1 - s/M_2k)/2
  CHECK((Rat(1) - s_from_hermite(2) / normal_moment(4)) / 2 == Rat(1, 6));
  CHECK((Rat(1) - s_from_hermite(4) / normal_moment(8)) / 2 == Rat(7, 30));
}

TEST_CASE("bound identity chain: s/M_2k equals the Hankel bound") {
  for (int k = 2; k <= 12; k += 2)
    CHECK(s_from_hermite(k) / normal_moment(2 * k) == lindsay_bound(k));
}

TEST_CASE("orthogonality examples") {
  // He_4 against (M_0, M_2, M_4): 3 - 6 + 3 = 0
  CHECK(orthogonality_check(1, 0) == 0);
  // He_6 against moments shifted by x^2
  CHECK(orthogonality_check(1, 1) == 0);
  // He_2 against (M_0, M_2): -1 + 1 = 0
  CHECK(orthogonality_check(0, 0) == 0);
}

TEST_CASE("orthogonality exact zero for 2l+2i+2 <= 24") {
  for (int l = 0; 2 * l + 2 <= 24; ++l)
    for (int i = 0; 2 * l + 2 * i + 2 <= 24; ++i)
      CHECK(orthogonality_check(l, i) == 0);
}
