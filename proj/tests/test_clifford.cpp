#include <catch2/catch_amalgamated.hpp>

#include "kdirac/clifford.hpp"

using namespace kdirac;

TEST_CASE("smallest spinor module is explicit") {
  SpinorSpace sp(1);
  REQUIRE(sp.dim() == 2);

  ExactMatrix g1(2, 2), g2(2, 2);
  g1.at(0, 1) = Scalar(1);
  g1.at(1, 0) = Scalar(-1);
  g2.at(0, 1) = Scalar::i();
  g2.at(1, 0) = Scalar::i();
  CHECK(sp.gamma(1) == g1);
  CHECK(sp.gamma(2) == g2);
  CHECK_THROWS_AS(sp.gamma(3), std::out_of_range);
}

TEST_CASE("generators satisfy the negative definite relations") {
  for (int n = 1; n <= 3; ++n) {
    SpinorSpace sp(n);
    const int d = sp.dim();
    ExactMatrix minus2 = ExactMatrix::identity(d);
    minus2.scale(Scalar(-2));
    for (int a = 1; a <= 2 * n; ++a) {
      INFO("n=" << n << " alpha=" << a);
      ExactMatrix sq = sp.gamma(a) * sp.gamma(a);
      ExactMatrix mi = ExactMatrix::identity(d);
      mi.scale(Scalar(-1));
      CHECK(sq == mi);
      for (int b = a + 1; b <= 2 * n; ++b) {
        ExactMatrix anti = sp.gamma(a) * sp.gamma(b) + sp.gamma(b) * sp.gamma(a);
        CHECK(anti.is_zero());
      }
    }
  }
}

TEST_CASE("generators are odd for the fermion parity") {
  SpinorSpace sp(3);
  for (int a = 1; a <= 6; ++a)
    for (int r = 0; r < sp.dim(); ++r)
      for (int c = 0; c < sp.dim(); ++c)
        if (!sp.gamma(a).at(r, c).is_zero()) CHECK(sp.parity(r) != sp.parity(c));
}

TEST_CASE("matrix action agrees with act") {
  SpinorSpace sp(2);
  std::vector<Scalar> v{Scalar(1), Scalar(-2), Scalar::i(), Scalar()};
  for (int a = 1; a <= 4; ++a) {
    auto w = sp.act(a, v);
    for (int r = 0; r < sp.dim(); ++r) {
      Scalar expect;
      for (int c = 0; c < sp.dim(); ++c) expect += sp.gamma(a).at(r, c) * v[c];
      CHECK(w[r] == expect);
    }
  }
}

TEST_CASE("entries stay in the Gaussian units") {
  SpinorSpace sp(3);
  for (int a = 1; a <= 6; ++a)
    for (int r = 0; r < sp.dim(); ++r)
      for (int c = 0; c < sp.dim(); ++c) {
        const Scalar& e = sp.gamma(a).at(r, c);
        CHECK((e.is_zero() || e.is_unit_entry()));
      }
}
