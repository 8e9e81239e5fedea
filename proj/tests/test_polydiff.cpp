#include <catch2/catch_amalgamated.hpp>

#include "kdirac/liealg.hpp"
#include "kdirac/polydiff.hpp"

using namespace kdirac;

TEST_CASE("variable table indexing") {
  VarTable vt(2, 2, true);
  CHECK(vt.nvars() == 9);
  CHECK(vt.x_index(1, 1) == 0);
  CHECK(vt.x_index(1, 2) == 1);
  CHECK(vt.x_index(4, 2) == 7);
  CHECK(vt.y_index(1, 2) == 8);
  CHECK(vt.weight(0) == 1);
  CHECK(vt.weight(8) == 2);
  CHECK(vt.var_name(0) == "x(1,1)");
  CHECK(vt.var_name(8) == "y(1,2)");
  CHECK_THROWS_AS(vt.y_index(2, 1), std::out_of_range);

  VarTable flat(2, 2, false);
  CHECK(flat.nvars() == 8);
  CHECK_THROWS_AS(flat.y_index(1, 2), std::out_of_range);

  VarTable vt3(3, 2, true);
  CHECK(vt3.y_index(1, 2) == 12);
  CHECK(vt3.y_index(1, 3) == 13);
  CHECK(vt3.y_index(2, 3) == 14);
  CHECK(vt3.var_name(14) == "y(2,3)");
}

TEST_CASE("monomial utilities") {
  VarTable vt(2, 2, true);
  Mono m = unit_mono(vt, 0);
  Mono y = unit_mono(vt, 8);
  CHECK(total_deg(m) == 1);
  CHECK(wdeg(vt, m) == 1);
  CHECK(wdeg(vt, y) == 2);
  CHECK(wdeg(vt, mono_mul(m, y)) == 3);

  // falling factorial: d^2/dx^2 on x^3 leaves 3*2*x
  Mono x3 = zero_mono(vt);
  x3[0] = 3;
  Mono x2 = zero_mono(vt);
  x2[0] = 2;
  CHECK(falling_factor(x3, x2) == Scalar(6));
  CHECK(falling_factor(x2, x3) == Scalar());  // too many derivatives
  CHECK(binom_factor(x3, x2) == Scalar(3));
}

TEST_CASE("weighted slice enumeration matches the closed formula") {
  for (auto [k, n] : {std::pair{2, 2}, {3, 3}})
    for (int r = 0; r <= 6; ++r) {
      VarTable vt(k, n, true);
      CHECK(mpz_class(long(monomials_of_weight(vt, r).size())) ==
            weighted_slice_dim_formula(k, n, r));
    }
  // the quadratic slice of the weighted algebra at (2,2)
  VarTable vt(2, 2, true);
  CHECK(monomials_of_weight(vt, 2).size() == 37);
}

TEST_CASE("plain degree enumeration") {
  VarTable flat(2, 2, false);
  CHECK(monomials_of_degree(flat, 0).size() == 1);
  CHECK(monomials_of_degree(flat, 2).size() == 36);  // C(9,2)
  auto monos = monomials_of_degree(flat, 3);
  auto index = index_of(monos);
  for (int i = 0; i < int(monos.size()); ++i) CHECK(index.at(monos[i]) == i);
}

TEST_CASE("polynomial container") {
  VarTable vt(2, 2, false);
  Poly p(vt, 2);
  p.add(unit_mono(vt, 0), 0, Scalar(2));
  p.add(unit_mono(vt, 0), 0, Scalar(-2));
  p.add(unit_mono(vt, 1), 1, Scalar(3));
  p.prune();
  CHECK_FALSE(p.is_zero());
  CHECK(p.terms().size() == 1);

  Poly q(vt, 2);
  q.add(unit_mono(vt, 1), 1, Scalar(3));
  CHECK(p == q);
  q.scale(Scalar(2));
  CHECK(p != q);
}

TEST_CASE("invariant fields have the stated coordinate form") {
  VarTable vt(2, 2, true);

  // L along x(1,1) = d/dx(1,1) - (1/2) x(1,2) d/dy(1,2)
  DiffOp L = invariant_field(vt, vt.x_index(1, 1));
  Poly f(vt, 1);
  f.add(unit_mono(vt, vt.y_index(1, 2)), 0, Scalar(1));  // f = y(1,2)
  Poly out = L.apply(f);
  Poly expect(vt, 1);
  expect.add(unit_mono(vt, vt.x_index(1, 2)), 0, Scalar::from_parts(-1, 2, 0, 1));
  CHECK(out == expect);

  // L along x(1,2) picks up the opposite sign through the folded index
  DiffOp L2 = invariant_field(vt, vt.x_index(1, 2));
  Poly out2 = L2.apply(f);
  Poly expect2(vt, 1);
  expect2.add(unit_mono(vt, vt.x_index(1, 1)), 0, Scalar::from_parts(1, 2, 0, 1));
  CHECK(out2 == expect2);

  // grade -2 fields are plain derivatives
  DiffOp Ly = invariant_field(vt, vt.y_index(1, 2));
  Poly outy = Ly.apply(f);
  Poly expecty(vt, 1);
  expecty.add(zero_mono(vt), 0, Scalar(1));
  CHECK(outy == expecty);

  SECTION("weighted homogeneity of degree minus the weight") {
    for (int g = 0; g < vt.nvars(); ++g)
      CHECK(is_weighted_homogeneous(invariant_field(vt, g), vt.weight(g), 4));
  }
}

TEST_CASE("composition implements the product rule") {
  VarTable vt(2, 2, true);
  // compare compose-then-apply with apply-then-apply on a mixed polynomial
  Poly f(vt, 1);
  Mono m = zero_mono(vt);
  m[0] = 2;
  m[8] = 1;  // x(1,1)^2 y(1,2)
  f.add(m, 0, Scalar(1));
  Mono m2 = zero_mono(vt);
  m2[1] = 1;
  m2[3] = 1;  // x(1,2) x(2,2)
  f.add(m2, 0, Scalar(-3));

  for (int a = 0; a < vt.nvars(); ++a)
    for (int b = 0; b < vt.nvars(); ++b) {
      DiffOp ab = invariant_field(vt, a).compose(invariant_field(vt, b));
      Poly lhs = ab.apply(f);
      Poly rhs = invariant_field(vt, a).apply(invariant_field(vt, b).apply(f));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("field commutators realize the algebra bracket") {
  VarTable vt(2, 2, true);
  auto xs = negative_one_basis(2, 2);
  // [L_{(1,1)}, L_{(1,2)}] = L_{y(1,2)} exactly (normalization constant 1)
  DiffOp a = invariant_field(vt, vt.x_index(1, 1));
  DiffOp b = invariant_field(vt, vt.x_index(1, 2));
  DiffOp comm = a.compose(b);
  DiffOp rev = b.compose(a);
  rev.scale(Scalar(-1));
  comm += rev;
  CHECK(comm == invariant_field(vt, vt.y_index(1, 2)));
  CHECK(bracket(xs[0], xs[1]).Y.at(0, 1) == Scalar(1));

  // same columns commute
  DiffOp c = invariant_field(vt, vt.x_index(2, 1));
  DiffOp comm2 = a.compose(c);
  DiffOp rev2 = c.compose(a);
  rev2.scale(Scalar(-1));
  comm2 += rev2;
  CHECK(comm2.is_zero());
}

TEST_CASE("lifting flat polynomials") {
  VarTable wvt(2, 2, true), fvt(2, 2, false);
  Poly f(fvt, 2);
  Mono m = zero_mono(fvt);
  m[3] = 2;
  f.add(m, 1, Scalar(5));
  Poly lifted = pullback_q(wvt, f);
  REQUIRE(lifted.terms().size() == 1);
  const auto& [lm, lv] = *lifted.terms().begin();
  CHECK(int(lm.size()) == wvt.nvars());
  CHECK(lm[3] == 2);
  CHECK(lm[8] == 0);
  CHECK(lv[1] == Scalar(5));
}

TEST_CASE("duality between words and weighted polynomials") {
  VarTable vt(2, 2, true);
  SECTION("square pairing matrices are invertible") {
    for (int r = 1; r <= 3; ++r) {
      ExactMatrix M = duality_matrix(vt, r, r);
      REQUIRE(M.rows() == M.cols());
      CHECK(rank(M) == M.rows());
    }
  }
  SECTION("mismatched weights pair to zero") {
    CHECK(duality_matrix(vt, 1, 2).is_zero());
    CHECK(duality_matrix(vt, 2, 1).is_zero());
    CHECK(duality_matrix(vt, 2, 3).is_zero());
  }
  SECTION("words are ordered like the monomials") {
    auto words = enveloping_words(vt, 2);
    auto monos = monomials_of_weight(vt, 2);
    REQUIRE(words.size() == monos.size());
    CHECK(words.size() == 37);
  }
  SECTION("the empty word is the identity") {
    DiffOp id = word_operator(vt, {});
    Poly f(vt, 1);
    f.add(unit_mono(vt, 2), 0, Scalar(4));
    CHECK(id.apply(f) == f);
  }
}
