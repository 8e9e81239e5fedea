#include <catch2/catch_amalgamated.hpp>

#include "kdirac/liealg.hpp"

using namespace kdirac;

TEST_CASE("assemble and decompose are inverse") {
  BlockElement e(2, 2);
  e.A.at(0, 1) = Scalar(3);
  e.X.at(2, 0) = Scalar(1);
  e.Y.at(0, 1) = Scalar(2);
  e.Y.at(1, 0) = Scalar(-2);
  e.Z.at(1, 1) = Scalar(-1);
  REQUIRE(e.is_valid());
  CHECK(BlockElement::decompose(2, 2, e.assemble()) == e);

  SECTION("matrices outside the block shape are rejected") {
    ExactMatrix m = e.assemble();
    m.at(0, 0) += Scalar(1);  // breaks the -A^T corner tie
    CHECK_THROWS_AS(BlockElement::decompose(2, 2, m), std::invalid_argument);
    CHECK_THROWS_AS(BlockElement::decompose(2, 2, ExactMatrix(3, 3)), std::invalid_argument);
  }
}

TEST_CASE("every basis element preserves the split form") {
  for (auto [k, n] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    ExactMatrix h = gram_h(k, n);
    for (const auto& b : algebra_basis(k, n)) {
      INFO(b.name << " at k=" << k << " n=" << n);
      CHECK(preserves_h(b.el.assemble(), h));
      CHECK(grade_of(b.el) == b.grade);
    }
  }
}

TEST_CASE("basis size matches the orthogonal algebra") {
  auto dim_so = [](int m) { return m * (m - 1) / 2; };
  CHECK(int(algebra_basis(2, 2).size()) == dim_so(8));
  CHECK(int(algebra_basis(3, 3).size()) == dim_so(12));
}

TEST_CASE("coordinates invert the basis expansion") {
  auto basis = algebra_basis(2, 3);
  for (size_t i = 0; i < basis.size(); ++i) {
    auto coords = basis_coordinates(basis[i].el);
    for (size_t j = 0; j < basis.size(); ++j)
      CHECK(coords[j] == (i == j ? Scalar(1) : Scalar()));
  }
}

TEST_CASE("bracket table validates the graded structure") {
  BracketTable bt(2, 2);
  CHECK(bt.grading_respected());
  CHECK(bt.jacobi_holds());

  SECTION("grading element acts by the grade") {
    BlockElement E = grading_element(2, 2);
    for (const auto& b : bt.basis()) {
      BlockElement expect = b.el;
      expect.scale(Scalar(b.grade));
      CHECK(bracket(E, b.el) == expect);
    }
  }

  SECTION("bottom grade is generated by the middle one") {
    auto xs = negative_one_basis(2, 2);
    bool found = false;
    for (size_t i = 0; i < xs.size() && !found; ++i)
      for (size_t j = i + 1; j < xs.size() && !found; ++j)
        if (!bracket(xs[i], xs[j]).Y.is_zero()) found = true;
    CHECK(found);  // rank checked in full by the command-line suite
  }
}

TEST_CASE("column brackets close onto the antisymmetric square") {
  // [e^i ox eps_a, e^j ox eps_b] = delta_ab (E_ij - E_ji) in grade -2
  auto xs = negative_one_basis(2, 2);
  const int k = 2;
  auto idx = [&](int alpha, int i) { return (alpha - 1) * k + (i - 1); };
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      BlockElement br = bracket(xs[idx(a, 1)], xs[idx(b, 2)]);
      CHECK(br.X.is_zero());
      if (a == b)
        CHECK(br.Y.at(0, 1) == Scalar(1));
      else
        CHECK(br.Y.is_zero());
    }
}

TEST_CASE("trace pairing") {
  auto basis = algebra_basis(2, 2);
  SECTION("vanishes unless the grades cancel") {
    for (const auto& a : basis)
      for (const auto& b : basis)
        if (a.grade + b.grade != 0) CHECK(killing_pair(a.el, b.el).is_zero());
  }
  SECTION("matched extreme pairs") {
    BlockElement y(2, 2), w(2, 2);
    y.Y = detail::antisym_unit(2, 0, 1);
    w.W = detail::antisym_unit(2, 0, 1);
    CHECK(killing_pair(y, w) == Scalar(-2));
    CHECK(killing_pair(y, y).is_zero());
  }
  SECTION("matched middle pairs") {
    auto xs = negative_one_basis(2, 2);
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = 0; j < xs.size(); ++j) {
        BlockElement z(2, 2);
        z.Z = xs[j].X;
        CHECK(killing_pair(xs[i], z) == (i == j ? Scalar(2) : Scalar()));
      }
  }
}

TEST_CASE("grade of mixed or zero elements throws") {
  BlockElement zero(2, 2);
  CHECK_THROWS_AS(grade_of(zero), std::invalid_argument);
  BlockElement mixed(2, 2);
  mixed.X.at(0, 0) = Scalar(1);
  mixed.Z.at(0, 0) = Scalar(1);
  CHECK_THROWS_AS(grade_of(mixed), std::invalid_argument);
}
