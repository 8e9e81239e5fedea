#include <catch2/catch_amalgamated.hpp>

#include "kdirac/clifford.hpp"
#include "kdirac/dirac.hpp"

using namespace kdirac;

namespace {

GradedOperator single_word(const VarTable& vt, std::vector<int> gens) {
  std::vector<LWord> words{{ExactMatrix::identity(1), gens}};
  DiffOp op = words_to_op(vt, 1, 1, words);
  return GradedOperator{std::move(op), int(gens.size()), {{1, 0}}, {{1, 0}}, std::move(words)};
}

}  // namespace

TEST_CASE("flat first operator acts componentwise by gamma") {
  const int k = 2, n = 2;
  GradedOperator d = build_D0_flat(k, n);
  SpinorSpace sp(n);
  VarTable vt(k, n, false);
  CHECK(d.order == 1);
  CHECK(d.src_dim() == 4);
  CHECK(d.tgt_dim() == 8);

  // applying to x(alpha,i) * s picks out gamma_alpha s in block i
  for (int alpha = 1; alpha <= 2 * n; ++alpha)
    for (int i = 1; i <= k; ++i)
      for (int s = 0; s < sp.dim(); ++s) {
        Poly f(vt, sp.dim());
        f.add(unit_mono(vt, vt.x_index(alpha, i)), s, Scalar(1));
        Poly out = d.op.apply(f);
        Poly expect(vt, k * sp.dim());
        for (int t = 0; t < sp.dim(); ++t)
          expect.add(zero_mono(vt), (i - 1) * sp.dim() + t, sp.gamma(alpha).at(t, s));
        expect.prune();
        CHECK(out == expect);
      }
}

TEST_CASE("first graded slice of the flat operator has full spinor rank") {
  GradedOperator d = build_D0_flat(2, 2);
  SparseMatrix m = gr_matrix_sparse(d, 1, false);
  CHECK(m.rows() == 8);
  CHECK(m.cols() == 32);
  CHECK(rank(m) == 8);
}

TEST_CASE("affine operator descends to the flat one") {
  for (auto [k, n] : {std::pair{2, 2}, {3, 2}}) {
    GradedOperator a = build_D0_affine(k, n);
    GradedOperator f = build_D0_flat(k, n);
    INFO("k=" << k << " n=" << n);
    CHECK(descend(a).op == f.op);
    CHECK(a.order == 1);
    REQUIRE(a.src.size() == 1);
    CHECK(a.src[0].dim == f.src[0].dim);
    CHECK(a.src[0].q == f.src[0].q);
    CHECK(a.tgt[0].dim == f.tgt[0].dim);
  }
}

TEST_CASE("descending intertwines application with the lift") {
  const int k = 2, n = 2;
  GradedOperator a = build_D0_affine(k, n);
  GradedOperator f = build_D0_flat(k, n);
  VarTable wvt(k, n, true), fvt(k, n, false);
  for (int deg = 0; deg <= 2; ++deg)
    for (const Mono& m : monomials_of_degree(fvt, deg))
      for (int c = 0; c < f.src_dim(); ++c) {
        Poly h(fvt, f.src_dim());
        h.add(m, c, Scalar(1));
        CHECK(a.op.apply(pullback_q(wvt, h)) == pullback_q(wvt, f.op.apply(h)));
      }
}

TEST_CASE("single fields descend to coordinate derivatives") {
  VarTable wvt(2, 2, true);
  VarTable fvt(2, 2, false);
  for (int g = 0; g < wvt.nvars(); ++g) {
    GradedOperator w = single_word(wvt, {g});
    DiffOp flat = descend(w).op;
    if (g < wvt.nx()) {
      DiffOp expect(fvt, 1, 1);
      expect.add_term(zero_mono(fvt), unit_mono(fvt, g), ExactMatrix::identity(1));
      CHECK(flat == expect);
    } else {
      CHECK(flat.is_zero());
    }
  }
}

TEST_CASE("descend is multiplicative on words") {
  VarTable wvt(2, 2, true);
  VarTable fvt(2, 2, false);
  for (int a = 0; a < wvt.nvars(); ++a)
    for (int b = 0; b < wvt.nvars(); ++b) {
      GradedOperator w = compose(single_word(wvt, {a}), single_word(wvt, {b}));
      REQUIRE(w.lwords.size() == 1);
      CHECK(w.lwords[0].gens == std::vector<int>{a, b});
      DiffOp lhs = descend(w).op;
      DiffOp rhs = descend(single_word(wvt, {a})).op.compose(descend(single_word(wvt, {b})).op);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("descend rejects operators without word data") {
  GradedOperator f = build_D0_flat(2, 2);
  CHECK_THROWS_AS(descend(f), std::invalid_argument);
}

TEST_CASE("graded slice matrices in the two pictures agree through the lift") {
  // the weighted slices of the affine operator and the plain slices of the
  // flat one have the same rank profile on x-only polynomials
  GradedOperator a = build_D0_affine(2, 2);
  GradedOperator f = build_D0_flat(2, 2);
  for (int deg = 1; deg <= 3; ++deg) {
    SparseMatrix mf = gr_matrix_sparse(f, deg, false);
    SparseMatrix ma = gr_matrix_sparse(a, deg, true);
    CHECK(rank(mf) <= rank(ma));  // weighted slice contains the lifted flat slice
    CHECK(mf.cols() <= ma.cols());
  }
}

TEST_CASE("empty target slice below the shift") {
  GradedOperator f = build_D0_flat(2, 2);
  SparseMatrix m = gr_matrix_sparse(f, 0, false);
  CHECK(m.rows() == 0);
  CHECK(m.cols() == 4);
  CHECK(rank(m) == 0);
}

TEST_CASE("composition concatenates orders and word lists") {
  VarTable wvt(2, 2, true);
  GradedOperator w1 = single_word(wvt, {0});
  GradedOperator w2 = single_word(wvt, {8});
  GradedOperator c = compose(w1, w2);
  CHECK(c.order == 2);
  REQUIRE(c.lwords.size() == 1);
  CHECK(c.lwords[0].gens == std::vector<int>{0, 8});
}
