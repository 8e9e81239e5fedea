#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "kdirac/clifford.hpp"
#include "kdirac/polydiff.hpp"

namespace kdirac {

/// One irreducible summand of a source or target module: its dimension and
/// the shift q entering the shifted grading of its polynomial slices.
struct Summand {
  int dim;
  int q;
};

inline int total_dim(const std::vector<Summand>& s) {
  int d = 0;
  for (const auto& b : s) d += b.dim;
  return d;
}

/// A constant matrix times a product of invariant fields, outermost factor
/// first.  Operators assembled from such words carry their own push-down to
/// the flat picture.
struct LWord {
  ExactMatrix mat;        // tgt_dim x src_dim
  std::vector<int> gens;  // generator indices as in invariant_field
};

/// Differential operator together with its weighted order and the summand
/// bookkeeping of its source and target modules.  When lwords is nonempty
/// the operator equals the sum of its invariant-field words, which is what
/// makes descend well defined.
struct GradedOperator {
  DiffOp op;
  int order = 0;
  std::vector<Summand> src, tgt;
  std::vector<LWord> lwords;

  int src_dim() const { return total_dim(src); }
  int tgt_dim() const { return total_dim(tgt); }
};

/// Expand a list of invariant-field words into a single operator.
inline DiffOp words_to_op(const VarTable& vt, int src_dim, int tgt_dim,
                          const std::vector<LWord>& words) {
  DiffOp out(vt, src_dim, tgt_dim);
  for (const LWord& w : words) {
    if (w.mat.rows() != tgt_dim || w.mat.cols() != src_dim)
      throw std::invalid_argument("words_to_op: bad word matrix shape");
    DiffOp scalar = word_operator(vt, w.gens);
    for (const auto& [key, m] : scalar.terms()) {
      ExactMatrix sm = w.mat;
      sm.scale(m.at(0, 0));
      out.add_term(key.second, key.first, sm);
    }
  }
  out.drop_zero_terms();
  return out;
}

/// First operator of the complex on the group side: the i-th component of
/// the image is sum_alpha gamma_alpha applied after the invariant field of
/// the generator (alpha, i).  Source: spinor-valued polynomials; target:
/// k-tuples of spinors laid out as k consecutive blocks of 2^n coordinates.
inline GradedOperator build_D0_affine(int k, int n) {
  if (k < 2 || n < 1) throw std::invalid_argument("build_D0_affine: need k >= 2, n >= 1");
  VarTable vt(k, n, true);
  SpinorSpace sp(n);
  const int sd = sp.dim(), td = k * sp.dim();
  std::vector<LWord> words;
  for (int alpha = 1; alpha <= 2 * n; ++alpha)
    for (int i = 1; i <= k; ++i) {
      ExactMatrix m(td, sd);
      const ExactMatrix& g = sp.gamma(alpha);
      for (int r = 0; r < sd; ++r)
        for (int c = 0; c < sd; ++c) m.at((i - 1) * sd + r, c) = g.at(r, c);
      words.push_back({std::move(m), {vt.x_index(alpha, i)}});
    }
  DiffOp op = words_to_op(vt, sd, td, words);
  return GradedOperator{std::move(op), 1, {{sd, 0}}, {{td, 0}}, std::move(words)};
}

/// The same operator in flat coordinates, built directly from the defining
/// formula: the i-th component is sum_alpha gamma_alpha d/dx(alpha,i).
inline GradedOperator build_D0_flat(int k, int n) {
  if (k < 2 || n < 1) throw std::invalid_argument("build_D0_flat: need k >= 2, n >= 1");
  VarTable vt(k, n, false);
  SpinorSpace sp(n);
  const int sd = sp.dim(), td = k * sp.dim();
  DiffOp op(vt, sd, td);
  for (int alpha = 1; alpha <= 2 * n; ++alpha)
    for (int i = 1; i <= k; ++i) {
      ExactMatrix m(td, sd);
      const ExactMatrix& g = sp.gamma(alpha);
      for (int r = 0; r < sd; ++r)
        for (int c = 0; c < sd; ++c) m.at((i - 1) * sd + r, c) = g.at(r, c);
      op.add_term(zero_mono(vt), unit_mono(vt, vt.x_index(alpha, i)), m);
    }
  return GradedOperator{std::move(op), 1, {{sd, 0}}, {{td, 0}}, {}};
}

/// Push an invariant-field expression down to the flat coordinates: a word
/// with only grade -1 factors becomes the matching product of x-derivatives,
/// and any word containing a grade -2 factor acts by zero on pushed-down
/// polynomials.
inline GradedOperator descend(const GradedOperator& d) {
  if (d.lwords.empty() || !d.op.table().with_y)
    throw std::invalid_argument("descend: operator is not an invariant-field expression");
  const VarTable& wvt = d.op.table();
  VarTable fvt(wvt.k, wvt.n, false);
  DiffOp op(fvt, d.op.src_dim(), d.op.tgt_dim());
  for (const LWord& w : d.lwords) {
    bool pure = true;
    for (int g : w.gens)
      if (g >= wvt.nx()) {
        pure = false;
        break;
      }
    if (!pure) continue;
    Mono deriv = zero_mono(fvt);
    for (int g : w.gens) ++deriv[g];
    op.add_term(zero_mono(fvt), deriv, w.mat);
  }
  op.drop_zero_terms();
  return GradedOperator{std::move(op), d.order, d.src, d.tgt, {}};
}

/// Composition a after b, with word lists concatenated pairwise when both
/// operators carry them (constant matrices commute with the fields, so the
/// word representation composes by concatenation).
inline GradedOperator compose(const GradedOperator& a, const GradedOperator& b) {
  DiffOp op = a.op.compose(b.op);
  std::vector<LWord> words;
  if (!a.lwords.empty() && !b.lwords.empty()) {
    for (const LWord& wa : a.lwords)
      for (const LWord& wb : b.lwords) {
        ExactMatrix m = wa.mat * wb.mat;
        if (m.is_zero()) continue;
        std::vector<int> gens = wa.gens;
        gens.insert(gens.end(), wb.gens.begin(), wb.gens.end());
        words.push_back({std::move(m), std::move(gens)});
      }
  }
  return GradedOperator{std::move(op), a.order + b.order, b.src, a.tgt, std::move(words)};
}

/// Matrix of the operator from the degree-`degree` slice to the slice of
/// degree `degree - order`, in the monomial-major bases (monomial index
/// times module dimension plus component).  The weighted flag selects
/// weighted or ordinary degree.  Throws if the operator fails to map the
/// slice where it should.
inline SparseMatrix gr_matrix_sparse(const GradedOperator& d, int degree, bool weighted) {
  const VarTable& vt = d.op.table();
  auto src_m = weighted ? monomials_of_weight(vt, degree) : monomials_of_degree(vt, degree);
  const int tdeg = degree - d.order;
  auto tgt_m = weighted ? monomials_of_weight(vt, tdeg) : monomials_of_degree(vt, tdeg);
  auto tidx = index_of(tgt_m);
  const int sd = d.op.src_dim(), td = d.op.tgt_dim();
  SparseMatrix M(int(tgt_m.size()) * td, int(src_m.size()) * sd);
  for (int mi = 0; mi < int(src_m.size()); ++mi)
    for (int c = 0; c < sd; ++c) {
      Poly f(vt, sd);
      f.add(src_m[mi], c, Scalar(1));
      Poly out = d.op.apply(f);
      for (const auto& [om, ov] : out.terms()) {
        auto it = tidx.find(om);
        for (int r = 0; r < td; ++r) {
          if (ov[r].is_zero()) continue;
          if (it == tidx.end())
            throw std::logic_error("gr_matrix: image leaves the expected target slice");
          M.add(it->second * td + r, mi * sd + c, ov[r]);
        }
      }
    }
  M.finalize();
  return M;
}

inline ExactMatrix gr_matrix(const GradedOperator& d, int degree, bool weighted) {
  return gr_matrix_sparse(d, degree, weighted).to_dense();
}

}  // namespace kdirac
