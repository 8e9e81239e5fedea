#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kdirac/matrix.hpp"

namespace kdirac {

/// Element of the orthogonal Lie algebra preserving the split form h below,
/// stored by its six independent blocks.  Sizes: A is k x k (arbitrary),
/// B is 2n x 2n (antisymmetric), X and Z are 2n x k (arbitrary), Y and W are
/// k x k (antisymmetric).  The full matrix is
///
///   [ A    Z^T   W   ]
///   [ X    B     Z   ]
///   [ Y    X^T  -A^T ]
///
/// and the five graded pieces are Y (-2), X (-1), A and B (0), Z (+1),
/// W (+2), the grade being the eigenvalue under bracketing with the grading
/// element (A = identity).
struct BlockElement {
  int k = 0, n = 0;
  ExactMatrix A, B, X, Y, Z, W;

  BlockElement() = default;
  BlockElement(int k_, int n_)
      : k(k_),
        n(n_),
        A(k_, k_),
        B(2 * n_, 2 * n_),
        X(2 * n_, k_),
        Y(k_, k_),
        Z(2 * n_, k_),
        W(k_, k_) {
    if (k_ < 1 || n_ < 1) throw std::invalid_argument("BlockElement: need k, n >= 1");
  }

  bool is_valid() const {
    auto antisym = [](const ExactMatrix& m) { return (m.transpose() + m).is_zero(); };
    return antisym(B) && antisym(Y) && antisym(W);
  }

  ExactMatrix assemble() const {
    const int d = 2 * (n + k), s1 = k, s2 = k + 2 * n;
    ExactMatrix M(d, d);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) {
        M.at(r, c) = A.at(r, c);
        M.at(r, s2 + c) = W.at(r, c);
        M.at(s2 + r, c) = Y.at(r, c);
        M.at(s2 + r, s2 + c) = -A.at(c, r);
      }
    for (int r = 0; r < 2 * n; ++r)
      for (int c = 0; c < 2 * n; ++c) M.at(s1 + r, s1 + c) = B.at(r, c);
    for (int r = 0; r < 2 * n; ++r)
      for (int c = 0; c < k; ++c) {
        M.at(s1 + r, c) = X.at(r, c);
        M.at(s2 + c, s1 + r) = X.at(r, c);
        M.at(s1 + r, s2 + c) = Z.at(r, c);
        M.at(c, s1 + r) = Z.at(r, c);
      }
    return M;
  }

  /// Inverse of assemble.  Throws if the matrix does not have the block
  /// shape above (so membership in the algebra is checked structurally).
  static BlockElement decompose(int k, int n, const ExactMatrix& M) {
    const int d = 2 * (n + k), s1 = k, s2 = k + 2 * n;
    if (M.rows() != d || M.cols() != d)
      throw std::invalid_argument("BlockElement::decompose: bad matrix size");
    BlockElement e(k, n);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) {
        e.A.at(r, c) = M.at(r, c);
        e.W.at(r, c) = M.at(r, s2 + c);
        e.Y.at(r, c) = M.at(s2 + r, c);
      }
    for (int r = 0; r < 2 * n; ++r)
      for (int c = 0; c < 2 * n; ++c) e.B.at(r, c) = M.at(s1 + r, s1 + c);
    for (int r = 0; r < 2 * n; ++r)
      for (int c = 0; c < k; ++c) {
        e.X.at(r, c) = M.at(s1 + r, c);
        e.Z.at(r, c) = M.at(s1 + r, s2 + c);
      }
    if (M != e.assemble() || !e.is_valid())
      throw std::invalid_argument("BlockElement::decompose: matrix is not in the algebra");
    return e;
  }

  BlockElement& operator+=(const BlockElement& o) {
    A += o.A, B += o.B, X += o.X, Y += o.Y, Z += o.Z, W += o.W;
    return *this;
  }
  BlockElement& operator-=(const BlockElement& o) {
    A -= o.A, B -= o.B, X -= o.X, Y -= o.Y, Z -= o.Z, W -= o.W;
    return *this;
  }
  void scale(const Scalar& s) {
    A.scale(s), B.scale(s), X.scale(s), Y.scale(s), Z.scale(s), W.scale(s);
  }
  friend BlockElement operator+(BlockElement a, const BlockElement& b) { return a += b; }
  friend BlockElement operator-(BlockElement a, const BlockElement& b) { return a -= b; }
  friend bool operator==(const BlockElement& a, const BlockElement& b) {
    return a.k == b.k && a.n == b.n && a.A == b.A && a.B == b.B && a.X == b.X && a.Y == b.Y &&
           a.Z == b.Z && a.W == b.W;
  }
  friend bool operator!=(const BlockElement& a, const BlockElement& b) { return !(a == b); }

  bool is_zero() const {
    return A.is_zero() && B.is_zero() && X.is_zero() && Y.is_zero() && Z.is_zero() && W.is_zero();
  }
};

/// The invariant bilinear form: h(u, v) pairs the first k coordinates with
/// the last k and is negative definite on the middle 2n.
inline ExactMatrix gram_h(int k, int n) {
  const int d = 2 * (n + k), s1 = k, s2 = k + 2 * n;
  ExactMatrix h(d, d);
  for (int r = 0; r < k; ++r) {
    h.at(r, s2 + r) = Scalar(1);
    h.at(s2 + r, r) = Scalar(1);
  }
  for (int r = 0; r < 2 * n; ++r) h.at(s1 + r, s1 + r) = Scalar(-1);
  return h;
}

/// M^T h + h M == 0, i.e. M is in the algebra of h.
inline bool preserves_h(const ExactMatrix& M, const ExactMatrix& h) {
  return (M.transpose() * h + h * M).is_zero();
}

inline BlockElement bracket(const BlockElement& a, const BlockElement& b) {
  if (a.k != b.k || a.n != b.n) throw std::invalid_argument("bracket: mismatched algebras");
  ExactMatrix MA = a.assemble(), MB = b.assemble();
  return BlockElement::decompose(a.k, a.n, MA * MB - MB * MA);
}

/// The semisimple element whose bracket eigenvalues define the grading:
/// A = identity, all other blocks zero.
inline BlockElement grading_element(int k, int n) {
  BlockElement e(k, n);
  e.A = ExactMatrix::identity(k);
  return e;
}

/// Trace form of the defining representation.
inline Scalar killing_pair(const BlockElement& a, const BlockElement& b) {
  ExactMatrix p = a.assemble() * b.assemble();
  Scalar tr;
  for (int i = 0; i < p.rows(); ++i) tr += p.at(i, i);
  return tr;
}

struct AlgebraBasisElement {
  BlockElement el;
  int grade;         // -2 .. 2
  std::string name;  // e.g. "X(1,2)", "Y(1,3)", "A(2,2)"
};

namespace detail {

inline ExactMatrix unit_matrix(int rows, int cols, int r, int c) {
  ExactMatrix m(rows, cols);
  m.at(r, c) = Scalar(1);
  return m;
}

inline ExactMatrix antisym_unit(int dim, int r, int s) {
  ExactMatrix m(dim, dim);
  m.at(r, s) = Scalar(1);
  m.at(s, r) = Scalar(-1);
  return m;
}

}  // namespace detail

/// Basis of the grade -1 part, ordered to match the flat coordinates:
/// the generator at index (alpha-1)*k + (i-1) is X = E_{alpha,i}.
inline std::vector<BlockElement> negative_one_basis(int k, int n) {
  std::vector<BlockElement> out;
  for (int alpha = 1; alpha <= 2 * n; ++alpha)
    for (int i = 1; i <= k; ++i) {
      BlockElement e(k, n);
      e.X = detail::unit_matrix(2 * n, k, alpha - 1, i - 1);
      out.push_back(std::move(e));
    }
  return out;
}

/// Basis of the grade -2 part, ordered by (r,s) lexicographic with r < s:
/// the generator for (r,s) is Y = E_{rs} - E_{sr}.
inline std::vector<BlockElement> negative_two_basis(int k, int n) {
  std::vector<BlockElement> out;
  for (int r = 1; r <= k; ++r)
    for (int s = r + 1; s <= k; ++s) {
      BlockElement e(k, n);
      e.Y = detail::antisym_unit(k, r - 1, s - 1);
      out.push_back(std::move(e));
    }
  return out;
}

/// Full labeled basis, grades ascending; within a grade the ordering is the
/// one documented per block (row-major for full matrix blocks, lexicographic
/// (r,s), r < s, for antisymmetric ones).
inline std::vector<AlgebraBasisElement> algebra_basis(int k, int n) {
  std::vector<AlgebraBasisElement> out;
  auto name2 = [](const char* tag, int a, int b) {
    return std::string(tag) + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  };
  for (int r = 1; r <= k; ++r)
    for (int s = r + 1; s <= k; ++s) {
      BlockElement e(k, n);
      e.Y = detail::antisym_unit(k, r - 1, s - 1);
      out.push_back({std::move(e), -2, name2("Y", r, s)});
    }
  for (int alpha = 1; alpha <= 2 * n; ++alpha)
    for (int i = 1; i <= k; ++i) {
      BlockElement e(k, n);
      e.X = detail::unit_matrix(2 * n, k, alpha - 1, i - 1);
      out.push_back({std::move(e), -1, name2("X", alpha, i)});
    }
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      BlockElement e(k, n);
      e.A = detail::unit_matrix(k, k, i - 1, j - 1);
      out.push_back({std::move(e), 0, name2("A", i, j)});
    }
  for (int alpha = 1; alpha <= 2 * n; ++alpha)
    for (int beta = alpha + 1; beta <= 2 * n; ++beta) {
      BlockElement e(k, n);
      e.B = detail::antisym_unit(2 * n, alpha - 1, beta - 1);
      out.push_back({std::move(e), 0, name2("B", alpha, beta)});
    }
  for (int alpha = 1; alpha <= 2 * n; ++alpha)
    for (int i = 1; i <= k; ++i) {
      BlockElement e(k, n);
      e.Z = detail::unit_matrix(2 * n, k, alpha - 1, i - 1);
      out.push_back({std::move(e), 1, name2("Z", alpha, i)});
    }
  for (int r = 1; r <= k; ++r)
    for (int s = r + 1; s <= k; ++s) {
      BlockElement e(k, n);
      e.W = detail::antisym_unit(k, r - 1, s - 1);
      out.push_back({std::move(e), 2, name2("W", r, s)});
    }
  return out;
}

/// Coordinates of an element in the algebra_basis order; the linear inverse
/// of expanding that basis.  Antisymmetric blocks contribute their strict
/// upper triangle.
inline std::vector<Scalar> basis_coordinates(const BlockElement& e) {
  const int k = e.k, tn = 2 * e.n;
  std::vector<Scalar> out;
  for (int r = 0; r < k; ++r)
    for (int s = r + 1; s < k; ++s) out.push_back(e.Y.at(r, s));
  for (int a = 0; a < tn; ++a)
    for (int i = 0; i < k; ++i) out.push_back(e.X.at(a, i));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out.push_back(e.A.at(i, j));
  for (int a = 0; a < tn; ++a)
    for (int b = a + 1; b < tn; ++b) out.push_back(e.B.at(a, b));
  for (int a = 0; a < tn; ++a)
    for (int i = 0; i < k; ++i) out.push_back(e.Z.at(a, i));
  for (int r = 0; r < k; ++r)
    for (int s = r + 1; s < k; ++s) out.push_back(e.W.at(r, s));
  return out;
}

/// All basis-pair brackets expanded back into basis coordinates.  Built once
/// (quadratically many matrix commutators), it makes sweeps over basis
/// triples cheap: a Jacobi check walks sparse coordinate vectors instead of
/// multiplying block matrices.
class BracketTable {
 public:
  using SparseVec = std::vector<std::pair<int, Scalar>>;

  BracketTable(int k, int n) : basis_(algebra_basis(k, n)) {
    const int m = dim();
    table_.resize(size_t(m) * m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        auto coords = basis_coordinates(bracket(basis_[i].el, basis_[j].el));
        SparseVec v;
        for (int t = 0; t < m; ++t)
          if (!coords[t].is_zero()) v.emplace_back(t, coords[t]);
        SparseVec neg;
        for (const auto& [t, c] : v) neg.emplace_back(t, -c);
        table_[size_t(i) * m + j] = std::move(v);
        table_[size_t(j) * m + i] = std::move(neg);
      }
  }

  int dim() const { return int(basis_.size()); }
  const std::vector<AlgebraBasisElement>& basis() const { return basis_; }
  const SparseVec& at(int i, int j) const { return table_[size_t(i) * dim() + j]; }

  /// [b_i, v] for a coordinate vector v.
  SparseVec ad(int i, const SparseVec& v) const {
    std::map<int, Scalar> acc;
    for (const auto& [j, c] : v)
      for (const auto& [t, w] : at(i, j)) acc[t] += c * w;
    SparseVec out;
    for (auto& [t, c] : acc)
      if (!c.is_zero()) out.emplace_back(t, std::move(c));
    return out;
  }

  /// Jacobi identity over all basis triples.
  bool jacobi_holds() const {
    const int m = dim();
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int l = j + 1; l < m; ++l) {
          std::map<int, Scalar> acc;
          auto axpy = [&](const SparseVec& v) {
            for (const auto& [t, c] : v) acc[t] += c;
          };
          axpy(ad(i, at(j, l)));
          axpy(ad(j, at(l, i)));
          axpy(ad(l, at(i, j)));
          for (const auto& [t, c] : acc)
            if (!c.is_zero()) return false;
        }
    return true;
  }

  /// Every bracket lands in the grade that is the sum of its factors.
  bool grading_respected() const {
    const int m = dim();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        int g = basis_[i].grade + basis_[j].grade;
        for (const auto& [t, c] : at(i, j))
          if (basis_[t].grade != g) return false;
      }
    return true;
  }

 private:
  std::vector<AlgebraBasisElement> basis_;
  std::vector<SparseVec> table_;  // row-major m x m
};

/// Grade of a homogeneous element (throws for zero or mixed elements).
inline int grade_of(const BlockElement& e) {
  bool gm2 = !e.Y.is_zero(), gm1 = !e.X.is_zero(), g0 = !e.A.is_zero() || !e.B.is_zero(),
       g1 = !e.Z.is_zero(), g2 = !e.W.is_zero();
  int cnt = int(gm2) + int(gm1) + int(g0) + int(g1) + int(g2);
  if (cnt != 1) throw std::invalid_argument("grade_of: element is zero or not homogeneous");
  if (gm2) return -2;
  if (gm1) return -1;
  if (g0) return 0;
  if (g1) return 1;
  return 2;
}

}  // namespace kdirac
