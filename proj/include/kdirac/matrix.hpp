#pragma once

#include "kdirac/scalar.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kdirac {

/// Dense row-major matrix over Scalar.  The dense layout is the interchange
/// format; the elimination engine below converts to sparse rows internally,
/// so callers pay for structural zeros only at assembly time.
class ExactMatrix {
public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("ExactMatrix: negative dimension");
  }

  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int r, int c) { return e_[size_t(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const { return e_[size_t(r) * cols_ + c]; }

  ExactMatrix transpose() const {
    ExactMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  ExactMatrix& operator+=(const ExactMatrix& o) {
    check_same_shape(o);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  ExactMatrix& operator-=(const ExactMatrix& o) {
    check_same_shape(o);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
  }
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("ExactMatrix: shape mismatch in product");
    ExactMatrix p(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int l = 0; l < a.cols_; ++l) {
        const Scalar& v = a.at(i, l);
        if (v.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) {
          const Scalar& w = b.at(l, j);
          if (!w.is_zero()) p.at(i, j) += v * w;
        }
      }
    return p;
  }

  ExactMatrix& scale(const Scalar& s) {
    for (auto& v : e_) v *= s;
    return *this;
  }

  bool is_zero() const {
    for (const auto& v : e_)
      if (!v.is_zero()) return false;
    return true;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

private:
  void check_same_shape(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("ExactMatrix: shape mismatch");
  }

  int rows_, cols_;
  std::vector<Scalar> e_;
};

struct SparseEntry {
  int col;
  Scalar v;
};
using SparseRow = std::vector<SparseEntry>;  // sorted by col, values nonzero

/// Row-sparse matrix feeding the elimination engine.  Assemble with add(),
/// then finalize() once; duplicate (row,col) contributions accumulate.
class SparseMatrix {
public:
  SparseMatrix() : rows_(0), cols_(0) {}
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), r_(rows) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMatrix: negative dimension");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void add(int r, int c, Scalar v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("SparseMatrix: index out of range");
    if (!v.is_zero()) r_[r].push_back({c, std::move(v)});
  }

  void finalize() {
    for (auto& row : r_) {
      std::sort(row.begin(), row.end(),
                [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
      SparseRow out;
      out.reserve(row.size());
      for (auto& e : row) {
        if (!out.empty() && out.back().col == e.col) {
          out.back().v += e.v;
          if (out.back().v.is_zero()) out.pop_back();
        } else {
          out.push_back(std::move(e));
        }
      }
      row = std::move(out);
    }
  }

  const SparseRow& row(int i) const { return r_[i]; }

  size_t nnz() const {
    size_t n = 0;
    for (const auto& row : r_) n += row.size();
    return n;
  }

  static SparseMatrix from_dense(const ExactMatrix& m) {
    SparseMatrix s(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        if (!m.at(r, c).is_zero()) s.r_[r].push_back({c, m.at(r, c)});
    return s;
  }

  ExactMatrix to_dense() const {
    ExactMatrix m(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
      for (const auto& e : r_[r]) m.at(r, e.col) = e.v;
    return m;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (const auto& e : r_[r]) t.r_[e.col].push_back({r, e.v});
    return t;  // rows already sorted because r ascends
  }

  std::vector<SparseRow>& mutable_rows() { return r_; }

private:
  int rows_, cols_;
  std::vector<SparseRow> r_;
};

namespace detail {

/// Strips the rational content of a row: scales so every entry is a Gaussian
/// integer and the integer gcd of all numerators is 1.  Rescaling a row
/// changes neither rank nor kernel.
inline void strip_content(SparseRow& row) {
  if (row.empty()) return;
  mpz_class lcm_den = 1;
  for (const auto& e : row) {
    mpz_class d;
    mpz_lcm(d.get_mpz_t(), lcm_den.get_mpz_t(), e.v.re().get_den().get_mpz_t());
    mpz_lcm(lcm_den.get_mpz_t(), d.get_mpz_t(), e.v.im().get_den().get_mpz_t());
  }
  mpz_class g = 0;
  for (const auto& e : row) {
    mpz_class a = e.v.re().get_num() * (lcm_den / e.v.re().get_den());
    mpz_class b = e.v.im().get_num() * (lcm_den / e.v.im().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b.get_mpz_t());
  }
  if (g == 0) return;
  mpq_class f(lcm_den, g);
  f.canonicalize();
  if (f == 1) return;
  Scalar fs((f));
  for (auto& e : row) e.v *= fs;
}

inline const Scalar* row_find(const SparseRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const SparseEntry& e, int c) { return e.col < c; });
  if (it != row.end() && it->col == col) return &it->v;
  return nullptr;
}

/// r := r - f * p, merging sorted rows.
inline SparseRow row_axpy(const SparseRow& r, const Scalar& f, const SparseRow& p) {
  SparseRow out;
  out.reserve(r.size() + p.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].col < p[j].col)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].col < r[i].col) {
      out.push_back({p[j].col, -(f * p[j].v)});
      ++j;
    } else {
      Scalar v = r[i].v - f * p[j].v;
      if (!v.is_zero()) out.push_back({r[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

enum class RowState : char { Active, Pivot, Zero };

/// Sparse Gaussian elimination with greedy lowest-column-count pivoting and a
/// preference for unit pivots.  Deterministic: all ties break on indices.
/// In full mode pivot columns are eliminated from every row, leaving each
/// pivot row supported on its own pivot column plus free columns.
struct Eliminator {
  int cols;
  std::vector<SparseRow> rows;
  std::vector<RowState> state;
  std::vector<int> cnt;                  // per column, over Active rows only
  std::vector<std::vector<int>> inc;     // col -> candidate row ids (lazily stale)
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>,
                      std::greater<std::pair<int, int>>>
      heap;
  std::vector<char> col_done;
  std::vector<std::pair<int, int>> pivots;  // (col, row) in elimination order
  bool full;

  Eliminator(std::vector<SparseRow> in, int ncols, bool full_reduce)
      : cols(ncols), rows(std::move(in)), state(rows.size(), RowState::Active),
        cnt(ncols, 0), inc(ncols), col_done(ncols, 0), full(full_reduce) {
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].empty()) state[i] = RowState::Zero;
      for (const auto& e : rows[i]) {
        ++cnt[e.col];
        inc[e.col].push_back(int(i));
      }
    }
    for (int c = 0; c < cols; ++c)
      if (cnt[c] > 0) heap.push({cnt[c], c});
  }

  void touch(int c) { heap.push({cnt[c], c}); }

  void run() {
    while (!heap.empty()) {
      auto [k, c] = heap.top();
      heap.pop();
      if (col_done[c] || k != cnt[c] || cnt[c] == 0) continue;
      pivot_column(c);
    }
  }

  void pivot_column(int c) {
    // pick the pivot row: unit entry first, then fewest nonzeros, then index
    int best = -1;
    size_t best_nnz = 0;
    bool best_unit = false;
    auto& cand = inc[c];
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (int id : cand) {
      if (state[id] != RowState::Active) continue;
      const Scalar* v = row_find(rows[id], c);
      if (!v) continue;
      bool unit = v->is_unit_entry();
      if (best < 0 || (unit && !best_unit) ||
          (unit == best_unit && (rows[id].size() < best_nnz ||
                                 (rows[id].size() == best_nnz && id < best)))) {
        best = id;
        best_nnz = rows[id].size();
        best_unit = unit;
      }
    }
    if (best < 0) {
      col_done[c] = 1;
      return;
    }
    // retire the pivot row from the active counts
    state[best] = RowState::Pivot;
    for (const auto& e : rows[best]) {
      --cnt[e.col];
      touch(e.col);
    }
    const Scalar pv = *row_find(rows[best], c);
    if (pv != Scalar(1)) {
      Scalar inv = Scalar(1) / pv;
      for (auto& e : rows[best]) e.v *= inv;
    }
    pivots.push_back({c, best});
    col_done[c] = 1;
    // eliminate c everywhere else
    for (int id : cand) {
      if (id == best) continue;
      bool is_active = state[id] == RowState::Active;
      bool is_pivot = state[id] == RowState::Pivot;
      if (!is_active && !(full && is_pivot)) continue;
      const Scalar* a = row_find(rows[id], c);
      if (!a) continue;
      SparseRow updated = row_axpy(rows[id], *a, rows[best]);
      if (is_active) {
        strip_content(updated);
        for (const auto& e : rows[id]) {
          --cnt[e.col];
          touch(e.col);
        }
        for (const auto& e : updated) {
          ++cnt[e.col];
          inc[e.col].push_back(id);
          touch(e.col);
        }
        if (updated.empty()) state[id] = RowState::Zero;
      } else {
        for (const auto& e : updated) inc[e.col].push_back(id);
      }
      rows[id] = std::move(updated);
    }
  }
};

}  // namespace detail

inline int rank(const SparseMatrix& m) {
  // split into connected components of the column graph; elimination never
  // mixes unconnected columns, so solving per component saves fill and time
  std::vector<int> parent(m.cols());
  for (int i = 0; i < m.cols(); ++i) parent[i] = i;
  std::vector<int>* pp = &parent;
  auto find = [pp](int x) {
    while ((*pp)[x] != x) {
      (*pp)[x] = (*pp)[(*pp)[x]];
      x = (*pp)[x];
    }
    return x;
  };
  for (int r = 0; r < m.rows(); ++r) {
    const auto& row = m.row(r);
    for (size_t j = 1; j < row.size(); ++j) {
      int a = find(row[0].col), b = find(row[j].col);
      if (a != b) parent[a] = b;
    }
  }
  // bucket rows by component of their first column
  std::vector<std::vector<int>> comp_rows;
  std::vector<int> comp_of(m.cols(), -1);
  int ncomp = 0;
  for (int r = 0; r < m.rows(); ++r) {
    if (m.row(r).empty()) continue;
    int root = find(m.row(r)[0].col);
    if (comp_of[root] < 0) {
      comp_of[root] = ncomp++;
      comp_rows.emplace_back();
    }
    comp_rows[comp_of[root]].push_back(r);
  }
  int total = 0;
  for (const auto& rset : comp_rows) {
    // local column remap keeps the per-component matrices compact
    std::vector<int> cols_used;
    for (int r : rset)
      for (const auto& e : m.row(r)) cols_used.push_back(e.col);
    std::sort(cols_used.begin(), cols_used.end());
    cols_used.erase(std::unique(cols_used.begin(), cols_used.end()), cols_used.end());
    std::vector<int> local(m.cols(), -1);
    for (size_t i = 0; i < cols_used.size(); ++i) local[cols_used[i]] = int(i);
    std::vector<SparseRow> sub;
    sub.reserve(rset.size());
    for (int r : rset) {
      SparseRow row = m.row(r);
      for (auto& e : row) e.col = local[e.col];
      sub.push_back(std::move(row));
    }
    detail::Eliminator el(std::move(sub), int(cols_used.size()), false);
    el.run();
    total += int(el.pivots.size());
  }
  return total;
}

inline int rank(const ExactMatrix& m) { return rank(SparseMatrix::from_dense(m)); }

/// Kernel vectors of M (M v = 0), one per free column in ascending column
/// order, each scaled so its first nonzero entry is 1.
inline std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& m) {
  std::vector<SparseRow> rows;
  rows.reserve(m.rows());
  for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  detail::Eliminator el(std::move(rows), m.cols(), true);
  el.run();
  std::vector<int> pivot_row_of(m.cols(), -1);
  for (const auto& [c, r] : el.pivots) pivot_row_of[c] = r;
  std::vector<std::vector<Scalar>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (pivot_row_of[f] >= 0) continue;
    std::vector<Scalar> v(m.cols());
    v[f] = Scalar(1);
    for (const auto& [c, r] : el.pivots) {
      const Scalar* entry = detail::row_find(el.rows[r], f);
      if (entry) v[c] -= *entry;
    }
    // normalize: first nonzero becomes 1
    for (auto& x : v) {
      if (!x.is_zero()) {
        if (x != Scalar(1)) {
          Scalar inv = Scalar(1) / x;
          for (auto& y : v) y *= inv;
        }
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& m) {
  return kernel_basis(SparseMatrix::from_dense(m));
}

/// Canonical reduced row echelon form: columns processed left to right,
/// pivots normalized to 1 and cleared above and below, pivot rows first.
inline ExactMatrix rref(const ExactMatrix& m) {
  std::vector<SparseRow> rows;
  for (int r = 0; r < m.rows(); ++r) {
    SparseRow row;
    for (int c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero()) row.push_back({c, m.at(r, c)});
    rows.push_back(std::move(row));
  }
  std::vector<int> order;  // resulting row order: pivot rows by pivot column
  std::vector<char> used(rows.size(), 0);
  for (int c = 0; c < m.cols(); ++c) {
    int piv = -1;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty()) continue;
      if (rows[r][0].col == c) {
        piv = int(r);
        break;
      }
    }
    if (piv < 0) continue;
    used[piv] = 1;
    order.push_back(piv);
    const Scalar pv = rows[piv][0].v;
    if (pv != Scalar(1)) {
      Scalar inv = Scalar(1) / pv;
      for (auto& e : rows[piv]) e.v *= inv;
    }
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == size_t(piv)) continue;
      const Scalar* a = detail::row_find(rows[r], c);
      if (a) rows[r] = detail::row_axpy(rows[r], *a, rows[piv]);
    }
  }
  ExactMatrix out(m.rows(), m.cols());
  int ri = 0;
  for (int r : order) {
    for (const auto& e : rows[r]) out.at(ri, e.col) = e.v;
    ++ri;
  }
  return out;
}

/// Incremental row span: rows are kept in echelon form keyed by leading
/// column, so membership tests and rank queries stay cheap while rows are
/// inserted one at a time.
class RowSpace {
 public:
  /// Reduce r against the stored rows; the returned residual is zero exactly
  /// when r lies in the span.
  SparseRow reduce(SparseRow r) const {
    while (!r.empty()) {
      auto it = rows_.find(r[0].col);
      if (it == rows_.end()) break;
      r = detail::row_axpy(r, r[0].v, it->second);
      detail::strip_content(r);
    }
    return r;
  }

  /// Insert a row; returns false when it was already in the span.
  bool insert(SparseRow r) {
    r = reduce(std::move(r));
    if (r.empty()) return false;
    Scalar inv = Scalar(1) / r[0].v;
    for (auto& e : r) e.v *= inv;
    rows_.emplace(r[0].col, std::move(r));
    return true;
  }

  int rank() const { return int(rows_.size()); }

 private:
  std::map<int, SparseRow> rows_;  // leading column -> normalized row
};

inline SparseRow dense_to_row(const std::vector<Scalar>& v) {
  SparseRow r;
  for (int i = 0; i < int(v.size()); ++i)
    if (!v[i].is_zero()) r.push_back({i, v[i]});
  return r;
}

}  // namespace kdirac
