#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdirac {

/// Integer partition: weakly decreasing nonnegative parts, trailing zeros
/// trimmed on construction.  The empty partition is valid.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  Partition(std::initializer_list<int> p) : parts(p) { trim(); }
  explicit Partition(std::vector<int> p) : parts(std::move(p)) { trim(); }

  void trim() {
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    for (size_t i = 0; i + 1 < parts.size(); ++i)
      if (parts[i] < parts[i + 1])
        throw std::invalid_argument("Partition: parts must be weakly decreasing");
    if (!parts.empty() && parts.back() < 0)
      throw std::invalid_argument("Partition: negative part");
  }

  int rows() const { return int(parts.size()); }
  int part(int i) const { return (i >= 0 && i < rows()) ? parts[i] : 0; }  // 0-based
  int boxes() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }

  Partition conjugate() const {
    std::vector<int> c;
    for (int j = 1; parts.size() && j <= parts[0]; ++j) {
      int cnt = 0;
      for (int p : parts)
        if (p >= j) ++cnt;
      c.push_back(cnt);
    }
    return Partition(std::move(c));
  }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts[i]);
    }
    return s + ")";
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts < b.parts; }
};

/// Box counts of a Young diagram relative to its main diagonal.
struct DiagramStats {
  int above;  ///< boxes strictly above the diagonal (column index > row index)
  int diag;   ///< boxes on the diagonal
  int grade;  ///< above + diag; the position of the module in the sequence
};

inline DiagramStats stats(const Partition& a) {
  DiagramStats s{0, 0, 0};
  for (int i = 1; i <= a.rows(); ++i) {
    int len = a.part(i - 1);
    if (len > i) s.above += len - i;
    if (len >= i) ++s.diag;
  }
  s.grade = s.above + s.diag;
  return s;
}

inline bool is_symmetric(const Partition& a) { return a.conjugate() == a; }

/// Componentwise order on diagrams: every row of a fits inside a2.
inline bool contained_in(const Partition& a, const Partition& a2) {
  int r = std::max(a.rows(), a2.rows());
  for (int i = 0; i < r; ++i)
    if (a.part(i) > a2.part(i)) return false;
  return true;
}

inline bool strictly_less(const Partition& a, const Partition& a2) {
  return a != a2 && contained_in(a, a2);
}

/// All symmetric diagrams with at most k rows and first row at most n,
/// grouped by grade; groups are indexed 0..max grade, each sorted
/// lexicographically.  Works for any k, n >= 1.
inline std::vector<std::vector<Partition>> enumerate_Sk(int k, int n) {
  if (k < 1 || n < 1) throw std::invalid_argument("enumerate_Sk: need k, n >= 1");
  std::vector<Partition> all;
  std::vector<int> cur;
  // weakly decreasing sequences, at most k parts, entries <= n
  auto rec = [&](auto&& self, int maxpart) -> void {
    Partition p{std::vector<int>(cur)};
    if (is_symmetric(p)) all.push_back(p);
    if (int(cur.size()) == k) return;
    for (int v = 1; v <= maxpart; ++v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  rec(rec, n);
  int maxg = 0;
  for (const auto& a : all) maxg = std::max(maxg, stats(a).grade);
  std::vector<std::vector<Partition>> out(maxg + 1);
  for (const auto& a : all) out[stats(a).grade].push_back(a);
  for (auto& g : out) std::sort(g.begin(), g.end());
  return out;
}

/// A pair a < a' in consecutive grades, with the order |a'| - |a| of the
/// operator the pair labels.
struct CoverPair {
  Partition a, b;
  int order;
};

inline std::vector<CoverPair> cover_pairs(int k, int n) {
  if (!(n >= k && k >= 2))
    throw std::invalid_argument("cover_pairs: requires n >= k >= 2 (stable range)");
  auto sk = enumerate_Sk(k, n);
  std::vector<CoverPair> out;
  for (size_t j = 0; j + 1 < sk.size(); ++j)
    for (const auto& a : sk[j])
      for (const auto& b : sk[j + 1])
        if (strictly_less(a, b)) out.push_back({a, b, b.boxes() - a.boxes()});
  return out;
}

/// Dimension of the irreducible GL(k) representation with highest weight a,
/// by the hook content formula.  Exact: the product is computed over Z and
/// the division is checked to be integral.
inline mpz_class dim_W(const Partition& a, int k) {
  if (a.rows() > k)
    throw std::invalid_argument("dim_W: partition has more than k nonzero parts");
  Partition conj = a.conjugate();
  mpz_class num = 1, den = 1;
  for (int i = 1; i <= a.rows(); ++i) {
    for (int j = 1; j <= a.part(i - 1); ++j) {
      num *= k + j - i;
      den *= a.part(i - 1) - j + conj.part(j - 1) - i + 1;
    }
  }
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (r != 0) throw std::logic_error("dim_W: hook content product not integral");
  return q;
}

/// Dimension of the module labeled by a: the GL(k) factor times the spinor
/// dimension 2^n.
inline mpz_class dim_V(const Partition& a, int k, int n) {
  return dim_W(a, k) << n;
}

/// Eigenvalue of the grading element on the module labeled by a.
inline mpq_class grading_eigenvalue(const Partition& a, int k, int n) {
  mpq_class e(k * (n - 1), 2);
  e.canonicalize();
  return e + a.boxes();
}

inline mpz_class binomial(long n, long r) {
  if (r < 0 || n < 0 || r > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return b;
}

/// Dimension of the degree-i slice of the shifted graded jets of the module
/// labeled by a on the flat side: polynomials of degree i - q(a) in 2nk
/// variables, valued in the module; zero below the shift.
inline mpz_class shifted_jet_dim(const Partition& a, int k, int n, int i) {
  int q = stats(a).above;
  int d = i - q;
  if (d < 0) return 0;
  return binomial(2 * n * k + d - 1, d) * dim_V(a, k, n);
}

/// One row of the dimension table.
struct DimsRow {
  Partition a;
  int grade, q, d;
  mpz_class dimW, dimV;
  mpq_class eigenvalue;
  std::vector<mpz_class> jet_dims;  // index i = 0..max_degree
};

inline std::vector<DimsRow> dims_table(int k, int n, int max_degree) {
  std::vector<DimsRow> out;
  for (const auto& group : enumerate_Sk(k, n))
    for (const auto& a : group) {
      DimsRow row;
      row.a = a;
      DiagramStats st = stats(a);
      row.grade = st.grade;
      row.q = st.above;
      row.d = st.diag;
      row.dimW = dim_W(a, k);
      row.dimV = dim_V(a, k, n);
      row.eigenvalue = grading_eigenvalue(a, k, n);
      for (int i = 0; i <= max_degree; ++i) row.jet_dims.push_back(shifted_jet_dim(a, k, n, i));
      out.push_back(std::move(row));
    }
  return out;
}

}  // namespace kdirac
