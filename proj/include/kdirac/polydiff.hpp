#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kdirac/matrix.hpp"

namespace kdirac {

/// Coordinate table for the nilpotent group side: x_{alpha,i} of weight 1
/// (alpha = 1..2n, i = 1..k) and, when with_y is set, y_{r,s} for r < s of
/// weight 2.  Variable order is x(1,1), x(1,2), ..., x(2n,k), then y(1,2),
/// y(1,3), ..., y(k-1,k).  Without y-variables the table describes the flat
/// coordinates.
struct VarTable {
  int k = 0, n = 0;
  bool with_y = false;

  VarTable() = default;
  VarTable(int k_, int n_, bool with_y_) : k(k_), n(n_), with_y(with_y_) {
    if (k_ < 1 || n_ < 1) throw std::invalid_argument("VarTable: need k, n >= 1");
  }

  int nx() const { return 2 * n * k; }
  int ny() const { return with_y ? k * (k - 1) / 2 : 0; }
  int nvars() const { return nx() + ny(); }

  int x_index(int alpha, int i) const {
    if (alpha < 1 || alpha > 2 * n || i < 1 || i > k)
      throw std::out_of_range("VarTable::x_index");
    return (alpha - 1) * k + (i - 1);
  }
  int y_index(int r, int s) const {
    if (!with_y || r < 1 || s <= r || s > k) throw std::out_of_range("VarTable::y_index");
    return nx() + (r - 1) * k - r * (r - 1) / 2 + (s - r - 1);
  }
  int weight(int v) const {
    if (v < 0 || v >= nvars()) throw std::out_of_range("VarTable::weight");
    return v < nx() ? 1 : 2;
  }
  std::string var_name(int v) const {
    if (v < nx()) {
      int alpha = v / k + 1, i = v % k + 1;
      return "x(" + std::to_string(alpha) + "," + std::to_string(i) + ")";
    }
    int rem = v - nx();
    for (int r = 1; r < k; ++r) {
      int cnt = k - r;
      if (rem < cnt) return "y(" + std::to_string(r) + "," + std::to_string(r + 1 + rem) + ")";
      rem -= cnt;
    }
    throw std::out_of_range("VarTable::var_name");
  }

  friend bool operator==(const VarTable& a, const VarTable& b) {
    return a.k == b.k && a.n == b.n && a.with_y == b.with_y;
  }
  friend bool operator!=(const VarTable& a, const VarTable& b) { return !(a == b); }
};

/// Exponent vector, one entry per variable of the owning table.
using Mono = std::vector<unsigned char>;

inline Mono zero_mono(const VarTable& vt) { return Mono(vt.nvars(), 0); }

inline Mono unit_mono(const VarTable& vt, int v) {
  Mono m = zero_mono(vt);
  m.at(v) = 1;
  return m;
}

inline int total_deg(const Mono& m) {
  int d = 0;
  for (unsigned char e : m) d += e;
  return d;
}

inline int wdeg(const VarTable& vt, const Mono& m) {
  int d = 0;
  for (int v = 0; v < int(m.size()); ++v) d += vt.weight(v) * m[v];
  return d;
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = (unsigned char)(a[i] + b[i]);
  return out;
}

/// Falling factorial prod_v nu_v (nu_v - 1) ... (nu_v - delta_v + 1); zero
/// when some delta_v exceeds nu_v.  This is the coefficient produced by
/// applying the derivative monomial delta to the monomial nu.
inline Scalar falling_factor(const Mono& nu, const Mono& delta) {
  long f = 1;
  for (size_t v = 0; v < nu.size(); ++v) {
    for (int t = 0; t < int(delta[v]); ++t) {
      int factor = int(nu[v]) - t;
      if (factor <= 0) return Scalar(0);
      f *= factor;
    }
  }
  return Scalar(f);
}

inline Scalar binom_factor(const Mono& beta, const Mono& gamma) {
  long b = 1;
  for (size_t v = 0; v < beta.size(); ++v) {
    long num = 1, den = 1;
    for (int t = 0; t < int(gamma[v]); ++t) {
      num *= int(beta[v]) - t;
      den *= t + 1;
    }
    b *= num / den;
  }
  return Scalar(b);
}

/// All monomials of the given weighted degree, ordered graded-
/// lexicographically with the earlier variable dominant and higher exponents
/// first.  This ordering indexes every matrix slice in the project.
inline std::vector<Mono> monomials_of_weight(const VarTable& vt, int w) {
  std::vector<Mono> out;
  if (w < 0) return out;
  Mono cur = zero_mono(vt);
  auto rec = [&](auto&& self, int v, int rem) -> void {
    if (v == vt.nvars()) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    int wt = vt.weight(v);
    for (int e = rem / wt; e >= 0; --e) {
      cur[v] = (unsigned char)e;
      self(self, v + 1, rem - e * wt);
    }
    cur[v] = 0;
  };
  rec(rec, 0, w);
  return out;
}

/// All monomials of the given ordinary total degree (every variable counted
/// once), in the same dominant-variable-first order.
inline std::vector<Mono> monomials_of_degree(const VarTable& vt, int d) {
  std::vector<Mono> out;
  if (d < 0) return out;
  Mono cur = zero_mono(vt);
  auto rec = [&](auto&& self, int v, int rem) -> void {
    if (v == vt.nvars()) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[v] = (unsigned char)e;
      self(self, v + 1, rem - e);
    }
    cur[v] = 0;
  };
  rec(rec, 0, d);
  return out;
}

inline std::map<Mono, int> index_of(const std::vector<Mono>& monos) {
  std::map<Mono, int> idx;
  for (int i = 0; i < int(monos.size()); ++i) idx.emplace(monos[i], i);
  return idx;
}

/// Dimension of the weight-r slice of the weighted polynomial algebra,
/// computed from the closed formula: sum over l of the number of degree-l
/// monomials in the k(k-1)/2 weight-2 variables times the number of
/// degree-(r-2l) monomials in the 2nk weight-1 variables.
inline mpz_class weighted_slice_dim_formula(int k, int n, int r);

/// Module-valued polynomial over a fixed variable table.
class Poly {
 public:
  Poly(const VarTable& vt, int dim) : vt_(vt), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("Poly: dimension must be positive");
  }

  const VarTable& table() const { return vt_; }
  int dim() const { return dim_; }

  void add(const Mono& m, int comp, const Scalar& c) {
    if (int(m.size()) != vt_.nvars()) throw std::invalid_argument("Poly::add: bad monomial width");
    if (comp < 0 || comp >= dim_) throw std::out_of_range("Poly::add: component");
    auto it = terms_.find(m);
    if (it == terms_.end()) it = terms_.emplace(m, std::vector<Scalar>(dim_)).first;
    it->second[comp] += c;
  }

  void add_vec(const Mono& m, const std::vector<Scalar>& v, const Scalar& c = Scalar(1)) {
    if (int(v.size()) != dim_) throw std::invalid_argument("Poly::add_vec: bad vector");
    for (int i = 0; i < dim_; ++i)
      if (!v[i].is_zero()) add(m, i, v[i] * c);
  }

  const std::map<Mono, std::vector<Scalar>>& terms() const { return terms_; }

  bool is_zero() const {
    for (const auto& [m, v] : terms_)
      for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
  }

  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      bool z = true;
      for (const auto& c : it->second)
        if (!c.is_zero()) {
          z = false;
          break;
        }
      it = z ? terms_.erase(it) : std::next(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    if (o.vt_ != vt_ || o.dim_ != dim_) throw std::invalid_argument("Poly::+=: mismatched polys");
    for (const auto& [m, v] : o.terms_)
      for (int i = 0; i < dim_; ++i)
        if (!v[i].is_zero()) add(m, i, v[i]);
    return *this;
  }

  void scale(const Scalar& s) {
    for (auto& [m, v] : terms_)
      for (auto& c : v) c *= s;
  }

  std::vector<Scalar> constant_term() const {
    auto it = terms_.find(Mono(vt_.nvars(), 0));
    if (it == terms_.end()) return std::vector<Scalar>(dim_);
    return it->second;
  }

  /// The weighted-degree-r homogeneous component.
  Poly wgrade_slice(int r) const {
    Poly out(vt_, dim_);
    for (const auto& [m, v] : terms_)
      if (wdeg(vt_, m) == r) out.terms_.emplace(m, v);
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.vt_ != b.vt_ || a.dim_ != b.dim_) return false;
    Poly d = a;
    Poly nb = b;
    nb.scale(Scalar(-1));
    d += nb;
    return d.is_zero();
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str() const {
    std::string s;
    for (const auto& [m, v] : terms_) {
      for (int i = 0; i < dim_; ++i) {
        if (v[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + v[i].str() + ")";
        for (int vv = 0; vv < int(m.size()); ++vv)
          if (m[vv]) {
            s += "*" + vt_.var_name(vv);
            if (m[vv] > 1) s += "^" + std::to_string(int(m[vv]));
          }
        if (dim_ > 1) s += "[e" + std::to_string(i) + "]";
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  VarTable vt_;
  int dim_;
  std::map<Mono, std::vector<Scalar>> terms_;
};

/// Polynomial-coefficient differential operator between module-valued
/// polynomial spaces over one variable table.  Terms are kept normal-ordered:
/// each is a matrix times a coefficient monomial times a derivative monomial,
/// with the derivative acting first only notationally -- application and
/// composition implement the Leibniz rule explicitly.
class DiffOp {
 public:
  DiffOp(const VarTable& vt, int src_dim, int tgt_dim)
      : vt_(vt), src_(src_dim), tgt_(tgt_dim) {
    if (src_dim < 1 || tgt_dim < 1) throw std::invalid_argument("DiffOp: bad dimensions");
  }

  const VarTable& table() const { return vt_; }
  int src_dim() const { return src_; }
  int tgt_dim() const { return tgt_; }

  std::string str() const {
    auto mono_str = [this](const Mono& m, const char* prefix) {
      std::string s;
      for (int v = 0; v < int(m.size()); ++v)
        if (m[v]) {
          s += std::string("*") + prefix + vt_.var_name(v);
          if (m[v] > 1) s += "^" + std::to_string(int(m[v]));
          if (prefix[0]) s += "]";
        }
      return s;
    };
    std::string s;
    for (const auto& [key, mat] : terms_)
      for (int r = 0; r < tgt_; ++r)
        for (int c = 0; c < src_; ++c) {
          if (mat.at(r, c).is_zero()) continue;
          if (!s.empty()) s += " + ";
          s += "(" + mat.at(r, c).str() + ")";
          if (tgt_ > 1 || src_ > 1)
            s += "[" + std::to_string(r) + "," + std::to_string(c) + "]";
          s += mono_str(key.second, "");
          s += mono_str(key.first, "d[");
        }
    return s.empty() ? "0" : s;
  }

  /// Accumulates mat * coeff * d^deriv into the operator.
  void add_term(const Mono& coeff, const Mono& deriv, const ExactMatrix& mat) {
    if (int(coeff.size()) != vt_.nvars() || int(deriv.size()) != vt_.nvars())
      throw std::invalid_argument("DiffOp::add_term: bad monomial width");
    if (mat.rows() != tgt_ || mat.cols() != src_)
      throw std::invalid_argument("DiffOp::add_term: bad matrix shape");
    auto key = std::make_pair(deriv, coeff);
    auto it = terms_.find(key);
    if (it == terms_.end())
      terms_.emplace(key, mat);
    else
      it->second += mat;
  }

  const std::map<std::pair<Mono, Mono>, ExactMatrix>& terms() const { return terms_; }

  Poly apply(const Poly& f) const {
    if (f.table() != vt_ || f.dim() != src_) throw std::invalid_argument("DiffOp::apply: mismatch");
    Poly out(vt_, tgt_);
    for (const auto& [key, mat] : terms_) {
      const auto& [deriv, coeff] = key;
      for (const auto& [nu, vec] : f.terms()) {
        Scalar fall = falling_factor(nu, deriv);
        if (fall.is_zero()) continue;
        Mono m(nu.size());
        for (size_t v = 0; v < nu.size(); ++v)
          m[v] = (unsigned char)(nu[v] - deriv[v] + coeff[v]);
        for (int r = 0; r < tgt_; ++r) {
          Scalar acc;
          for (int c = 0; c < src_; ++c)
            if (!mat.at(r, c).is_zero() && !vec[c].is_zero()) acc += mat.at(r, c) * vec[c];
          if (!acc.is_zero()) out.add(m, r, acc * fall);
        }
      }
    }
    out.prune();
    return out;
  }

  /// this after inner: (this . inner)(f) = this(inner(f)) for every f.
  /// Derivatives of the outer operator distribute over the inner coefficient
  /// monomials by the Leibniz rule.
  DiffOp compose(const DiffOp& inner) const {
    if (inner.vt_ != vt_ || inner.tgt_ != src_)
      throw std::invalid_argument("DiffOp::compose: mismatch");
    DiffOp out(vt_, inner.src_, tgt_);
    const int nv = vt_.nvars();
    for (const auto& [k2, m2] : terms_) {
      const auto& [beta, c2] = k2;
      for (const auto& [k1, m1] : inner.terms_) {
        const auto& [alpha, c1] = k1;
        ExactMatrix prod = m2 * m1;
        if (prod.is_zero()) continue;
        // enumerate gamma <= min(beta, c1) componentwise
        std::vector<int> vars;
        for (int v = 0; v < nv; ++v)
          if (beta[v] && c1[v]) vars.push_back(v);
        Mono gamma(nv, 0);
        auto rec = [&](auto&& self, size_t pos) -> void {
          if (pos == vars.size()) {
            Scalar f = binom_factor(beta, gamma) * falling_factor(c1, gamma);
            if (f.is_zero()) return;
            Mono coeff(nv), deriv(nv);
            for (int v = 0; v < nv; ++v) {
              coeff[v] = (unsigned char)(c2[v] + c1[v] - gamma[v]);
              deriv[v] = (unsigned char)(beta[v] - gamma[v] + alpha[v]);
            }
            ExactMatrix scaled = prod;
            scaled.scale(f);
            out.add_term(coeff, deriv, scaled);
            return;
          }
          int v = vars[pos];
          int top = std::min(int(beta[v]), int(c1[v]));
          for (int g = 0; g <= top; ++g) {
            gamma[v] = (unsigned char)g;
            self(self, pos + 1);
          }
          gamma[v] = 0;
        };
        rec(rec, 0);
      }
    }
    out.drop_zero_terms();
    return out;
  }

  DiffOp& operator+=(const DiffOp& o) {
    if (o.vt_ != vt_ || o.src_ != src_ || o.tgt_ != tgt_)
      throw std::invalid_argument("DiffOp::+=: mismatch");
    for (const auto& [key, mat] : o.terms_) add_term(key.second, key.first, mat);
    return *this;
  }

  void scale(const Scalar& s) {
    for (auto& [key, mat] : terms_) mat.scale(s);
  }

  void drop_zero_terms() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }

  bool is_zero() const {
    for (const auto& [key, mat] : terms_)
      if (!mat.is_zero()) return false;
    return true;
  }

  /// Net weighted degrees wdeg(deriv) - wdeg(coeff) over the nonzero terms.
  std::set<int> net_weights() const {
    std::set<int> ws;
    for (const auto& [key, mat] : terms_)
      if (!mat.is_zero()) ws.insert(wdeg(vt_, key.first) - wdeg(vt_, key.second));
    return ws;
  }

  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    if (a.vt_ != b.vt_ || a.src_ != b.src_ || a.tgt_ != b.tgt_) return false;
    DiffOp d = a;
    for (const auto& [key, mat] : b.terms_) {
      ExactMatrix neg = mat;
      neg.scale(Scalar(-1));
      d.add_term(key.second, key.first, neg);
    }
    return d.is_zero();
  }
  friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

 private:
  VarTable vt_;
  int src_, tgt_;
  std::map<std::pair<Mono, Mono>, ExactMatrix> terms_;  // key = (deriv, coeff)
};

inline DiffOp identity_op(const VarTable& vt, int dim) {
  DiffOp d(vt, dim, dim);
  d.add_term(zero_mono(vt), zero_mono(vt), ExactMatrix::identity(dim));
  return d;
}

/// Scalar coordinate field d/dy(r,s) with the antisymmetry convention
/// d/dy(s,r) = -d/dy(r,s) and d/dy(r,r) = 0.
inline DiffOp y_derivative(const VarTable& vt, int r, int s) {
  DiffOp d(vt, 1, 1);
  if (r == s) return d;
  Scalar sign(1);
  if (r > s) {
    std::swap(r, s);
    sign = Scalar(-1);
  }
  ExactMatrix m(1, 1);
  m.at(0, 0) = sign;
  d.add_term(zero_mono(vt), unit_mono(vt, vt.y_index(r, s)), m);
  return d;
}

/// Left-invariant extension of the grade -1 generator indexed by (alpha, i):
/// d/dx(alpha,i) - (1/2) sum_j x(alpha,j) d/dy(i,j).
inline DiffOp invariant_x_field(const VarTable& vt, int alpha, int i) {
  if (!vt.with_y) throw std::invalid_argument("invariant_x_field: needs y-variables");
  DiffOp d(vt, 1, 1);
  ExactMatrix one(1, 1);
  one.at(0, 0) = Scalar(1);
  d.add_term(zero_mono(vt), unit_mono(vt, vt.x_index(alpha, i)), one);
  const Scalar half = Scalar::from_parts(1, 2, 0, 1);
  for (int j = 1; j <= vt.k; ++j) {
    if (j == i) continue;
    // -1/2 x(alpha,j) d/dy(i,j); for j < i the y-index flip absorbs the sign
    ExactMatrix c(1, 1);
    c.at(0, 0) = (j > i) ? -half : half;
    int yv = (j > i) ? vt.y_index(i, j) : vt.y_index(j, i);
    d.add_term(unit_mono(vt, vt.x_index(alpha, j)), unit_mono(vt, yv), c);
  }
  return d;
}

/// Left-invariant extension of the grade -2 generator (r,s), r < s: the
/// coordinate field d/dy(r,s).
inline DiffOp invariant_y_field(const VarTable& vt, int r, int s) {
  if (!vt.with_y) throw std::invalid_argument("invariant_y_field: needs y-variables");
  if (!(1 <= r && r < s && s <= vt.k)) throw std::invalid_argument("invariant_y_field: need r < s");
  return y_derivative(vt, r, s);
}

/// Scalar invariant field for a grade -1 or -2 generator index: indices
/// 0..2nk-1 are the x-generators in variable order, the rest are the
/// y-generators in lexicographic (r,s) order.
inline DiffOp invariant_field(const VarTable& vt, int g) {
  if (g < 0 || g >= vt.nvars()) throw std::invalid_argument("invariant_field: bad generator");
  if (g < vt.nx()) return invariant_x_field(vt, g / vt.k + 1, g % vt.k + 1);
  int rem = g - vt.nx();
  for (int r = 1; r < vt.k; ++r) {
    int cnt = vt.k - r;
    if (rem < cnt) return invariant_y_field(vt, r, r + 1 + rem);
    rem -= cnt;
  }
  throw std::invalid_argument("invariant_field: bad generator");
}

/// Evaluation pairing (D f)(0) for a scalar operator and scalar polynomial.
inline Scalar pairing(const DiffOp& d, const Poly& f) {
  if (d.src_dim() != 1 || d.tgt_dim() != 1)
    throw std::invalid_argument("pairing: operator must be scalar");
  return d.apply(f).constant_term()[0];
}

/// View a polynomial in the flat coordinates as a polynomial on the group
/// side (same x-monomials, zero y-exponents).
inline Poly pullback_q(const VarTable& weighted, const Poly& flat) {
  if (flat.table().with_y) throw std::invalid_argument("pullback_q: input must be y-free");
  if (weighted.k != flat.table().k || weighted.n != flat.table().n || !weighted.with_y)
    throw std::invalid_argument("pullback_q: table mismatch");
  Poly out(weighted, flat.dim());
  for (const auto& [m, v] : flat.terms()) {
    Mono wm(weighted.nvars(), 0);
    std::copy(m.begin(), m.end(), wm.begin());
    out.add_vec(wm, v);
  }
  return out;
}

inline mpz_class weighted_slice_dim_formula(int k, int n, int r) {
  auto monos_in = [](long vars, long deg) -> mpz_class {
    if (deg < 0) return 0;
    if (vars == 0) return deg == 0 ? 1 : 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(vars + deg - 1),
                 static_cast<unsigned long>(deg));
    return b;
  };
  long g1 = 2L * n * k, g2 = k * (k - 1L) / 2;
  mpz_class total = 0;
  for (int l = 0; 2 * l <= r; ++l) total += monos_in(g2, l) * monos_in(g1, r - 2 * l);
  return total;
}

/// Whether d maps every weighted slice of weight w <= wmax into the slice of
/// weight w - r (checked by applying d to each monomial basis element).
inline bool is_weighted_homogeneous(const DiffOp& d, int r, int wmax) {
  const VarTable& vt = d.table();
  for (int w = 0; w <= wmax; ++w)
    for (const Mono& m : monomials_of_weight(vt, w))
      for (int c = 0; c < d.src_dim(); ++c) {
        Poly f(vt, d.src_dim());
        f.add(m, c, Scalar(1));
        Poly out = d.apply(f);
        for (const auto& [om, ov] : out.terms())
          for (const auto& s : ov)
            if (!s.is_zero() && wdeg(vt, om) != w - r) return false;
      }
  return true;
}

/// Normal-ordered monomial words in the invariant fields, one per weight-r
/// exponent vector: grade -1 factors first in variable order, grade -2
/// factors last.  The list order matches monomials_of_weight.
inline std::vector<std::vector<int>> enveloping_words(const VarTable& vt, int r) {
  std::vector<std::vector<int>> words;
  for (const Mono& m : monomials_of_weight(vt, r)) {
    std::vector<int> w;
    for (int v = 0; v < vt.nvars(); ++v)
      for (int t = 0; t < int(m[v]); ++t) w.push_back(v);
    words.push_back(std::move(w));
  }
  return words;
}

/// Composition of invariant fields along a word, leftmost factor outermost.
inline DiffOp word_operator(const VarTable& vt, const std::vector<int>& word) {
  DiffOp acc = identity_op(vt, 1);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    acc = invariant_field(vt, *it).compose(acc);
  return acc;
}

/// Pairing matrix between the weight-r enveloping words (rows) and the
/// weight-s monomials (columns).  Square when r == s; the duality statement
/// is that the square matrices are invertible and the off-diagonal blocks
/// vanish.
inline ExactMatrix duality_matrix(const VarTable& vt, int r, int s) {
  auto words = enveloping_words(vt, r);
  auto monos = monomials_of_weight(vt, s);
  ExactMatrix M(int(words.size()), int(monos.size()));
  for (int i = 0; i < int(words.size()); ++i) {
    DiffOp op = word_operator(vt, words[i]);
    for (int j = 0; j < int(monos.size()); ++j) {
      Poly f(vt, 1);
      f.add(monos[j], 0, Scalar(1));
      M.at(i, j) = pairing(op, f);
    }
  }
  return M;
}

}  // namespace kdirac
