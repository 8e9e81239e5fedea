#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kdirac/dirac.hpp"
#include "kdirac/partitions.hpp"

namespace kdirac {

/// Scalar polynomial in the dual (symbol) variables, sparse by exponent
/// vector over the flat table.
using SPoly = std::map<Mono, Scalar>;

/// Constant-coefficient operator stored through its symbol: a matrix of
/// homogeneous polynomials in the dual variables, one per flat coordinate,
/// with per-summand shifts.  The nonzero part of entry (r, c) is homogeneous
/// of degree q_row - q_col + 1: in the shifted grading every operator of the
/// complex has order one.
struct SymbolOp {
  std::string id;  ///< stable name ("D0", "D1", ...) for reports and cache keys
  VarTable vt;     ///< flat table
  std::vector<Summand> src, tgt;
  std::vector<std::vector<SPoly>> entry;  ///< [row][col]

  int src_dim() const { return total_dim(src); }
  int tgt_dim() const { return total_dim(tgt); }
};

inline int q_at(const std::vector<Summand>& blocks, int global) {
  for (const auto& b : blocks) {
    if (global < b.dim) return b.q;
    global -= b.dim;
  }
  throw std::out_of_range("q_at");
}

inline int min_q(const std::vector<Summand>& blocks) {
  int m = blocks.at(0).q;
  for (const auto& b : blocks) m = std::min(m, b.q);
  return m;
}

/// Extract the symbol of a flat constant-coefficient operator.
inline SymbolOp symbol_of(const GradedOperator& d, std::string id) {
  const VarTable& vt = d.op.table();
  if (vt.with_y) throw std::invalid_argument("symbol_of: operator must be in flat coordinates");
  SymbolOp s{std::move(id), vt, d.src, d.tgt,
             std::vector<std::vector<SPoly>>(d.op.tgt_dim(), std::vector<SPoly>(d.op.src_dim()))};
  for (const auto& [key, mat] : d.op.terms()) {
    const auto& [deriv, coeff] = key;
    if (total_deg(coeff) != 0)
      throw std::invalid_argument("symbol_of: operator has non-constant coefficients");
    for (int r = 0; r < mat.rows(); ++r)
      for (int c = 0; c < mat.cols(); ++c)
        if (!mat.at(r, c).is_zero()) s.entry[r][c][deriv] += mat.at(r, c);
  }
  for (auto& row : s.entry)
    for (auto& e : row)
      for (auto it = e.begin(); it != e.end();)
        it = it->second.is_zero() ? e.erase(it) : std::next(it);
  return s;
}

/// Rebuild the differential operator from its symbol.
inline GradedOperator operator_of(const SymbolOp& s) {
  DiffOp op(s.vt, s.src_dim(), s.tgt_dim());
  std::map<Mono, ExactMatrix> by_deriv;
  for (int r = 0; r < s.tgt_dim(); ++r)
    for (int c = 0; c < s.src_dim(); ++c)
      for (const auto& [m, v] : s.entry[r][c]) {
        auto it = by_deriv.find(m);
        if (it == by_deriv.end())
          it = by_deriv.emplace(m, ExactMatrix(s.tgt_dim(), s.src_dim())).first;
        it->second.at(r, c) += v;
      }
  for (const auto& [m, mat] : by_deriv) op.add_term(zero_mono(s.vt), m, mat);
  int order = 0;
  for (const auto& [m, mat] : by_deriv) order = std::max(order, total_deg(m));
  return GradedOperator{std::move(op), order, s.src, s.tgt, {}};
}

/// The complex under construction: symbols of the operators found so far,
/// starting from the first-order operator.
struct OperatorStack {
  int k = 0, n = 0;
  std::vector<SymbolOp> ops;
};

inline OperatorStack initial_stack(int k, int n) {
  OperatorStack st{k, n, {}};
  st.ops.push_back(symbol_of(build_D0_flat(k, n), "D0"));
  return st;
}

/// Basis layout of a shifted-degree-t polynomial slice of a summand list:
/// summand b contributes the monomials of degree t - q_b (none when that is
/// negative), indexed monomial-major then component within the summand.
struct SliceLayout {
  std::vector<std::vector<Mono>> monos;      ///< per summand
  std::vector<std::map<Mono, int>> indices;  ///< per summand
  std::vector<int> offsets;                  ///< per summand, into the flat index
  int total = 0;
};

inline SliceLayout slice_layout(const VarTable& vt, const std::vector<Summand>& blocks, int t) {
  SliceLayout L;
  for (const auto& b : blocks) {
    L.offsets.push_back(L.total);
    auto ms = monomials_of_degree(vt, t - b.q);
    L.indices.push_back(index_of(ms));
    L.total += int(ms.size()) * b.dim;
    L.monos.push_back(std::move(ms));
  }
  return L;
}

/// Matrix of the operator from the shifted-degree-t slice of its source to
/// the shifted-degree-(t-1) slice of its target; the symbol acts by
/// differentiation.
inline SparseMatrix symbol_gr_matrix(const SymbolOp& op, int t) {
  SliceLayout S = slice_layout(op.vt, op.src, t);
  SliceLayout T = slice_layout(op.vt, op.tgt, t - 1);
  SparseMatrix M(T.total, S.total);
  const int nv = op.vt.nvars();
  // global module index offsets per summand
  std::vector<int> smod{0}, tmod{0};
  for (const auto& b : op.src) smod.push_back(smod.back() + b.dim);
  for (const auto& b : op.tgt) tmod.push_back(tmod.back() + b.dim);
  for (int sb = 0; sb < int(op.src.size()); ++sb)
    for (int mi = 0; mi < int(S.monos[sb].size()); ++mi) {
      const Mono& mu = S.monos[sb][mi];
      for (int c = 0; c < op.src[sb].dim; ++c) {
        const int col = S.offsets[sb] + mi * op.src[sb].dim + c;
        const int gcol = smod[sb] + c;
        for (int tb = 0; tb < int(op.tgt.size()); ++tb)
          for (int r = 0; r < op.tgt[tb].dim; ++r) {
            const SPoly& e = op.entry[tmod[tb] + r][gcol];
            for (const auto& [nu, a] : e) {
              Scalar fall = falling_factor(mu, nu);
              if (fall.is_zero()) continue;
              Mono m(nv);
              for (int v = 0; v < nv; ++v) m[v] = (unsigned char)(mu[v] - nu[v]);
              auto it = T.indices[tb].find(m);
              if (it == T.indices[tb].end())
                throw std::logic_error("symbol_gr_matrix: image leaves the target slice");
              M.add(T.offsets[tb] + it->second * op.tgt[tb].dim + r, col, a * fall);
            }
          }
      }
    }
  M.finalize();
  return M;
}

/// One degree of the syzygy filtration of the last operator of a stack: all
/// row relations Q with Q * symbol = 0 whose components have degree t - q_b
/// on the summand of shift q_b.
struct SyzSpace {
  int t = 0;
  SliceLayout layout;                        ///< unknown layout over the last target
  std::vector<std::vector<Scalar>> vectors;  ///< kernel basis, dense in the layout
};

/// Generators found at one search degree: the part of the syzygy space not
/// spanned by coordinate multiples of lower-degree syzygies.
struct GeneratorSet {
  int degree = 0;  ///< search degree d, relative to the minimal shift
  int t = 0;       ///< shifted parameter d + min q
  std::vector<Summand> blocks;
  SliceLayout layout;
  std::vector<std::vector<Scalar>> vectors;
  int syz_dim = 0;
  int multiples_dim = 0;
};

/// Incremental syzygy search against the last operator of a fixed stack.
/// Degrees are explored in increasing order; lower-degree syzygy spaces are
/// kept so that "new at degree d" means new modulo coordinate multiples.
class SyzygySearch {
 public:
  explicit SyzygySearch(const OperatorStack& st) : st_(st) {
    if (st_.ops.empty()) throw std::invalid_argument("SyzygySearch: empty stack");
  }

  const SymbolOp& last() const { return st_.ops.back(); }

  /// All syzygies at search degree d (d >= 0).
  const SyzSpace& syzygies(int d) {
    ensure(d);
    return spaces_[d];
  }

  GeneratorSet new_generators(int d) {
    if (d < 1) throw std::invalid_argument("new_generators: degree must be >= 1");
    ensure(d);
    const SymbolOp& L = last();
    const int qmin = min_q(L.tgt);
    const SyzSpace& cur = spaces_[d];
    const SyzSpace& prev = spaces_[d - 1];
    RowSpace span;
    int mult = 0;
    for (const auto& v : prev.vectors)
      for (int g = 0; g < L.vt.nvars(); ++g)
        if (span.insert(shift_vector(prev, cur, v, g))) ++mult;
    GeneratorSet out{d, d + qmin, L.tgt, cur.layout, {}, int(cur.vectors.size()), mult};
    for (const auto& v : cur.vectors)
      if (span.insert(dense_to_row(v))) out.vectors.push_back(v);
    return out;
  }

 private:
  void ensure(int d) {
    for (int t = int(spaces_.size()); t <= d; ++t) spaces_.push_back(compute(t));
  }

  /// Unknowns: coefficients of Q in the degree-d layout over the last
  /// target.  Constraints: for every source coordinate of the last operator
  /// and every monomial of the product degree, the coefficient of that
  /// monomial in Q * symbol vanishes.  Syzygies are the kernel.
  SyzSpace compute(int d) {
    const SymbolOp& L = last();
    const int qmin = min_q(L.tgt);
    const int t = d + qmin;
    SyzSpace sp;
    sp.t = t;
    sp.layout = slice_layout(L.vt, L.tgt, t);
    SliceLayout C = slice_layout(L.vt, L.src, t + 1);
    std::vector<int> smod{0}, tmod{0};
    for (const auto& b : L.src) smod.push_back(smod.back() + b.dim);
    for (const auto& b : L.tgt) tmod.push_back(tmod.back() + b.dim);
    SparseMatrix M(C.total, sp.layout.total);
    for (int b = 0; b < int(L.tgt.size()); ++b)
      for (int mi = 0; mi < int(sp.layout.monos[b].size()); ++mi) {
        const Mono& mu = sp.layout.monos[b][mi];
        for (int r = 0; r < L.tgt[b].dim; ++r) {
          const int col = sp.layout.offsets[b] + mi * L.tgt[b].dim + r;
          const int grow = tmod[b] + r;
          for (int cb = 0; cb < int(L.src.size()); ++cb)
            for (int cc = 0; cc < L.src[cb].dim; ++cc) {
              const SPoly& e = L.entry[grow][smod[cb] + cc];
              for (const auto& [nu, a] : e) {
                Mono kappa = mono_mul(mu, nu);
                auto it = C.indices[cb].find(kappa);
                if (it == C.indices[cb].end())
                  throw std::logic_error("syzygy constraints: unexpected product degree");
                M.add(C.offsets[cb] + it->second * L.src[cb].dim + cc, col, a);
              }
            }
        }
      }
    M.finalize();
    sp.vectors = kernel_basis(M);
    return sp;
  }

  /// Multiply a degree-(d-1) syzygy by the coordinate with index g, read off
  /// in the degree-d layout.
  SparseRow shift_vector(const SyzSpace& prev, const SyzSpace& cur,
                         const std::vector<Scalar>& v, int g) const {
    const SymbolOp& L = last();
    SparseRow out;
    for (int b = 0; b < int(L.tgt.size()); ++b) {
      const int dim = L.tgt[b].dim;
      for (int mi = 0; mi < int(prev.layout.monos[b].size()); ++mi) {
        Mono m = prev.layout.monos[b][mi];
        ++m[g];
        const int ni = cur.layout.indices[b].at(m);
        for (int r = 0; r < dim; ++r) {
          const Scalar& c = v[prev.layout.offsets[b] + mi * dim + r];
          if (!c.is_zero()) out.push_back({cur.layout.offsets[b] + ni * dim + r, c});
        }
      }
    }
    std::sort(out.begin(), out.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    return out;
  }

  OperatorStack st_;
  std::vector<SyzSpace> spaces_;
};

/// Convenience wrapper recomputing the filtration from scratch.
inline GeneratorSet new_generators(const OperatorStack& st, int d) {
  SyzygySearch s(st);
  return s.new_generators(d);
}

/// Stack the generator rows (possibly from several degrees, ascending) into
/// the next operator of the complex.  The sets' source layout must be the
/// last operator's target; the new operator's summands get shift t - 1, so
/// it again has order one in the shifted grading.
inline SymbolOp assemble_operator(const OperatorStack& st, const std::vector<GeneratorSet>& sets,
                                  std::string id) {
  if (st.ops.empty()) throw std::invalid_argument("assemble_operator: empty stack");
  const SymbolOp& L = st.ops.back();
  int rows = 0;
  for (const auto& s : sets) rows += int(s.vectors.size());
  if (rows == 0) throw std::invalid_argument("assemble_operator: no generators");
  SymbolOp out{std::move(id), L.vt, L.tgt, {},
               std::vector<std::vector<SPoly>>(rows, std::vector<SPoly>(L.tgt_dim()))};
  std::vector<int> tmod{0};
  for (const auto& b : L.tgt) tmod.push_back(tmod.back() + b.dim);
  int row = 0;
  int last_deg = -1;
  for (const auto& s : sets) {
    if (s.vectors.empty()) continue;
    if (s.degree <= last_deg)
      throw std::invalid_argument("assemble_operator: sets must come in increasing degree");
    last_deg = s.degree;
    out.tgt.push_back({int(s.vectors.size()), s.t - 1});
    for (const auto& v : s.vectors) {
      for (int b = 0; b < int(L.tgt.size()); ++b) {
        const int dim = L.tgt[b].dim;
        for (int mi = 0; mi < int(s.layout.monos[b].size()); ++mi)
          for (int r = 0; r < dim; ++r) {
            const Scalar& c = v[s.layout.offsets[b] + mi * dim + r];
            if (!c.is_zero()) out.entry[row][tmod[b] + r][s.layout.monos[b][mi]] += c;
          }
      }
      ++row;
    }
  }
  return out;
}

/// Symbol-level product of consecutive operators; the complex property is
/// that every product is identically zero.
inline bool composites_vanish(const OperatorStack& st) {
  for (size_t j = 0; j + 1 < st.ops.size(); ++j) {
    const SymbolOp& a = st.ops[j + 1];
    const SymbolOp& b = st.ops[j];
    for (int r = 0; r < a.tgt_dim(); ++r)
      for (int c = 0; c < b.src_dim(); ++c) {
        SPoly acc;
        for (int m = 0; m < a.src_dim(); ++m)
          for (const auto& [m1, c1] : a.entry[r][m])
            for (const auto& [m2, c2] : b.entry[m][c]) acc[mono_mul(m1, m2)] += c1 * c2;
        for (const auto& [mm, cc] : acc)
          if (!cc.is_zero()) return false;
      }
  }
  return true;
}

/// Same check at the operator level, through the Leibniz composition.
inline bool composites_vanish_operators(const OperatorStack& st) {
  for (size_t j = 0; j + 1 < st.ops.size(); ++j) {
    GradedOperator a = operator_of(st.ops[j + 1]);
    GradedOperator b = operator_of(st.ops[j]);
    if (!a.op.compose(b.op).is_zero()) return false;
  }
  return true;
}

struct ExactnessRow {
  int spot = 0, degree = 0;
  long rank_in = 0, kernel_dim = 0;
  bool pass = false;
};

/// Degree-by-degree exactness at an interior spot: the rank of the incoming
/// operator into a slice must equal the kernel dimension of the outgoing
/// operator on it.  Containment of the image in the kernel is the composite-
/// zero identity, so equality of dimensions is exactness of the slice.
inline ExactnessRow exactness_at(const OperatorStack& st, int spot, int degree) {
  if (spot < 1 || spot + 1 > int(st.ops.size()))
    throw std::invalid_argument("exactness_at: spot out of range");
  const SymbolOp& din = st.ops[spot - 1];
  const SymbolOp& dout = st.ops[spot];
  const int i = degree + min_q(dout.src);
  SparseMatrix m_out = symbol_gr_matrix(dout, i);
  SparseMatrix m_in = symbol_gr_matrix(din, i + 1);
  long rk_in = rank(m_in);
  long ker = long(m_out.cols()) - rank(m_out);
  return {spot, degree, rk_in, ker, rk_in == ker};
}

inline std::vector<ExactnessRow> verify_exactness(const OperatorStack& st, int spot, int dlo,
                                                  int dhi) {
  std::vector<ExactnessRow> rows;
  for (int d = dlo; d <= dhi; ++d) rows.push_back(exactness_at(st, spot, d));
  return rows;
}

struct SolutionRow {
  int degree = 0;
  long space_dim = 0, rank = 0, kernel = 0;
};

/// Kernel dimensions of the first operator on ordinary-degree slices: the
/// homogeneous polynomial solutions.
inline std::vector<SolutionRow> solution_dims(const OperatorStack& st, int dlo, int dhi) {
  std::vector<SolutionRow> rows;
  for (int d = dlo; d <= dhi; ++d) {
    SparseMatrix m = symbol_gr_matrix(st.ops.at(0), d);
    long rk = rank(m);
    rows.push_back({d, m.cols(), rk, m.cols() - rk});
  }
  return rows;
}

/// Predicted number of new generators: the total dimension of the summands
/// of the next module whose shift matches the search parameter.
inline mpz_class predicted_new_generators(int k, int n, int next_module, int q_new) {
  auto sk = enumerate_Sk(k, n);
  if (next_module < 0 || next_module >= int(sk.size())) return 0;
  mpz_class total = 0;
  for (const auto& a : sk[next_module])
    if (stats(a).above == q_new) total += dim_V(a, k, n);
  return total;
}

struct ClosureReport {
  bool invariant = false;
  int span_rank = 0;
  std::vector<std::string> failing;  ///< names of algebra generators that leave the span
};

/// Whether the span of the generator rows is preserved by the natural
/// action: the general linear factor acts on the dual variables through
/// right multiplication on the matrix variable and on the k-tuple factor by
/// the dual representation; the orthogonal factor rotates the dual variables
/// and acts on spinors through the quadratic elements -gamma_a gamma_b / 2.
inline ClosureReport equivariance_closure(const GeneratorSet& gens, int k, int n) {
  if (gens.blocks.size() != 1)
    throw std::invalid_argument("equivariance_closure: expected a single-summand source");
  SpinorSpace sp(n);
  const int sd = sp.dim();
  if (gens.blocks[0].dim != k * sd)
    throw std::invalid_argument("equivariance_closure: generators are not rows over the k-tuple module");
  VarTable vt(k, n, false);
  const int nv = vt.nvars(), dim = k * sd;
  const auto& monos = gens.layout.monos[0];
  const auto& midx = gens.layout.indices[0];

  RowSpace span;
  for (const auto& v : gens.vectors) span.insert(dense_to_row(v));

  // one action: xi-variable derivation matrix (var -> linear combination)
  // plus module matrix on the k-tuple of spinors
  struct Action {
    std::string name;
    std::vector<std::vector<std::pair<int, Scalar>>> xi;  // xi[v] = image terms of variable v
    ExactMatrix rho;                                      // dim x dim
  };
  std::vector<Action> actions;
  const Scalar one(1), half = Scalar::from_parts(1, 2, 0, 1);
  for (int a = 1; a <= k; ++a)
    for (int b = 1; b <= k; ++b) {
      Action act{"gl:E(" + std::to_string(a) + "," + std::to_string(b) + ")",
                 std::vector<std::vector<std::pair<int, Scalar>>>(nv), ExactMatrix(dim, dim)};
      for (int alpha = 1; alpha <= 2 * n; ++alpha)
        act.xi[vt.x_index(alpha, b)].push_back({vt.x_index(alpha, a), one});
      for (int s = 0; s < sd; ++s) act.rho.at((b - 1) * sd + s, (a - 1) * sd + s) = -one;
      actions.push_back(std::move(act));
    }
  for (int alpha = 1; alpha <= 2 * n; ++alpha)
    for (int beta = alpha + 1; beta <= 2 * n; ++beta) {
      Action act{"so:R(" + std::to_string(alpha) + "," + std::to_string(beta) + ")",
                 std::vector<std::vector<std::pair<int, Scalar>>>(nv), ExactMatrix(dim, dim)};
      for (int i = 1; i <= k; ++i) {
        act.xi[vt.x_index(beta, i)].push_back({vt.x_index(alpha, i), one});
        act.xi[vt.x_index(alpha, i)].push_back({vt.x_index(beta, i), -one});
      }
      ExactMatrix gg = sp.gamma(alpha) * sp.gamma(beta);
      gg.scale(-half);
      for (int i = 0; i < k; ++i)
        for (int r = 0; r < sd; ++r)
          for (int c = 0; c < sd; ++c) act.rho.at(i * sd + r, i * sd + c) = gg.at(r, c);
      actions.push_back(std::move(act));
    }

  ClosureReport rep;
  rep.span_rank = span.rank();
  for (const auto& act : actions) {
    bool ok = true;
    for (const auto& v : gens.vectors) {
      // transformed row: derivation on the polynomial part minus the right
      // module action on the coefficient index
      std::vector<Scalar> tv(v.size());
      for (int mi = 0; mi < int(monos.size()); ++mi) {
        const Mono& mu = monos[mi];
        for (int c = 0; c < dim; ++c) {
          const Scalar& q = v[size_t(mi) * dim + c];
          if (q.is_zero()) continue;
          for (int var = 0; var < nv; ++var) {
            if (!mu[var]) continue;
            for (const auto& [u, coef] : act.xi[var]) {
              Mono m = mu;
              --m[var];
              ++m[u];
              tv[size_t(midx.at(m)) * dim + c] += q * coef * Scalar(int(mu[var]));
            }
          }
          for (int c2 = 0; c2 < dim; ++c2) {
            const Scalar& r = act.rho.at(c, c2);
            if (!r.is_zero()) tv[size_t(mi) * dim + c2] -= q * r;
          }
        }
      }
      if (!span.reduce(dense_to_row(tv)).empty()) {
        ok = false;
        break;
      }
    }
    if (!ok) rep.failing.push_back(act.name);
  }
  rep.invariant = rep.failing.empty();
  return rep;
}

}  // namespace kdirac
