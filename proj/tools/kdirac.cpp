// Command-line workbench: enumerative tables, structure checks for the
// graded algebra and its invariant fields, and the syzygy-driven discovery
// and verification of the operator complex on rectangular matrix space.

#include <algorithm>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kdirac/kdirac.hpp"

namespace {

using namespace kdirac;

long long to_ll(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("count does not fit a machine integer");
  return z.get_si();
}

std::string rat_str(const mpq_class& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

/// g_- basis element matching a coordinate index of the weighted table.
BlockElement gminus_element(const VarTable& vt, int g) {
  if (g < vt.nx()) return negative_one_basis(vt.k, vt.n)[g];
  return negative_two_basis(vt.k, vt.n)[g - vt.nx()];
}

/// Wraps one monomial word in the invariant fields as a scalar operator
/// that remembers its word, so it can be descended.
GradedOperator word_graded(const VarTable& vt, std::vector<int> gens) {
  std::vector<LWord> words{{ExactMatrix::identity(1), gens}};
  DiffOp op = words_to_op(vt, 1, 1, words);
  return GradedOperator{std::move(op), int(gens.size()), {{1, 0}}, {{1, 0}}, std::move(words)};
}

/// Constant-coefficient derivative along the flat coordinates of a word,
/// zero as soon as the word contains a grade -2 generator.
DiffOp flat_shadow(const VarTable& fvt, const std::vector<int>& gens) {
  DiffOp out(fvt, 1, 1);
  Mono deriv = zero_mono(fvt);
  for (int g : gens) {
    if (g >= fvt.nvars()) return out;  // grade -2 factor: shadow vanishes
    ++deriv[g];
  }
  out.add_term(zero_mono(fvt), deriv, ExactMatrix::identity(1));
  return out;
}

Report run_sk_table(int k, int n) {
  Report rep("sk-table", k, n);
  auto sk = enumerate_Sk(k, n);
  std::vector<std::vector<std::string>> data;
  for (int j = 0; j < int(sk.size()); ++j)
    for (const auto& a : sk[j]) {
      DiagramStats st = stats(a);
      data.push_back({std::to_string(j), a.str(), std::to_string(a.boxes()),
                      std::to_string(st.above), std::to_string(st.diag),
                      dim_W(a, k).get_str(), dim_V(a, k, n).get_str()});
    }
  rep.set_table({"grade", "partition", "boxes", "q", "diag", "dim_gl", "dim_module"},
                std::move(data));
  for (int j = 0; j < int(sk.size()); ++j)
    rep.add_check("grade_" + std::to_string(j) + "_nonempty", !sk[j].empty());
  if (n >= k && k >= 2) {
    bool orders_ok = true;
    for (const auto& cp : cover_pairs(k, n)) {
      if (cp.order < 1 || cp.order > 2) orders_ok = false;
      rep.add_note("cover " + cp.a.str() + " < " + cp.b.str() + " order " +
                   std::to_string(cp.order));
    }
    rep.add_check("cover_orders_in_1_2", orders_ok);
  } else {
    rep.add_note("cover pairs omitted outside the range n >= k >= 2");
  }
  return rep;
}

Report run_dims(int k, int n, int max_degree) {
  Report rep("dims", k, n);
  std::vector<std::string> hdr{"partition", "grade",      "q",
                               "diag",      "dim_gl",     "dim_module",
                               "eigenvalue"};
  for (int i = 0; i <= max_degree; ++i) hdr.push_back("jet" + std::to_string(i));
  std::vector<std::vector<std::string>> data;
  for (const auto& row : dims_table(k, n, max_degree)) {
    std::vector<std::string> r{row.a.str(),
                               std::to_string(row.grade),
                               std::to_string(row.q),
                               std::to_string(row.d),
                               row.dimW.get_str(),
                               row.dimV.get_str(),
                               rat_str(row.eigenvalue)};
    for (const auto& jd : row.jet_dims) r.push_back(jd.get_str());
    data.push_back(std::move(r));
  }
  rep.set_table(std::move(hdr), std::move(data));
  return rep;
}

Report run_verify_liealg(int k, int n) {
  Report rep("verify-liealg", k, n);
  BracketTable bt(k, n);
  rep.add_check("brackets_respect_grading", bt.grading_respected());
  rep.add_check("jacobi_all_basis_triples", bt.jacobi_holds());

  BlockElement E = grading_element(k, n);
  bool eigen_ok = true;
  for (const auto& b : bt.basis()) {
    BlockElement expect = b.el;
    expect.scale(Scalar(b.grade));
    if (!(bracket(E, b.el) == expect)) eigen_ok = false;
  }
  rep.add_check("grading_element_eigenvalues", eigen_ok);

  ExactMatrix h = gram_h(k, n);
  bool pres_ok = true;
  for (const auto& b : bt.basis())
    if (!preserves_h(b.el.assemble(), h)) pres_ok = false;
  rep.add_check("basis_preserves_form", pres_ok);

  auto xs = negative_one_basis(k, n);
  const int ydim = k * (k - 1) / 2;
  RowSpace span;
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j) {
      BlockElement br = bracket(xs[i], xs[j]);
      std::vector<Scalar> v;
      for (int r = 0; r < k; ++r)
        for (int s = r + 1; s < k; ++s) v.push_back(br.Y.at(r, s));
      span.insert(dense_to_row(v));
    }
  rep.add_check("negative_one_generates_negative_two", span.rank() == ydim);

  bool orth_ok = true;
  const auto& basis = bt.basis();
  for (const auto& a : basis)
    for (const auto& b : basis)
      if (a.grade + b.grade != 0 && !killing_pair(a.el, b.el).is_zero()) orth_ok = false;
  rep.add_check("trace_pairing_grading_orthogonal", orth_ok);

  bool nondeg_ok = true;
  for (int g = 1; g <= 2; ++g) {
    std::vector<const AlgebraBasisElement*> lo, hi;
    for (const auto& b : basis) {
      if (b.grade == -g) lo.push_back(&b);
      if (b.grade == g) hi.push_back(&b);
    }
    ExactMatrix gram(int(lo.size()), int(hi.size()));
    for (int i = 0; i < int(lo.size()); ++i)
      for (int j = 0; j < int(hi.size()); ++j) gram.at(i, j) = killing_pair(lo[i]->el, hi[j]->el);
    if (rank(gram) != int(lo.size())) nondeg_ok = false;
  }
  rep.add_check("trace_pairing_nondegenerate", nondeg_ok);
  return rep;
}

Report run_verify_fields(int k, int n) {
  Report rep("verify-fields", k, n);
  VarTable vt(k, n, true);
  const int nv = vt.nvars();
  std::vector<DiffOp> fields;
  for (int g = 0; g < nv; ++g) fields.push_back(invariant_field(vt, g));
  std::vector<BlockElement> elems;
  for (int g = 0; g < nv; ++g) elems.push_back(gminus_element(vt, g));

  bool compat = true;
  for (int a = 0; a < nv && compat; ++a)
    for (int b = a + 1; b < nv && compat; ++b) {
      DiffOp comm = fields[a].compose(fields[b]);
      DiffOp rev = fields[b].compose(fields[a]);
      rev.scale(Scalar(-1));
      comm += rev;

      BlockElement br = bracket(elems[a], elems[b]);
      DiffOp expect(vt, 1, 1);
      for (int g = 0; g < nv; ++g) {
        Scalar c = g < vt.nx() ? br.X.at(g / k, g % k) : [&] {
          int rem = g - vt.nx();
          for (int r = 1; r < k; ++r) {
            if (rem < k - r) return br.Y.at(r - 1, r + rem);
            rem -= k - r;
          }
          throw std::logic_error("bad generator index");
        }();
        if (c.is_zero()) continue;
        DiffOp f = fields[g];
        f.scale(c);
        expect += f;
      }
      if (!(comm == expect)) compat = false;
    }
  rep.add_check("commutators_match_brackets", compat);
  rep.add_note("bracket normalization constant 1 (commutator equals the bracket field exactly)");

  bool wh = true;
  for (int g = 0; g < nv && wh; ++g)
    if (!is_weighted_homogeneous(fields[g], vt.weight(g), 4)) wh = false;
  rep.add_check("fields_weighted_homogeneous", wh);
  return rep;
}

Report run_verify_descend(int k, int n, int max_degree) {
  Report rep("verify-descend", k, n);
  VarTable wvt(k, n, true);
  VarTable fvt(k, n, false);

  bool singles = true;
  for (int g = 0; g < wvt.nvars(); ++g)
    if (!(descend(word_graded(wvt, {g})).op == flat_shadow(fvt, {g}))) singles = false;
  rep.add_check("single_fields_descend_to_derivatives", singles);

  bool pairs = true;
  for (int a = 0; a < wvt.nvars() && pairs; ++a)
    for (int b = 0; b < wvt.nvars() && pairs; ++b) {
      GradedOperator w = compose(word_graded(wvt, {a}), word_graded(wvt, {b}));
      DiffOp expect = flat_shadow(fvt, {a}).compose(flat_shadow(fvt, {b}));
      if (!(descend(w).op == expect)) pairs = false;
    }
  rep.add_check("descend_of_composition_is_composition", pairs);

  GradedOperator A = build_D0_affine(k, n);
  GradedOperator F = build_D0_flat(k, n);
  rep.add_check("affine_operator_descends_to_flat", descend(A).op == F.op);

  bool commute = true;
  for (int d = 0; d <= max_degree && commute; ++d)
    for (const Mono& m : monomials_of_degree(fvt, d)) {
      for (int c = 0; c < F.src_dim() && commute; ++c) {
        Poly f(fvt, F.src_dim());
        f.add(m, c, Scalar(1));
        Poly lhs = A.op.apply(pullback_q(wvt, f));
        Poly rhs = pullback_q(wvt, F.op.apply(f));
        if (!(lhs == rhs)) commute = false;
      }
      if (!commute) break;
    }
  rep.add_check("affine_and_flat_agree_on_lifted_monomials", commute);
  return rep;
}

Report run_duality(int k, int n, int max_degree) {
  Report rep("duality", k, n);
  VarTable vt(k, n, true);
  bool cross_ok = true;
  for (int r = 1; r <= max_degree; ++r) {
    auto words = enveloping_words(vt, r);
    std::vector<DiffOp> ops;
    for (const auto& w : words) ops.push_back(word_operator(vt, w));
    for (int s = 1; s <= max_degree; ++s) {
      auto monos = monomials_of_weight(vt, s);
      ExactMatrix M(int(words.size()), int(monos.size()));
      for (int i = 0; i < int(M.rows()); ++i)
        for (int j = 0; j < int(M.cols()); ++j) {
          Poly f(vt, 1);
          f.add(monos[j], 0, Scalar(1));
          M.at(i, j) = pairing(ops[i], f);
        }
      if (r == s) {
        long dim = M.cols();
        long rk = rank(M);
        ReportRow row;
        row.k = k;
        row.n = n;
        row.spot = 0;
        row.degree = r;
        row.rank = rk;
        row.kernel_dim = dim - rk;
        row.predicted = dim;
        row.pass = rk == dim;
        row.extra = {{"dim", dim}};
        rep.add_row(std::move(row));
      } else if (!M.is_zero()) {
        cross_ok = false;
      }
    }
  }
  rep.add_check("cross_weight_pairings_vanish", cross_ok);
  rep.add_note("square pairing matrices per weight; rank equal to dim means invertible");
  return rep;
}

Report run_solution_dims(int k, int n, int max_degree, const MatrixCache* cache) {
  Report rep("solution-dims", k, n);
  OperatorStack st = initial_stack(k, n);
  for (const auto& r : solution_dims_cached(st, 0, max_degree, cache, &std::cerr)) {
    ReportRow row;
    row.k = k;
    row.n = n;
    row.spot = 0;
    row.degree = r.degree;
    row.rank = r.rank;
    row.kernel_dim = r.kernel;
    row.predicted = r.space_dim - r.rank;
    row.pass = r.kernel == r.space_dim - r.rank;
    row.extra = {{"space_dim", r.space_dim}};
    rep.add_row(std::move(row));
  }
  rep.add_note("kernel_dim from an explicit kernel basis; predicted from rank and slice size");
  return rep;
}

/// Discovery loop: search syzygies of the last operator degree by degree,
/// compare each count against the module-dimension prediction, stack the
/// found generators into the next operator, and finish with a buffer window
/// of empty degrees behind the last operator.
Report run_discover(int k, int n, int budget) {
  Report rep("discover", k, n);
  auto sk = enumerate_Sk(k, n);
  OperatorStack st = initial_stack(k, n);
  bool budget_hit = false;

  for (int module = 2; module < int(sk.size()); ++module) {
    const SymbolOp& L = st.ops.back();
    int qmin = min_q(L.tgt);
    int dmax = 0;
    for (const auto& a : sk[module]) dmax = std::max(dmax, stats(a).above + 1 - qmin);
    if (budget > 0 && dmax > budget) {
      dmax = budget;
      budget_hit = true;
    }
    SyzygySearch search(st);
    std::vector<GeneratorSet> sets;
    for (int d = 1; d <= dmax; ++d) {
      GeneratorSet gs = search.new_generators(d);
      long long pred = to_ll(predicted_new_generators(k, n, module, gs.t - 1));
      ReportRow row;
      row.k = k;
      row.n = n;
      row.spot = module;
      row.degree = d;
      row.rank = gs.syz_dim;
      row.kernel_dim = long(gs.vectors.size());
      row.predicted = pred;
      row.pass = long(gs.vectors.size()) == pred;
      row.extra = {{"multiples", gs.multiples_dim}, {"shift", gs.t}};
      rep.add_row(std::move(row));
      if (module == 2 && d == dmax && !gs.vectors.empty()) {
        ClosureReport cr = equivariance_closure(gs, k, n);
        rep.add_check("first_generator_space_closed_under_symmetries", cr.invariant);
      }
      if (!gs.vectors.empty()) sets.push_back(std::move(gs));
    }
    if (sets.empty()) {
      rep.add_note("no generators found for module " + std::to_string(module) +
                   " within the degree budget; stopping");
      break;
    }
    st.ops.push_back(assemble_operator(st, sets, "D" + std::to_string(st.ops.size())));
  }

  if (int(st.ops.size()) == int(sk.size()) - 1) {
    int wmax = budget > 0 ? std::min(budget, 3) : 3;
    if (budget > 0 && budget < 3) budget_hit = true;
    SyzygySearch tail(st);
    for (int d = 1; d <= wmax; ++d) {
      GeneratorSet gs = tail.new_generators(d);
      ReportRow row;
      row.k = k;
      row.n = n;
      row.spot = int(sk.size());
      row.degree = d;
      row.rank = gs.syz_dim;
      row.kernel_dim = long(gs.vectors.size());
      row.predicted = 0;
      row.pass = gs.vectors.empty();
      row.extra = {{"multiples", gs.multiples_dim}, {"shift", gs.t}};
      rep.add_row(std::move(row));
    }
    rep.add_note("no generators behind the last operator in the tested window of " +
                 std::to_string(wmax) + " degrees; absence beyond the window is not claimed");
  }
  if (budget_hit) rep.add_note("degree budget truncated the search");
  for (const auto& op : st.ops)
    rep.add_note("operator " + op.id + ": " + std::to_string(op.src_dim()) + " -> " +
                 std::to_string(op.tgt_dim()) + " components");
  return rep;
}

Report run_verify_complex(int k, int n, int max_degree, const MatrixCache* cache) {
  Report rep("verify-complex", k, n);
  auto sk = enumerate_Sk(k, n);
  OperatorStack st = initial_stack(k, n);
  for (int module = 2; module < int(sk.size()); ++module) {
    const SymbolOp& L = st.ops.back();
    int qmin = min_q(L.tgt);
    int dmax = 0;
    for (const auto& a : sk[module]) dmax = std::max(dmax, stats(a).above + 1 - qmin);
    SyzygySearch search(st);
    std::vector<GeneratorSet> sets;
    for (int d = 1; d <= dmax; ++d) {
      GeneratorSet gs = search.new_generators(d);
      if (!gs.vectors.empty()) sets.push_back(std::move(gs));
    }
    if (sets.empty()) throw std::runtime_error("verify-complex: discovery found no generators");
    st.ops.push_back(assemble_operator(st, sets, "D" + std::to_string(st.ops.size())));
  }
  rep.add_check("complex_has_expected_length", int(st.ops.size()) == int(sk.size()) - 1);
  rep.add_check("symbol_composites_vanish", composites_vanish(st));
  rep.add_check("operator_composites_vanish", composites_vanish_operators(st));

  for (int spot = 1; spot + 1 <= int(st.ops.size()); ++spot) {
    int hi = std::max(1, max_degree - (spot - 1));
    for (int d = 1; d <= hi; ++d) {
      ExactnessRow r = exactness_at_cached(st, spot, d, cache, &std::cerr);
      ReportRow row;
      row.k = k;
      row.n = n;
      row.spot = r.spot;
      row.degree = r.degree;
      row.rank = r.rank_in;
      row.kernel_dim = r.kernel_dim;
      row.predicted = r.rank_in;
      row.pass = r.pass;
      rep.add_row(std::move(row));
    }
  }
  rep.add_note("rank of the incoming slice map against the kernel of the outgoing one");
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for the graded operator complex on matrix space"};
  app.require_subcommand(1);
  app.fallthrough();

  int k = 2, n = 2, degree = 0, max_degree = -1;
  std::string format = "json", cache_dir;
  bool allow_unstable = false;
  app.add_option("--k", k, "number of columns of the matrix space")->check(CLI::PositiveNumber);
  app.add_option("--n", n, "half the number of rows")->check(CLI::PositiveNumber);
  app.add_option("--degree", degree, "maximum search degree for discover (0 = as predicted)");
  app.add_option("--max-degree", max_degree, "maximum degree for sweeps (command-specific default)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--cache", cache_dir, "matrix cache directory")->envname("KDIRAC_CACHE_DIR");
  app.add_flag("--allow-unstable-range", allow_unstable,
               "run outside the stable range n >= k >= 2");

  for (const char* name : {"sk-table", "dims", "verify-liealg", "verify-fields", "verify-descend",
                           "duality", "solution-dims", "discover", "verify-complex"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (!(n >= k && k >= 2) && !allow_unstable) {
    std::cerr << "error: (k,n)=(" << k << "," << n
              << ") is outside the stable range n >= k >= 2; pass --allow-unstable-range to "
                 "proceed\n";
    return 2;
  }

  std::unique_ptr<MatrixCache> cache;
  if (!cache_dir.empty()) cache = std::make_unique<MatrixCache>(cache_dir);

  auto md = [&](int dflt) { return max_degree >= 0 ? max_degree : dflt; };

  try {
    Report rep = [&]() -> Report {
      if (app.got_subcommand("sk-table")) return run_sk_table(k, n);
      if (app.got_subcommand("dims")) return run_dims(k, n, md(6));
      if (app.got_subcommand("verify-liealg")) return run_verify_liealg(k, n);
      if (app.got_subcommand("verify-fields")) return run_verify_fields(k, n);
      if (app.got_subcommand("verify-descend")) return run_verify_descend(k, n, md(4));
      if (app.got_subcommand("duality")) return run_duality(k, n, md(4));
      if (app.got_subcommand("solution-dims")) return run_solution_dims(k, n, md(3), cache.get());
      if (app.got_subcommand("discover")) return run_discover(k, n, degree);
      return run_verify_complex(k, n, md(5), cache.get());
    }();
    std::cout << (format == "json" ? rep.to_json() : rep.to_csv());
    return rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
