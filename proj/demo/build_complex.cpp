// Builds the whole operator complex at k = n = 2 from scratch and prints
// what the machinery sees at each step: the module ladder, the syzygy
// counts per degree, and the exactness of a few graded slices.

#include <iostream>

#include "kdirac/kdirac.hpp"

using namespace kdirac;

int main() {
  const int k = 2, n = 2;

  auto sk = enumerate_Sk(k, n);
  std::cout << "module ladder (symmetric diagrams by grade):\n";
  for (int j = 0; j < int(sk.size()); ++j) {
    std::cout << "  grade " << j << ":";
    for (const auto& a : sk[j])
      std::cout << " " << a.str() << " dim " << dim_V(a, k, n).get_str();
    std::cout << "\n";
  }

  OperatorStack st = initial_stack(k, n);
  std::cout << "\nstarting from the first-order operator "
            << st.ops[0].src_dim() << " -> " << st.ops[0].tgt_dim() << "\n";

  for (int module = 2; module < int(sk.size()); ++module) {
    SyzygySearch search(st);
    std::vector<GeneratorSet> sets;
    int qmin = min_q(st.ops.back().tgt);
    int dmax = 0;
    for (const auto& a : sk[module]) dmax = std::max(dmax, stats(a).above + 1 - qmin);
    for (int d = 1; d <= dmax; ++d) {
      GeneratorSet gs = search.new_generators(d);
      std::cout << "  module " << module << ", degree " << d << ": syzygy space "
                << gs.syz_dim << ", coordinate multiples " << gs.multiples_dim
                << ", new generators " << gs.vectors.size() << " (predicted "
                << predicted_new_generators(k, n, module, gs.t - 1).get_str() << ")\n";
      if (!gs.vectors.empty()) sets.push_back(std::move(gs));
    }
    st.ops.push_back(assemble_operator(st, sets, "D" + std::to_string(st.ops.size())));
    const SymbolOp& d = st.ops.back();
    std::cout << "assembled " << d.id << ": " << d.src_dim() << " -> " << d.tgt_dim() << "\n";
  }

  std::cout << "\nsymbol composites vanish: " << (composites_vanish(st) ? "yes" : "no") << "\n";
  std::cout << "operator composites vanish: "
            << (composites_vanish_operators(st) ? "yes" : "no") << "\n";

  std::cout << "\nexactness of graded slices:\n";
  for (int spot = 1; spot + 1 <= int(st.ops.size()); ++spot)
    for (int d = 1; d <= 3; ++d) {
      ExactnessRow r = exactness_at(st, spot, d);
      std::cout << "  spot " << r.spot << ", degree " << r.degree << ": incoming rank "
                << r.rank_in << ", outgoing kernel " << r.kernel_dim << " -> "
                << (r.pass ? "exact" : "NOT exact") << "\n";
    }

  std::cout << "\npolynomial solutions of the first operator:\n";
  for (const auto& r : solution_dims(st, 0, 3))
    std::cout << "  degree " << r.degree << ": " << r.kernel << " of " << r.space_dim << "\n";
  return 0;
}
