// Shows the left-invariant vector fields on the nilpotent side at k = n = 2:
// their coordinate expressions, the commutator identity that pins the
// bracket normalization, and the duality between enveloping words and
// weighted polynomials.

#include <iostream>

#include "kdirac/kdirac.hpp"

using namespace kdirac;

int main() {
  const int k = 2, n = 2;
  VarTable vt(k, n, true);

  std::cout << "coordinates:";
  for (int v = 0; v < vt.nvars(); ++v) std::cout << " " << vt.var_name(v);
  std::cout << "\n\ninvariant fields (grade -1 then grade -2):\n";
  for (int v = 0; v < vt.nvars(); ++v)
    std::cout << "  L[" << vt.var_name(v) << "] = " << invariant_field(vt, v).str() << "\n";

  // [L_x(1,1), L_x(1,2)] closes onto the grade -2 field with constant 1
  DiffOp a = invariant_field(vt, vt.x_index(1, 1));
  DiffOp b = invariant_field(vt, vt.x_index(1, 2));
  DiffOp comm = a.compose(b);
  DiffOp rev = b.compose(a);
  rev.scale(Scalar(-1));
  comm += rev;
  std::cout << "\n[L[x(1,1)], L[x(1,2)]] = " << comm.str() << "\n";
  std::cout << "matches L[y(1,2)]: "
            << (comm == invariant_field(vt, vt.y_index(1, 2)) ? "yes" : "no") << "\n";

  std::cout << "\nduality of weighted slices (words x monomials):\n";
  for (int r = 1; r <= 3; ++r) {
    ExactMatrix M = duality_matrix(vt, r, r);
    std::cout << "  weight " << r << ": " << M.rows() << " x " << M.cols() << ", rank "
              << rank(M) << (rank(M) == M.rows() ? " (invertible)" : "") << "\n";
  }
  ExactMatrix cross = duality_matrix(vt, 1, 2);
  std::cout << "  cross weight (1,2): " << (cross.is_zero() ? "zero" : "NONZERO") << "\n";
  return 0;
}
