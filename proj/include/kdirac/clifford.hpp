#pragma once

#include <stdexcept>
#include <vector>

#include "kdirac/matrix.hpp"

namespace kdirac {

/// The 2^n dimensional spinor module for the Clifford algebra of a negative
/// definite form on R^{2n}, realized on the exterior algebra of an isotropic
/// subspace.  Basis vectors are indexed by subsets S of {0..n-1} encoded as
/// bitmasks; the generators act through fermionic ladder operators, so every
/// matrix entry is 0, +-1 or +-i and gamma_alpha^2 = -1.
class SpinorSpace {
 public:
  explicit SpinorSpace(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("SpinorSpace: need n >= 1");
    const int d = dim();
    const Scalar one(1), im = Scalar::i();
    gamma_.reserve(2 * n);
    for (int alpha = 1; alpha <= 2 * n; ++alpha) {
      int j = (alpha - 1) / 2;  // which ladder pair
      ExactMatrix g(d, d);
      for (int s = 0; s < d; ++s) {
        // sign from anticommuting past the generators below j
        int below = __builtin_popcount(unsigned(s) & ((1u << j) - 1));
        Scalar sign = (below % 2 == 0) ? one : -one;
        int t = s ^ (1 << j);
        if (alpha % 2 == 1) {
          // gamma_{2j+1} = a_j - a_j^+
          if (s & (1 << j))
            g.at(t, s) += sign;
          else
            g.at(t, s) -= sign;
        } else {
          // gamma_{2j+2} = i (a_j + a_j^+)
          g.at(t, s) += im * sign;
        }
      }
      gamma_.push_back(std::move(g));
    }
  }

  int n() const { return n_; }
  int dim() const { return 1 << n_; }

  /// alpha is 1-based, 1..2n.
  const ExactMatrix& gamma(int alpha) const {
    if (alpha < 1 || alpha > 2 * n_) throw std::out_of_range("SpinorSpace::gamma");
    return gamma_[alpha - 1];
  }

  std::vector<Scalar> act(int alpha, const std::vector<Scalar>& v) const {
    const ExactMatrix& g = gamma(alpha);
    if (int(v.size()) != dim()) throw std::invalid_argument("SpinorSpace::act: bad vector size");
    std::vector<Scalar> out(v.size());
    for (int r = 0; r < dim(); ++r)
      for (int c = 0; c < dim(); ++c)
        if (!g.at(r, c).is_zero() && !v[c].is_zero()) out[r] += g.at(r, c) * v[c];
    return out;
  }

  /// Parity of the basis vector: number of set bits mod 2.  The generators
  /// are odd, so they swap the two parity summands.
  int parity(int idx) const { return __builtin_popcount(unsigned(idx)) % 2; }

 private:
  int n_;
  std::vector<ExactMatrix> gamma_;
};

}  // namespace kdirac
