#pragma once

#include <array>
#include <optional>
#include <vector>

#include "jetdiff/poly.hpp"

namespace jetdiff {

/// Jet coordinates f_i^(j) (named "f<i>_<j>") for 1 ≤ i ≤ n, 1 ≤ j ≤ k, the
/// reparametrization coefficients b1..bk and c1..ck, and a spare scalar "lam".
class JetSpace {
 public:
  JetSpace(unsigned n, unsigned k);

  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  const VarTablePtr& table() const { return table_; }

  std::size_t f_index(unsigned i, unsigned j) const;
  std::size_t b_index(unsigned j) const;
  std::size_t c_index(unsigned j) const;
  std::size_t lam_index() const { return n_ * k_ + 2 * k_; }

  SparsePoly f(unsigned i, unsigned j) const { return SparsePoly::variable(table_, f_index(i, j)); }
  SparsePoly b(unsigned j) const { return SparsePoly::variable(table_, b_index(j)); }
  SparsePoly c(unsigned j) const { return SparsePoly::variable(table_, c_index(j)); }
  SparsePoly lam() const { return SparsePoly::variable(table_, lam_index()); }

 private:
  unsigned n_, k_;
  VarTablePtr table_;
};

/// Images of every jet coordinate under a reparametrization f ↦ f∘φ.
struct ReparamMap {
  unsigned k = 0;
  std::vector<SparsePoly> coefficients;  // φ = Σ coefficients[i-1] t^i
  std::map<std::size_t, SparsePoly> images;

  SparsePoly apply(const SparsePoly& p) const { return substitute_vars(p, images); }
};

/// Faà di Bruno for φ(t) = Σ phi[i-1]·t^i. UnsupportedOrder for k > 3.
ReparamMap reparam_jets(const JetSpace& space, std::vector<SparsePoly> phi);
/// Same with the symbolic coefficients b1..bk of the space.
ReparamMap reparam_jets(const JetSpace& space);

struct WeightedInvariant {
  SparsePoly poly;
  unsigned weight;
};

WeightedInvariant gen_fprime(const JetSpace& s, unsigned i);
WeightedInvariant gen_w(const JetSpace& s, unsigned i, unsigned j);
WeightedInvariant gen_wk(const JetSpace& s, unsigned i, unsigned j, unsigned k);
WeightedInvariant gen_W(const JetSpace& s);

/// Weighted degree with weight(f^(j)) = j. NotHomogeneous on mixed weights.
unsigned weight_of(const SparsePoly& p, const JetSpace& s);

/// The weight m when p∘φ = b1^m·p identically in b1..bk; nullopt otherwise.
std::optional<unsigned> check_invariance(const SparsePoly& p, const JetSpace& s);

/// coefficient·w_ij² − (f_j'·w_ij^i − f_i'·w_ij^j) == 0.
bool verify_relation_R(unsigned n, unsigned i, unsigned j, long coefficient = 3);

/// Exponents (α, β, γ, δ) of f1'^α w12^β (w12^1)^γ W^δ; δ = 0 in dimension 2.
struct HwvExponent {
  unsigned alpha = 0, beta = 0, gamma = 0, delta = 0;
  friend bool operator==(const HwvExponent&, const HwvExponent&) = default;
  friend auto operator<=>(const HwvExponent&, const HwvExponent&) = default;
};

/// All solutions of α+3β+5γ+6δ = m (dim 3) or α+3β+5γ = m (dim 2).
std::vector<HwvExponent> hwv_enumerate(unsigned m, unsigned dim);

/// #{(a,b,c,d,e) ≥ 0 : a+b+5c+5d+3e = m, e ≤ 1}.
std::uint64_t a3_graded_dim_dim2(unsigned m);

}  // namespace jetdiff
