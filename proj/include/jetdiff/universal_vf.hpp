#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "jetdiff/poly.hpp"

namespace jetdiff {

using Multi = std::vector<unsigned>;

/// Affine chart z0 ≠ 0 of P^n with the coefficient of z1^d normalized to 1.
/// Symbols, in table order: z1..zn, a[α] for |α| ≤ d except (d,0,..,0), and
/// x<s>_<j> for the jet coordinates ξ_j^(s), 1 ≤ s ≤ k.
class UniversalCoords {
 public:
  UniversalCoords(unsigned n, unsigned d, unsigned k);

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  unsigned k() const { return k_; }
  const VarTablePtr& table() const { return table_; }
  std::size_t size() const { return table_->size(); }

  std::size_t z(unsigned j) const;
  /// nullopt for the normalized multi-index (d,0,..,0) and for |α| > d.
  std::optional<std::size_t> a(const Multi& alpha) const;
  std::size_t xi(unsigned s, unsigned j) const;
  /// Every α that has a symbol, in table order.
  const std::vector<Multi>& a_labels() const { return labels_; }
  Multi normalized() const;
  /// C(d+n, n) - 1.
  unsigned n_d() const { return static_cast<unsigned>(labels_.size()); }

  SparsePoly z_var(unsigned j) const { return SparsePoly::variable(table_, z(j)); }
  SparsePoly xi_var(unsigned s, unsigned j) const { return SparsePoly::variable(table_, xi(s, j)); }
  SparsePoly z_power(const Multi& alpha) const;
  bool is_z(std::size_t var) const { return var < n_; }
  bool is_a(std::size_t var) const { return var >= n_ && var < n_ + labels_.size(); }
  bool is_xi(std::size_t var) const { return var >= n_ + labels_.size(); }
  unsigned z_degree(const SparsePoly& p) const;

 private:
  unsigned n_, d_, k_;
  std::vector<Multi> labels_;
  std::map<Multi, std::size_t> a_index_;
  VarTablePtr table_;
};

/// Total derivative along the jet: Σ ξ^(1)_j ∂/∂z_j + Σ ξ^(s+1)_j ∂/∂ξ^(s)_j.
SparsePoly jet_derivative(const UniversalCoords& c, const SparsePoly& p);

/// eqs[s] is Eq(s+1) = D^s(z1^d + Σ a_α z^α).
struct JetEquations {
  std::vector<SparsePoly> eqs;
};

/// n ∈ {3, 4}, d ≥ 2, k ≤ 3. UnsupportedOrder for k > 3.
JetEquations build_equations(const UniversalCoords& c);

/// Vector field Σ coeff_v ∂/∂v divided by `denominator` (1 unless a solve put
/// a Wronskian there).
struct MeroField {
  VarTablePtr table;
  std::map<std::size_t, SparsePoly> coeffs;
  SparsePoly denominator;

  explicit MeroField(VarTablePtr t) : table(t), denominator(t, 1) {}

  void add(std::size_t var, const SparsePoly& coeff);
  /// Numerator applied as a derivation.
  SparsePoly apply(const SparsePoly& p) const;
  /// Largest total z-degree over the numerator coefficients.
  unsigned pole_order(const UniversalCoords& c) const;
  MeroField& operator+=(const MeroField& o);
  MeroField scaled(const Rational& r) const;
};

/// Every equation is annihilated by the numerator.
bool check_tangency(const MeroField& field, const JetEquations& eqs);

enum class FieldFamily { V300, V210, V111, V1 };

FieldFamily parse_field_family(const std::string& name);
std::string field_family_name(FieldFamily f);

/// Distinct coordinate permutations of the family's base exponent.
std::vector<Multi> family_exponents(FieldFamily f);

/// Σ_{ν ≤ μ} (−1)^{|ν|} Π C(μ_i, ν_i) z^ν ∂/∂a_{α−ν}. IndexOutOfRange unless
/// α ≥ μ, |α| ≤ d and every a_{α−ν} is a symbol.
MeroField binomial_field(const UniversalCoords& c, const Multi& alpha, const Multi& mu);
MeroField explicit_family(const UniversalCoords& c, FieldFamily f, const Multi& alpha, const Multi& mu);
/// All admissible (α, μ) pairs of the family.
std::vector<std::pair<Multi, Multi>> family_members(const UniversalCoords& c, FieldFamily f);

/// Translation z ↦ z + t·e_j compensated in the a-directions.
MeroField translation_field(const UniversalCoords& c, unsigned j);

using Matrix3 = std::array<std::array<Rational, 3>, 3>;

/// Field with ξ^(s)-components A·ξ^(s) and a-components of z-degree ≤ 3,
/// affine in the a's. NoSolution if the coefficient system is infeasible.
MeroField solve_slanted(const UniversalCoords& c, const JetEquations& eqs, const Matrix3& a_matrix);

/// Cramer solve for v_000 (and v_100, v_010 as k grows) given the remaining
/// v_α with |α| ≤ k. The denominator is the Cramer determinant.
MeroField wronskian_solve(const UniversalCoords& c, const JetEquations& eqs,
                          const std::map<Multi, SparsePoly>& free_assignment);
/// Multi-indices whose values wronskian_solve solves for, and those it expects.
std::vector<Multi> wronskian_unknowns(const UniversalCoords& c);
std::vector<Multi> wronskian_free(const UniversalCoords& c);

/// Point on the jet space: random z, ξ and a's from the seed, with the
/// a-values of wronskian_unknowns solved so every equation vanishes.
std::vector<Rational> random_point(const UniversalCoords& c, const JetEquations& eqs, std::uint64_t seed);

/// Ambient dimension minus the Jacobian rank of the equations at the point.
std::size_t tangent_dimension(const UniversalCoords& c, const JetEquations& eqs, const std::vector<Rational>& point);

/// Rank of the evaluated coefficient matrix. PointNotOnVariety or
/// PointInSigma when the point is inadmissible.
std::size_t spanning_rank(const std::vector<MeroField>& fields, const std::vector<Rational>& point,
                          const UniversalCoords& c, const JetEquations& eqs);

/// Families of order k+1, low-order Cramer fields, slanted fields for the
/// nine elementary matrices, and translations.
std::vector<MeroField> spanning_collection(const UniversalCoords& c, const JetEquations& eqs);

}  // namespace jetdiff
