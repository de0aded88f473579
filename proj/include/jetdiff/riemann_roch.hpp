#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jetdiff/poly.hpp"

namespace jetdiff {

/// Table {"s", "d"} shared by every result that may depend on the degree d
/// and on an auxiliary twist parameter s.
const VarTablePtr& sd_table();
SparsePoly d_poly();
SparsePoly s_poly();

// Chern data ---------------------------------------------------------------

/// Smooth degree-d hypersurface in P^n, n ∈ {3, 4}. c[i] is the coefficient
/// of h^i in c(T_X), a polynomial in d over sd_table(); ∫ h^{n-1} = d.
struct ChernData {
  unsigned ambient = 0;
  std::vector<SparsePoly> c;

  unsigned dim() const { return ambient - 1; }
  /// ∫ c_1^{e[0]} c_2^{e[1]} ...; zero unless the degree equals dim().
  SparsePoly integral(const std::vector<unsigned>& exponents) const;
};

ChernData hypersurface_chern(unsigned ambient);

// Closed-form Euler characteristics ---------------------------------------

enum class ChiFamily { Schur3, Sym2 };

std::string chi_family_name(ChiFamily f);

/// Schur3: χ(X, Γ^λ T*_X ⊗ O(t)) for a threefold X ⊂ P^4, in (l1, l2, l3, t, d).
/// Sym2:   χ(X, S^p T*_X ⊗ K_X^j ⊗ O(t)) for a surface X ⊂ P^3, in (p, j, t, d).
struct ChiPolynomial {
  ChiFamily family;
  SparsePoly poly;
};

/// ch(Γ^λ E) for a rank-r bundle E with Chern roots y1..yr, truncated at
/// total degree `bound`, over the table {y1, ..., yr}.
SparsePoly schur_character(const std::vector<unsigned>& lambda, unsigned r, unsigned bound);

/// Derives the closed form from scratch through the bialternant.
ChiPolynomial derive_chi(ChiFamily family);

enum class CacheStatus { Memory, Hit, Miss, Corrupt, Disabled };
std::string cache_status_name(CacheStatus s);

/// Memoized closed form; consults the disk cache when one is configured.
const ChiPolynomial& chi_closed_form(ChiFamily family, CacheStatus* status = nullptr);

void set_chi_cache_path(std::optional<std::filesystem::path> path);
std::optional<std::filesystem::path> chi_cache_path();
/// Drops the in-process memo so the next call goes back to disk.
void reset_chi_memo();

Rational chi_schur3(long l1, long l2, long l3, const Rational& t, const Rational& d);
Rational chi_sym2(long p, long j, const Rational& t, const Rational& d);

// Stratum sums -------------------------------------------------------------

/// χ(X, E_{k,m}T*_X) summed over the filtration, as a polynomial over
/// sd_table(). (k, dim) ∈ {(1,2), (2,2), (3,2), (3,3)}. With `twisted`, only
/// for (3,3), every summand is twisted by O(-s·m·(d-5)).
SparsePoly chi_E_poly(unsigned k, unsigned dim, unsigned m, unsigned workers = 1, bool twisted = false);
Rational chi_E(unsigned k, unsigned dim, unsigned m, const Integer& d, unsigned workers = 1);

/// g(λ) = (3/2)|λ|³(λ1−λ2)(λ1−λ3)(λ2−λ3).
Rational g_lambda(long l1, long l2, long l3);
/// Σ g over the dimension-3 strata, γ = 0 restricted to strict partitions.
Rational h2_sum(unsigned m, unsigned workers = 1);
Rational h2_bound(unsigned m, const Integer& d, unsigned workers = 1);

// Leading coefficients -----------------------------------------------------

using SeriesEvaluator = std::function<SparsePoly(unsigned m)>;

struct InterpolationPlan {
  std::vector<unsigned> periods{60, 420, 2520};
  std::vector<unsigned> starts{60, 120};
  unsigned held_out = 2;
};

struct LeadingCoefficient {
  unsigned degree = 0;
  SparsePoly value;
  unsigned period = 0;
  unsigned start = 0;
  std::vector<std::pair<unsigned, SparsePoly>> evidence;
};

/// Top coefficient of a quasi-polynomial series of the given degree, read off
/// from an interpolation on one residue class and confirmed on held-out points.
LeadingCoefficient leading_coeff(const SeriesEvaluator& series, unsigned degree,
                                 const InterpolationPlan& plan = {});

}  // namespace jetdiff
