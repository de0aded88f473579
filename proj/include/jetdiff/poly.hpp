#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "jetdiff/rational.hpp"

namespace jetdiff {

/// Ordered list of distinct symbol names. The index of a name never changes
/// for the lifetime of the table; exponent vectors are laid out in this order.
class VarTable {
 public:
  explicit VarTable(std::vector<std::string> names);

  static std::shared_ptr<const VarTable> make(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws BadIndex when the name is unknown.
  std::size_t index(const std::string& name) const;

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;
using Monomial = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over Rational. Terms are kept in a map keyed
/// by dense exponent vectors, so iteration is lexicographic in the table's
/// variable order and zero coefficients are never stored.
class SparsePoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit SparsePoly(VarTablePtr table);
  SparsePoly(VarTablePtr table, const Rational& c);

  static SparsePoly variable(VarTablePtr table, std::size_t index);
  static SparsePoly variable(const VarTablePtr& table, const std::string& name);
  static SparsePoly monomial(VarTablePtr table, Monomial exponents, const Rational& c);

  const VarTablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  /// Adds c·x^e, dropping the term if the coefficient cancels.
  void add_term(const Monomial& e, const Rational& c);
  Rational coefficient(const Monomial& e) const;
  Rational constant_term() const;
  Monomial zero_monomial() const { return Monomial(table_->size(), 0); }

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const;

  SparsePoly derivative(std::size_t var) const;
  SparsePoly pow(unsigned e) const;
  SparsePoly scaled(const Rational& c) const;

  /// Human-readable rendering, e.g. "x^2 - 2*x*y + 1/3".
  std::string to_string() const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const SparsePoly& o);
  SparsePoly& operator*=(const Rational& c);

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(SparsePoly a, const Rational& c) { return a *= c; }
  friend SparsePoly operator*(const Rational& c, SparsePoly a) { return a *= c; }
  friend SparsePoly operator-(const SparsePoly& a);
  friend SparsePoly operator+(SparsePoly a, const Rational& c);
  friend SparsePoly operator-(SparsePoly a, const Rational& c);

  friend bool operator==(const SparsePoly& a, const SparsePoly& b);

 private:
  VarTablePtr table_;
  TermMap terms_;
};

/// Throws MismatchedTables unless the two tables hold the same names in the
/// same order.
void require_same_table(const VarTablePtr& a, const VarTablePtr& b);

/// Per-variable weights and a bound on weighted total degree. Weight 0 marks a
/// parameter symbol that never counts toward the truncation degree.
struct TruncationContext {
  std::vector<std::uint32_t> weights;
  std::uint32_t bound = 0;

  static TruncationContext uniform(const VarTablePtr& table, std::uint32_t bound);
  /// Weight 1 on the listed variables, 0 on every other one.
  static TruncationContext on(const VarTablePtr& table, std::span<const std::size_t> vars,
                              std::uint32_t bound);
  std::uint64_t weight_of(const Monomial& e) const;
};

// Ring helpers --------------------------------------------------------------

SparsePoly truncate(const SparsePoly& p, const TruncationContext& ctx);
SparsePoly truncated_mul(const SparsePoly& a, const SparsePoly& b, const TruncationContext& ctx);
/// Terms of weighted degree exactly `degree`.
SparsePoly homogeneous_part(const SparsePoly& p, const TruncationContext& ctx, std::uint64_t degree);

/// q with q·den = num. Lexicographic division; NotDivisible on a remainder.
SparsePoly exact_div(const SparsePoly& num, const SparsePoly& den);

/// Σ p^q/q! truncated at ctx.bound. p must have no terms of weighted degree 0.
SparsePoly truncated_exp(const SparsePoly& p, const TruncationContext& ctx);

/// 1/p truncated at ctx.bound; p's weighted-degree-0 part must be a nonzero
/// rational constant.
SparsePoly truncated_inverse(const SparsePoly& p, const TruncationContext& ctx);

/// Rewrites a polynomial symmetric in `roots` through elementary symmetric
/// functions. The result lives in a new table made of the non-root variables
/// followed by `elementary_names` (default e1..er).
SparsePoly symmetric_to_elementary(const SparsePoly& p, std::span<const std::size_t> roots,
                                   std::vector<std::string> elementary_names = {});

/// The elementary symmetric polynomial e_k in the given variables.
SparsePoly elementary_symmetric(const VarTablePtr& table, std::span<const std::size_t> vars,
                                unsigned k);

/// Closed form of Σ_{var=lo}^{hi} p in terms of the symbols in lo and hi.
/// lo and hi must not involve `var`. Valid whenever hi ≥ lo−1.
SparsePoly definite_power_sum(const SparsePoly& p, std::size_t var, const SparsePoly& lo,
                              const SparsePoly& hi);

/// Univariate Faulhaber coefficients of F_j(N) = Σ_{k=0}^{N} k^j, lowest
/// degree first.
const std::vector<Rational>& faulhaber(unsigned j);

// Substitution and evaluation ----------------------------------------------

/// Ring homomorphism sending variable i to images[i]; images share a table.
SparsePoly substitute(const SparsePoly& p, std::span<const SparsePoly> images);

/// Replace the named variables by polynomials in p's own table.
SparsePoly substitute_vars(const SparsePoly& p, const std::map<std::size_t, SparsePoly>& images);

/// Evaluate with every variable bound.
Rational evaluate(const SparsePoly& p, std::span<const Rational> values);

/// Bind some variables to rationals; the result keeps p's table.
SparsePoly partial_evaluate(const SparsePoly& p, const std::map<std::size_t, Rational>& values);

/// Re-express p over `target`, matching variables by name. Every variable p
/// actually uses must exist in target.
SparsePoly remap(const SparsePoly& p, const VarTablePtr& target);

/// Groups terms by the exponents of `vars`; each group's coefficient is a
/// polynomial in the remaining variables (same table as p).
std::map<Monomial, SparsePoly> collect(const SparsePoly& p, std::span<const std::size_t> vars);

}  // namespace jetdiff
