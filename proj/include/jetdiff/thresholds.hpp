#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetdiff/riemann_roch.hpp"

namespace jetdiff {

enum class Criterion {
  Jets1Surface,
  Jets2Surface,
  Chi3Positive,
  H0MinusH2,
  TwistedSurface,
  TwistedThreefold,
  DegCondition,
};

Criterion parse_criterion(const std::string& name);
std::string criterion_name(Criterion c);

struct ThresholdCertificate {
  long d_min = 0;
  Rational before;  // value at d_min - 1, ≤ 0
  Rational at;      // value at d_min, > 0
};

struct ScanOptions {
  long cap = 10000;
  long persistence = 50;
};

/// Eventual-positivity threshold of a univariate polynomial in d: one more
/// than the last integer d ≥ 2 where f(d) ≤ 0. The scan stops at a Fujiwara
/// bound on the real roots. NoThresholdFound when the leading coefficient is
/// not positive or the bound exceeds the cap.
ThresholdCertificate minimal_degree(const SparsePoly& f, const ScanOptions& opts = {});

Rational eval_d(const SparsePoly& f, const Rational& d);

struct EngineOptions {
  InterpolationPlan plan;
  unsigned workers = 1;
};

/// Criterion polynomials in d over sd_table(). Engine routes go through the
/// Riemann–Roch machinery; the Chern route reads intersection numbers off
/// ChernData; the displayed route uses the closed formulas.
SparsePoly jets1_chern();            // ∫ c1² − c2 on X ⊂ P³
SparsePoly jets1_engine(const EngineOptions& o = {});   // 6 · lc_m³ χ(S^m T*)
SparsePoly jets2_chern();            // ∫ 13c1² − 9c2
SparsePoly jets2_engine(const EngineOptions& o = {});   // 648 · lc_m⁴ χ(E_{2,m})
SparsePoly chi3_engine(const EngineOptions& o = {});    // lc_m⁹ χ(E_{3,m})
SparsePoly chi3_displayed();
Rational h2_constant_engine(const EngineOptions& o = {});  // lc_m⁹ of the h² sum
Rational h2_constant_displayed();
SparsePoly h0_minus_h2(const SparsePoly& chi3_lc, const Rational& h2_constant);
/// lc_m⁹ of the χ sum twisted by O(−s·m·(d−5)), as a polynomial in (s, d).
SparsePoly twisted_chi3_engine(const EngineOptions& o = {});

struct RouteResult {
  std::string route;
  SparsePoly expression;
  std::optional<ThresholdCertificate> certificate;
  std::string error;  // set when the route found no threshold
};

struct ThresholdReport {
  Criterion criterion;
  std::vector<RouteResult> routes;
  bool routes_agree = true;
  /// Extra data for criteria with parameters or grids.
  std::map<std::string, std::string> notes;
};

/// Runs every route for the criterion. Parameterized criteria read "delta"
/// (and for twisted-threefold an optional grid size "grid").
ThresholdReport threshold(Criterion c, const std::map<std::string, Rational>& params = {},
                          const EngineOptions& o = {});

struct InequalityValue {
  std::string label;
  Rational lhs, rhs;
  bool holds;
};

struct FeasibilityReport {
  std::string region;
  bool feasible;
  std::vector<InequalityValue> parts;
};

/// Regions: twisted-surface (d, delta), twisted-threefold (d, delta),
/// deg-condition (d, m, t). MissingParam when a symbol is not supplied.
FeasibilityReport feasibility(const std::string& region, const std::map<std::string, Rational>& params);

}  // namespace jetdiff
