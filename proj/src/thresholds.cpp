#include "jetdiff/thresholds.hpp"

#include <cmath>

#include "jetdiff/error.hpp"

namespace jetdiff {

Criterion parse_criterion(const std::string& name) {
  static const std::map<std::string, Criterion> table{
      {"jets1-surface", Criterion::Jets1Surface},   {"jets2-surface", Criterion::Jets2Surface},
      {"chi3-positive", Criterion::Chi3Positive},   {"h0-minus-h2", Criterion::H0MinusH2},
      {"twisted-surface", Criterion::TwistedSurface}, {"twisted-threefold", Criterion::TwistedThreefold},
      {"deg-condition", Criterion::DegCondition},
  };
  auto it = table.find(name);
  if (it == table.end()) raise(ErrorKind::InvalidArgument, "unknown criterion '" + name + "'");
  return it->second;
}

std::string criterion_name(Criterion c) {
  switch (c) {
    case Criterion::Jets1Surface: return "jets1-surface";
    case Criterion::Jets2Surface: return "jets2-surface";
    case Criterion::Chi3Positive: return "chi3-positive";
    case Criterion::H0MinusH2: return "h0-minus-h2";
    case Criterion::TwistedSurface: return "twisted-surface";
    case Criterion::TwistedThreefold: return "twisted-threefold";
    case Criterion::DegCondition: return "deg-condition";
  }
  return "?";
}

Rational eval_d(const SparsePoly& f, const Rational& d) {
  const Rational v[] = {Rational(0), d};
  if (f.depends_on(0)) raise(ErrorKind::InvalidArgument, "expression still depends on s");
  return evaluate(f, v);
}

namespace {

/// Smallest non-negative integer b with b^k ≥ r.
Integer ceil_root(const Rational& r, unsigned k) {
  Integer b = static_cast<long>(std::ceil(std::pow(r.to_double(), 1.0 / k)));
  auto pow_k = [k](const Integer& x) { return Rational(x).pow(k); };
  while (pow_k(b) < r) ++b;
  while (b > 0 && pow_k(b - 1) >= r) --b;
  return b;
}

}  // namespace

ThresholdCertificate minimal_degree(const SparsePoly& f, const ScanOptions& opts) {
  require_same_table(f.table(), sd_table());
  if (f.depends_on(0)) raise(ErrorKind::InvalidArgument, "threshold expression must be univariate in d");
  if (f.is_zero()) raise(ErrorKind::NoThresholdFound, "expression is identically zero");
  const unsigned n = f.degree_in(1);
  const Rational lead = f.coefficient(Monomial{0, n});
  if (lead.sign() <= 0) raise(ErrorKind::NoThresholdFound, "leading coefficient in d is not positive");

  // Fujiwara: every root has |z| ≤ 2·max_k |a_{n-k}/a_n|^{1/k}.
  Integer radius = 0;
  for (const auto& [e, c] : f.terms())
    if (e[1] != n) radius = std::max(radius, ceil_root((c / lead).abs(), n - e[1]));
  const Integer bound = 2 * radius + 1;
  if (bound > opts.cap) raise(ErrorKind::NoThresholdFound, "root bound exceeds the scan cap");
  const long limit = bound.get_si();

  long last = 1;
  for (long d = 2; d <= limit; ++d)
    if (eval_d(f, d).sign() <= 0) last = d;
  const long d_min = last + 1;
  for (long d = d_min; d <= d_min + opts.persistence; ++d)
    if (eval_d(f, d).sign() <= 0) raise(ErrorKind::InternalInconsistency, "positivity does not persist past the threshold");
  return {d_min, eval_d(f, d_min - 1), eval_d(f, d_min)};
}

namespace {

SparsePoly lc_of(const SeriesEvaluator& series, unsigned degree, const EngineOptions& o) {
  return leading_coeff(series, degree, o.plan).value;
}

SparsePoly chern_c1sq() { return hypersurface_chern(3).integral({2}); }
SparsePoly chern_c2() { return hypersurface_chern(3).integral({0, 1}); }

}  // namespace

SparsePoly jets1_chern() { return chern_c1sq() - chern_c2(); }

SparsePoly jets1_engine(const EngineOptions& o) {
  return Rational(6) * lc_of([&](unsigned m) { return chi_E_poly(1, 2, m, o.workers); }, 3, o);
}

SparsePoly jets2_chern() { return Rational(13) * chern_c1sq() - Rational(9) * chern_c2(); }

SparsePoly jets2_engine(const EngineOptions& o) {
  return Rational(648) * lc_of([&](unsigned m) { return chi_E_poly(2, 2, m, o.workers); }, 4, o);
}

SparsePoly chi3_engine(const EngineOptions& o) {
  return lc_of([&](unsigned m) { return chi_E_poly(3, 3, m, o.workers); }, 9, o);
}

SparsePoly chi3_displayed() {
  const SparsePoly d = d_poly();
  const SparsePoly cubic = Rational(389) * d.pow(3) - Rational(20739) * d.pow(2) + Rational(185559) * d - Rational(358873);
  return d * cubic * (Rational(1) / Rational(81648000000L));
}

Rational h2_constant_engine(const EngineOptions& o) {
  return lc_of([&](unsigned m) { return SparsePoly(sd_table(), h2_sum(m, o.workers)); }, 9, o).constant_term();
}

Rational h2_constant_displayed() { return Rational(49403) / Rational(2520000000L); }

SparsePoly h0_minus_h2(const SparsePoly& chi3_lc, const Rational& h2_constant) {
  const SparsePoly d = d_poly();
  return chi3_lc - h2_constant * d * (d + Rational(13));
}

SparsePoly twisted_chi3_engine(const EngineOptions& o) {
  return lc_of([&](unsigned m) { return chi_E_poly(3, 3, m, o.workers, true); }, 9, o);
}

namespace {

RouteResult run_route(std::string name, SparsePoly expr) {
  RouteResult r{std::move(name), std::move(expr), std::nullopt, {}};
  try {
    r.certificate = minimal_degree(r.expression);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoThresholdFound) throw;
    r.error = e.what();
  }
  return r;
}

/// Threshold of a conjunction: the largest individual threshold, reported on
/// the condition that attains it.
RouteResult run_conjunction(std::string name, const std::vector<std::pair<std::string, SparsePoly>>& parts,
                            std::map<std::string, std::string>& notes) {
  RouteResult best{std::move(name), SparsePoly(sd_table()), std::nullopt, {}};
  for (const auto& [label, expr] : parts) {
    RouteResult r = run_route(label, expr);
    if (!r.certificate) {
      best.error = label + ": " + r.error;
      best.certificate.reset();
      return best;
    }
    notes["d_min[" + label + "]"] = std::to_string(r.certificate->d_min);
    if (!best.certificate || r.certificate->d_min > best.certificate->d_min) {
      best.certificate = r.certificate;
      best.expression = expr;
      notes["binding"] = label;
    }
  }
  return best;
}

const Rational& need(const std::map<std::string, Rational>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) raise(ErrorKind::MissingParam, "missing parameter '" + key + "'");
  return it->second;
}

bool same_outcome(const RouteResult& a, const RouteResult& b) {
  if (a.certificate.has_value() != b.certificate.has_value()) return false;
  if (!a.certificate) return true;
  return a.certificate->d_min == b.certificate->d_min;
}

SparsePoly substitute_s(const SparsePoly& f, const Rational& s) { return partial_evaluate(f, {{0, s}}); }

}  // namespace

ThresholdReport threshold(Criterion c, const std::map<std::string, Rational>& params, const EngineOptions& o) {
  ThresholdReport rep{c, {}, true, {}};
  const SparsePoly d = d_poly();
  switch (c) {
    case Criterion::Jets1Surface:
      rep.routes.push_back(run_route("chern", jets1_chern()));
      rep.routes.push_back(run_route("engine", jets1_engine(o)));
      rep.routes_agree = rep.routes[0].expression == rep.routes[1].expression;
      break;
    case Criterion::Jets2Surface:
      rep.routes.push_back(run_route("chern", jets2_chern()));
      rep.routes.push_back(run_route("engine", jets2_engine(o)));
      rep.routes_agree = rep.routes[0].expression == rep.routes[1].expression;
      break;
    case Criterion::Chi3Positive:
      rep.routes.push_back(run_route("engine", chi3_engine(o)));
      rep.routes.push_back(run_route("displayed", chi3_displayed()));
      rep.routes_agree = rep.routes[0].expression == rep.routes[1].expression;
      break;
    case Criterion::H0MinusH2: {
      const Rational c_engine = h2_constant_engine(o);
      rep.notes["h2_constant_engine"] = c_engine.to_string();
      rep.notes["h2_constant_displayed"] = h2_constant_displayed().to_string();
      rep.routes.push_back(run_route("engine", h0_minus_h2(chi3_engine(o), c_engine)));
      rep.routes.push_back(run_route("displayed", h0_minus_h2(chi3_displayed(), h2_constant_displayed())));
      rep.routes_agree = rep.routes[0].expression == rep.routes[1].expression;
      break;
    }
    case Criterion::TwistedSurface: {
      const Rational delta = need(params, "delta");
      if (delta.sign() <= 0 || delta >= Rational(1, 3))
        raise(ErrorKind::NoThresholdFound, "delta must lie in the open window (0, 1/3)");
      const Rational coef = Rational(18) * delta * delta - Rational(10) * delta + Rational(13, 3);
      rep.routes.push_back(run_conjunction(
          "chern",
          {{"positivity", coef * chern_c1sq() - Rational(3) * chern_c2()},
           {"pole", delta * (d - Rational(4)) - Rational(7)}},
          rep.notes));
      break;
    }
    case Criterion::TwistedThreefold: {
      const SparsePoly twisted = twisted_chi3_engine(o);
      const Rational c_engine = h2_constant_engine(o);
      const SparsePoly base = twisted - c_engine * d * (d + Rational(13));
      rep.notes["h2_constant_engine"] = c_engine.to_string();
      rep.notes["status"] = "informational";
      RouteResult route{"engine", SparsePoly(sd_table()), std::nullopt, {}};
      const ScanOptions scan;
      auto pole = [](const Rational& delta, long dd) { return delta * Rational(dd - 5) - Rational(12); };
      auto alpha = [&](const Rational& delta, long dd) { return evaluate(base, std::vector<Rational>{delta, dd}); };

      if (auto it = params.find("delta"); it != params.end()) {
        const Rational delta = it->second;
        if (delta.sign() <= 0 || delta >= Rational(1, 18))
          raise(ErrorKind::NoThresholdFound, "delta must lie in the open window (0, 1/18)");
        route.expression = substitute_s(base, delta);
        for (long dd = 6; dd <= scan.cap && !route.certificate; ++dd) {
          if (pole(delta, dd).sign() <= 0 || alpha(delta, dd).sign() <= 0) continue;
          const bool pole_binds = pole(delta, dd - 1).sign() <= 0;
          rep.notes["binding"] = pole_binds ? "pole" : "alpha";
          route.certificate = pole_binds ? ThresholdCertificate{dd, pole(delta, dd - 1), pole(delta, dd)}
                                         : ThresholdCertificate{dd, alpha(delta, dd - 1), alpha(delta, dd)};
        }
        rep.notes["delta"] = delta.to_string();
      } else {
        long grid = 200;
        if (auto g = params.find("grid"); g != params.end()) grid = g->second.floor().get_si();
        if (grid < 2) raise(ErrorKind::InvalidArgument, "grid must be at least 2");
        // Best α over interior grid points of the window (12/(d-5), 1/18).
        auto best_at = [&](long dd) -> std::optional<std::pair<Rational, Rational>> {
          if (dd <= 5) return std::nullopt;
          const Rational lo = Rational(12) / Rational(dd - 5), hi = Rational(1, 18);
          if (lo >= hi) return std::nullopt;
          const SparsePoly in_s = partial_evaluate(base, {{1, Rational(dd)}});
          std::optional<std::pair<Rational, Rational>> best;
          for (long k = 1; k < grid; ++k) {
            const Rational delta = lo + (hi - lo) * Rational(k) / Rational(grid);
            const Rational v = evaluate(in_s, std::vector<Rational>{delta, Rational(0)});
            if (!best || v > best->second) best = std::make_pair(delta, v);
          }
          return best;
        };
        for (long dd = 6; dd <= scan.cap && !route.certificate; ++dd) {
          const auto here = best_at(dd);
          if (!here || here->second.sign() <= 0) continue;
          const auto before = best_at(dd - 1);
          route.certificate = ThresholdCertificate{dd, before ? before->second : Rational(0), here->second};
          route.expression = substitute_s(base, here->first);
          rep.notes["delta"] = here->first.to_string();
          rep.notes["window_empty_before"] = before ? "false" : "true";
          bool persists = true;
          for (long e = dd + 1; e <= dd + scan.persistence && persists; ++e) {
            const auto later = best_at(e);
            persists = later && later->second.sign() > 0;
          }
          rep.notes["persists"] = persists ? "true" : "false";
        }
        rep.notes["grid"] = std::to_string(grid);
      }
      if (!route.certificate) route.error = "no degree below the scan cap satisfies the region";
      rep.routes.push_back(std::move(route));
      break;
    }
    case Criterion::DegCondition:
      raise(ErrorKind::InvalidArgument, "deg-condition is a feasibility region, not a degree threshold");
  }
  if (rep.routes.size() == 2) rep.routes_agree = rep.routes_agree && same_outcome(rep.routes[0], rep.routes[1]);
  return rep;
}

FeasibilityReport feasibility(const std::string& region, const std::map<std::string, Rational>& params) {
  FeasibilityReport rep{region, true, {}};
  auto add = [&](std::string label, Rational lhs, Rational rhs) {
    const bool holds = lhs > rhs;
    rep.feasible = rep.feasible && holds;
    rep.parts.push_back({std::move(label), std::move(lhs), std::move(rhs), holds});
  };
  if (region == "twisted-surface") {
    const Rational& d = need(params, "d");
    const Rational& delta = need(params, "delta");
    const Rational c1sq = eval_d(chern_c1sq(), d), c2 = eval_d(chern_c2(), d);
    add("delta > 0", delta, 0);
    add("1/3 > delta", Rational(1, 3), delta);
    add("(18*delta^2-10*delta+13/3)*c1^2-3*c2 > 0",
        (Rational(18) * delta * delta - Rational(10) * delta + Rational(13, 3)) * c1sq - Rational(3) * c2, 0);
    add("delta*(d-4) > 7", delta * (d - Rational(4)), 7);
  } else if (region == "twisted-threefold") {
    const Rational& d = need(params, "d");
    const Rational& delta = need(params, "delta");
    add("delta > 0", delta, 0);
    add("1/18 > delta", Rational(1, 18), delta);
    add("delta*(d-5) > 12", delta * (d - Rational(5)), 12);
  } else if (region == "deg-condition") {
    const Rational& d = need(params, "d");
    const Rational& m = need(params, "m");
    const Rational& t = need(params, "t");
    const Rational c1sq = eval_d(chern_c1sq(), d), c2 = eval_d(chern_c2(), d);
    add("m*(13*c1^2-9*c2) > 12*t*c1^2", m * (Rational(13) * c1sq - Rational(9) * c2), Rational(12) * t * c1sq);
  } else {
    raise(ErrorKind::InvalidArgument, "unknown region '" + region + "'");
  }
  return rep;
}

}  // namespace jetdiff
