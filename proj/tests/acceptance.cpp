// Acceptance suite: one PASS/FAIL line per criterion with its runtime budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "jetdiff/error.hpp"
#include "jetdiff/invariant_jets.hpp"
#include "jetdiff/riemann_roch.hpp"
#include "jetdiff/schur_filtration.hpp"
#include "jetdiff/thresholds.hpp"
#include "jetdiff/universal_vf.hpp"
#include "jetdiff/verify.hpp"

using namespace jetdiff;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const Error& e) {
    out = {false, std::string(error_kind_name(e.kind())) + ": " + e.what()};
  } catch (const std::exception& e) {
    out = {false, e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || secs < limit_s;
  const bool ok = out.passed && in_time;
  if (!ok) ++failures;
  std::string budget = limit_s > 0 ? ", limit " + std::to_string(static_cast<int>(limit_s)) + " s" : "";
  std::printf("%s %2d %s (%.2f s%s)%s%s%s\n", ok ? "PASS" : "FAIL", id, title, secs, budget.c_str(),
              out.detail.empty() ? "" : ": ", out.detail.c_str(), in_time ? "" : " [over budget]");
  std::fflush(stdout);
}

Rational at_d(const SparsePoly& p, long d) { return evaluate(p, std::vector<Rational>{Rational(0), Rational(d)}); }

SparsePoly constant(const Rational& r) { return SparsePoly(sd_table(), r); }

bool suite_clean(const std::string& name) { return run_suite(name).failures().empty(); }

Outcome relation_r() {
  const bool ok = verify_relation_R(3, 1, 2) && verify_relation_R(2, 1, 2) && !verify_relation_R(3, 1, 2, 2);
  return {ok, ok ? "identity holds exactly, perturbed coefficient rejected" : "relation does not vanish"};
}

Outcome invariance() {
  const JetSpace s(3, 3);
  bool ok = check_invariance(gen_fprime(s, 1).poly, s) == 1u && check_invariance(gen_w(s, 1, 2).poly, s) == 3u &&
            check_invariance(gen_wk(s, 1, 2, 3).poly, s) == 5u && check_invariance(gen_W(s).poly, s) == 6u;
  ok = ok && suite_clean("invariance") && suite_clean("group-law");
  return {ok, "weights 1, 3, 5, 6; group law at k = 3"};
}

Outcome bijection() {
  for (unsigned m = 0; m <= 300; ++m) {
    const auto idx = filtration_indices(Family::K3Dim3, m);
    const auto hwv = hwv_enumerate(m, 3);
    if (idx.size() != hwv.size()) return {false, "cardinality differs at m = " + std::to_string(m)};
    std::set<HwvExponent> image;
    for (const auto& i : idx) {
      const HwvExponent e = hwv_bijection(i, m);
      if (e.alpha != i.lambda.part(0) - i.lambda.part(1) - i.gamma || e.beta != i.lambda.part(1) - i.lambda.part(2) - i.gamma ||
          e.delta != i.lambda.part(2) || !(hwv_inverse(e, m, 3) == i))
        return {false, "element mismatch at m = " + std::to_string(m)};
      image.insert(e);
    }
    if (image != std::set<HwvExponent>(hwv.begin(), hwv.end())) return {false, "image differs at m = " + std::to_string(m)};
  }
  return {true, "m <= 300"};
}

Outcome dimension_check() {
  for (unsigned m = 0; m <= 200; ++m) {
    std::uint64_t lhs = 0;
    for (const auto& i : filtration_indices(Family::K3Dim2, m)) lhs += i.lambda.part(0) - i.lambda.part(1) + 1;
    std::uint64_t count = 0;
    for (unsigned e = 0; e <= 1; ++e)
      for (unsigned c = 0; 5 * c + 3 * e <= m; ++c)
        for (unsigned d = 0; 5 * (c + d) + 3 * e <= m; ++d) count += m - 5 * (c + d) - 3 * e + 1;
    if (lhs != count) return {false, "mismatch at m = " + std::to_string(m)};
    if ((m == 3 && lhs != 5) || (m == 5 && lhs != 11)) return {false, "spot value mismatch"};
  }
  return {true, "m <= 200; m=3 -> 5, m=5 -> 11"};
}

Outcome chern() {
  const SparsePoly d = d_poly();
  const ChernData s = hypersurface_chern(3), t = hypersurface_chern(4);
  const bool c2 = s.integral({0, 1}) == d * (d * d - Rational(4) * d + Rational(6));
  const bool c1sq = s.integral({2}) == d * (d - Rational(4)).pow(2);
  const bool c3 = at_d(t.integral({0, 0, 1}), 5) == Rational(-200);
  return {c2 && c1sq && c3, "c2 = d(d^2-4d+6), c1^2 = d(d-4)^2, c3(4,5) = " + at_d(t.integral({0, 0, 1}), 5).to_string()};
}

Outcome chi_sanity() {
  set_chi_cache_path(std::nullopt);
  reset_chi_memo();
  CacheStatus s3, s2;
  chi_closed_form(ChiFamily::Schur3, &s3);
  chi_closed_form(ChiFamily::Sym2, &s2);
  const Rational a = chi_schur3(0, 0, 0, 0, 5), b = chi_schur3(1, 0, 0, 0, 5), c = chi_sym2(1, 0, 0, 4);
  const bool ok = a == Rational(0) && b == Rational(100) && c == Rational(-20) && s3 == CacheStatus::Disabled &&
                  s2 == CacheStatus::Disabled;
  return {ok, "derived from scratch: " + a.to_string() + ", " + b.to_string() + ", " + c.to_string()};
}

Outcome surface_leading() {
  std::string detail;
  bool ok = true;
  for (long d : {5L, 15L, 50L}) {
    const auto lc = leading_coeff([d](unsigned m) { return constant(chi_E(2, 2, m, d)); }, 4);
    const Rational expected = (Rational(13 * d * (d - 4) * (d - 4)) - Rational(9 * d * (d * d - 4 * d + 6))) / Rational(648);
    ok = ok && lc.value.constant_term() == expected;
    detail += (detail.empty() ? "" : ", ") + ("d=" + std::to_string(d) + ": " + lc.value.constant_term().to_string());
  }
  return {ok, detail};
}

Outcome threefold_leading() {
  std::string detail;
  bool ok = true;
  for (long d : {10L, 43L, 97L}) {
    const Integer dd(d);
    const auto lc = leading_coeff([dd](unsigned m) { return constant(chi_E(3, 3, m, dd, 4)); }, 9);
    const Rational dr(d);
    const Rational expected = dr * (Rational(389) * dr.pow(3) - Rational(20739) * dr * dr + Rational(185559) * dr -
                                    Rational(358873)) /
                              Rational(Integer(81648000000));
    ok = ok && lc.value.constant_term() == expected;
    detail += (detail.empty() ? "" : ", ") + ("d=" + std::to_string(d) + " exact (period " + std::to_string(lc.period) + ")");
  }
  return {ok, detail};
}

Outcome h2_leading() {
  const auto lc = leading_coeff([](unsigned m) { return constant(h2_sum(m, 4)); }, 9);
  const Rational target = Rational(49403) / Rational(Integer(2520000000));
  const Rational value = lc.value.constant_term();
  const Rational rel = (value / target - Rational(1)).abs();
  const bool exact = value == target;
  return {rel < Rational(1, 1000),
          value.to_string() + (exact ? " (exact match)" : " (differs from 49403/2520000000, rel " + rel.to_string() + ")")};
}

Outcome thresholds() {
  std::string detail;
  bool ok = true;
  for (const auto& [c, expected] : std::vector<std::pair<Criterion, long>>{
           {Criterion::Jets2Surface, 15}, {Criterion::Chi3Positive, 43}, {Criterion::H0MinusH2, 97}}) {
    const auto rep = threshold(c);
    ok = ok && rep.routes_agree && !rep.routes.empty();
    for (const auto& r : rep.routes) {
      if (!r.certificate) {
        ok = false;
        continue;
      }
      const auto& cert = *r.certificate;
      ok = ok && cert.d_min == expected && cert.before.sign() <= 0 && cert.at.sign() > 0 &&
           eval_d(r.expression, Rational(cert.d_min - 1)) == cert.before && eval_d(r.expression, Rational(cert.d_min)) == cert.at;
    }
    if (!rep.routes.empty() && rep.routes[0].certificate)
      detail += (detail.empty() ? "" : ", ") + (criterion_name(c) + " " + std::to_string(rep.routes[0].certificate->d_min));
  }
  return {ok, detail};
}

Outcome tangency() {
  std::size_t checked = 0;
  for (unsigned d : {4u, 5u, 6u}) {
    const UniversalCoords c2(3, d, 2), c0(3, d, 0);
    const auto eqs2 = build_equations(c2), eqs0 = build_equations(c0);
    for (auto fam : {FieldFamily::V300, FieldFamily::V210, FieldFamily::V111})
      for (const auto& [alpha, mu] : family_members(c2, fam)) {
        const auto v = explicit_family(c2, fam, alpha, mu);
        if (!check_tangency(v, eqs2) || v.pole_order(c2) != 3)
          return {false, field_family_name(fam) + " fails at d = " + std::to_string(d)};
        ++checked;
      }
    for (const auto& [alpha, mu] : family_members(c0, FieldFamily::V1)) {
      const auto v = explicit_family(c0, FieldFamily::V1, alpha, mu);
      if (!check_tangency(v, eqs0) || v.pole_order(c0) != 1) return {false, "V1 fails at d = " + std::to_string(d)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " fields, pole orders 3 and 1"};
}

Outcome slanted_and_cramer() {
  const UniversalCoords c(3, 5, 2);
  const auto eqs = build_equations(c);
  std::vector<Matrix3> mats(2);
  for (int i = 0; i < 3; ++i) mats[1][i][i] = Rational(1);
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 3; ++n) {
    Matrix3 a{};
    for (auto& row : a)
      for (auto& x : row) x = Rational(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 5) + 1);
    mats.push_back(a);
  }
  for (const auto& a : mats)
    if (!check_tangency(solve_slanted(c, eqs, a), eqs)) return {false, "slanted field not tangent"};
  unsigned worst = 0;
  for (unsigned d : {4u, 5u}) {
    const UniversalCoords cd(3, d, 2);
    const auto eqd = build_equations(cd);
    const auto free = wronskian_free(cd);
    for (int n = 0; n < 3; ++n) {
      std::map<Multi, SparsePoly> asg;
      for (const auto& alpha : free) {
        SparsePoly v = SparsePoly(cd.table(), static_cast<long>(rng() % 9) - 4);
        if (n > 0) v = v + cd.z_var(1 + static_cast<unsigned>(rng() % 3)) * Rational(static_cast<long>(rng() % 5) + 1);
        asg.insert_or_assign(alpha, v);
      }
      const auto f = wronskian_solve(cd, eqd, asg);
      if (!check_tangency(f, eqd)) return {false, "Cramer field not tangent"};
      worst = std::max(worst, f.pole_order(cd));
    }
  }
  return {worst <= 7, "5 slanted solves verified; max Cramer pole order " + std::to_string(worst)};
}

Outcome determinism() {
  const Rational one = chi_E(3, 3, 300, 43, 1);
  const bool ok = chi_E(3, 3, 300, 43, 4) == one && chi_E(3, 3, 300, 43, 8) == one;
  return {ok, "chi = " + one.to_string()};
}

}  // namespace

int main() {
  criterion(1, "quadratic relation", 1, relation_r);
  criterion(2, "invariance weights and group law", 5, invariance);
  criterion(3, "highest-weight bijection", 30, bijection);
  criterion(4, "dimension cross-check", 10, dimension_check);
  criterion(5, "Chern numbers", 1, chern);
  criterion(6, "chi sanity from scratch", 60, chi_sanity);
  criterion(7, "surface 2-jet leading coefficient", 60, surface_leading);
  criterion(8, "threefold 3-jet leading coefficient", 600, threefold_leading);
  criterion(9, "h2 sum leading coefficient", 300, h2_leading);
  criterion(10, "degree thresholds", 10, thresholds);
  criterion(11, "tangency of explicit families", 300, tangency);
  criterion(12, "slanted and Cramer solves", 300, slanted_and_cramer);
  criterion(13, "worker determinism", 0, determinism);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
