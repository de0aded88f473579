#include "jetdiff/verify.hpp"

#include "jetdiff/error.hpp"
#include "jetdiff/invariant_jets.hpp"

namespace jetdiff {

namespace {

std::string pair_name(unsigned i, unsigned j) { return std::to_string(i) + std::to_string(j); }

void relation_r(SuiteResult& out) {
  for (unsigned n = 2; n <= 3; ++n)
    for (unsigned i = 1; i <= n; ++i)
      for (unsigned j = i + 1; j <= n; ++j)
        out.cases.push_back({"n" + std::to_string(n) + "_w" + pair_name(i, j), verify_relation_R(n, i, j)});
}

void invariance(SuiteResult& out) {
  const JetSpace s(3, 3);
  auto check = [&](const std::string& name, const WeightedInvariant& g) {
    const auto w = check_invariance(g.poly, s);
    out.cases.push_back({name, w && *w == g.weight && weight_of(g.poly, s) == g.weight});
  };
  for (unsigned i = 1; i <= 3; ++i) check("fprime" + std::to_string(i), gen_fprime(s, i));
  for (unsigned i = 1; i <= 3; ++i)
    for (unsigned j = i + 1; j <= 3; ++j) {
      check("w" + pair_name(i, j), gen_w(s, i, j));
      for (unsigned k = 1; k <= 3; ++k) check("w" + pair_name(i, j) + "^" + std::to_string(k), gen_wk(s, i, j, k));
    }
  check("W", gen_W(s));
}

void unipotent(SuiteResult& out) {
  for (unsigned n = 2; n <= 3; ++n) {
    const JetSpace s(n, 3);
    std::map<std::size_t, SparsePoly> shift;
    for (unsigned j = 1; j <= 3; ++j) shift.emplace(s.f_index(2, j), s.lam() * s.f(1, j) + s.f(2, j));
    const auto moved = [&](const SparsePoly& p) { return substitute_vars(p, shift); };
    const std::string tag = "n" + std::to_string(n) + "_";
    const SparsePoly w = gen_w(s, 1, 2).poly, w1 = gen_wk(s, 1, 2, 1).poly, w2 = gen_wk(s, 1, 2, 2).poly;
    out.cases.push_back({tag + "w12_fixed", moved(w) == w});
    out.cases.push_back({tag + "w12^1_fixed", moved(w1) == w1});
    out.cases.push_back({tag + "w12^2_shift", moved(w2) == w2 + s.lam() * w1});
    if (n == 3) {
      const SparsePoly w3 = gen_wk(s, 1, 2, 3).poly;
      out.cases.push_back({tag + "w12^3_fixed", moved(w3) == w3});
    }
  }
}

void group_law(SuiteResult& out) {
  for (unsigned n = 1; n <= 3; ++n) {
    const JetSpace s(n, 3);
    const unsigned k = s.k();
    std::vector<SparsePoly> b, c;
    for (unsigned j = 1; j <= k; ++j) {
      b.push_back(s.b(j));
      c.push_back(s.c(j));
    }
    // [t^j] φ_b(φ_c(t)) for j ≤ k.
    std::vector<SparsePoly> composed(k, SparsePoly(s.table()));
    std::vector<SparsePoly> power(k + 1, SparsePoly(s.table()));
    power[0] = SparsePoly(s.table(), 1);
    for (unsigned i = 1; i <= k; ++i) {
      std::vector<SparsePoly> next(k + 1, SparsePoly(s.table()));
      for (unsigned a = 0; a <= k; ++a)
        for (unsigned e = 1; a + e <= k; ++e) next[a + e] += power[a] * c[e - 1];
      power = std::move(next);
      for (unsigned j = 1; j <= k; ++j) composed[j - 1] += b[i - 1] * power[j];
    }
    const ReparamMap first = reparam_jets(s, b), second = reparam_jets(s, c), direct = reparam_jets(s, composed);
    for (const auto& [var, img] : second.images) {
      const SparsePoly chained = first.apply(img);
      out.cases.push_back({"n" + std::to_string(n) + "_" + s.table()->name(var), chained == direct.images.at(var)});
    }
  }
}

}  // namespace

std::vector<std::string> SuiteResult::failures() const {
  std::vector<std::string> out;
  for (const auto& c : cases)
    if (!c.passed) out.push_back(c.name);
  return out;
}

std::vector<std::string> suite_names() { return {"relationR", "invariance", "unipotent", "group-law"}; }

SuiteResult run_suite(const std::string& suite) {
  SuiteResult out{suite, {}};
  if (suite == "relationR") relation_r(out);
  else if (suite == "invariance") invariance(out);
  else if (suite == "unipotent") unipotent(out);
  else if (suite == "group-law") group_law(out);
  else raise(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
  return out;
}

}  // namespace jetdiff
