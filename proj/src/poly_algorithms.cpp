#include <algorithm>
#include <mutex>
#include <set>

#include "jetdiff/error.hpp"
#include "jetdiff/poly.hpp"

namespace jetdiff {

SparsePoly truncate(const SparsePoly& p, const TruncationContext& ctx) {
  SparsePoly r(p.table());
  for (const auto& [e, c] : p.terms())
    if (ctx.weight_of(e) <= ctx.bound) r.add_term(e, c);
  return r;
}

SparsePoly truncated_mul(const SparsePoly& a, const SparsePoly& b, const TruncationContext& ctx) {
  require_same_table(a.table(), b.table());
  SparsePoly r(a.table());
  const std::size_t n = a.table()->size();
  std::vector<std::pair<const SparsePoly::TermMap::value_type*, std::uint64_t>> bw;
  bw.reserve(b.size());
  for (const auto& t : b.terms()) bw.emplace_back(&t, ctx.weight_of(t.first));
  Monomial e(n);
  for (const auto& [ea, ca] : a.terms()) {
    const std::uint64_t wa = ctx.weight_of(ea);
    if (wa > ctx.bound) continue;
    for (const auto& [tb, wb] : bw) {
      if (wa + wb > ctx.bound) continue;
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + tb->first[i];
      r.add_term(e, ca * tb->second);
    }
  }
  return r;
}

SparsePoly homogeneous_part(const SparsePoly& p, const TruncationContext& ctx, std::uint64_t degree) {
  SparsePoly r(p.table());
  for (const auto& [e, c] : p.terms())
    if (ctx.weight_of(e) == degree) r.add_term(e, c);
  return r;
}

SparsePoly exact_div(const SparsePoly& num, const SparsePoly& den) {
  require_same_table(num.table(), den.table());
  if (den.is_zero()) raise(ErrorKind::InvalidArgument, "exact_div by the zero polynomial");
  const Monomial lead = den.terms().rbegin()->first;
  const Rational lead_c = den.terms().rbegin()->second;
  const std::size_t n = num.table()->size();

  SparsePoly q(num.table());
  SparsePoly r = num;
  Monomial shift(n), e(n);
  while (!r.is_zero()) {
    const auto& top = *r.terms().rbegin();
    for (std::size_t i = 0; i < n; ++i) {
      if (top.first[i] < lead[i]) raise(ErrorKind::NotDivisible, "polynomial is not an exact multiple of the divisor");
      shift[i] = top.first[i] - lead[i];
    }
    const Rational c = top.second / lead_c;
    q.add_term(shift, c);
    for (const auto& [ed, cd] : den.terms()) {
      for (std::size_t i = 0; i < n; ++i) e[i] = shift[i] + ed[i];
      r.add_term(e, -(c * cd));
    }
  }
  return q;
}

SparsePoly truncated_exp(const SparsePoly& p, const TruncationContext& ctx) {
  for (const auto& [e, c] : p.terms())
    if (ctx.weight_of(e) == 0)
      raise(ErrorKind::NonNilpotentArgument, "exponential argument has a weighted-degree-0 term");
  SparsePoly result(p.table(), 1);
  SparsePoly power(p.table(), 1);
  for (unsigned q = 1;; ++q) {
    power = truncated_mul(power, p, ctx);
    if (power.is_zero()) break;
    power *= Rational(1) / Rational(q);
    result += power;
  }
  return result;
}

SparsePoly truncated_inverse(const SparsePoly& p, const TruncationContext& ctx) {
  SparsePoly low = homogeneous_part(p, ctx, 0);
  if (!low.is_constant() || low.is_zero())
    raise(ErrorKind::InvalidArgument, "series inverse needs a nonzero constant leading part");
  const Rational c0 = low.constant_term();
  SparsePoly u = p * c0.inverse() - Rational(1);
  SparsePoly neg_u = -u;
  SparsePoly result(p.table(), 1);
  SparsePoly power(p.table(), 1);
  for (;;) {
    power = truncated_mul(power, neg_u, ctx);
    if (power.is_zero()) break;
    result += power;
  }
  return result * c0.inverse();
}

SparsePoly elementary_symmetric(const VarTablePtr& table, std::span<const std::size_t> vars, unsigned k) {
  // Coefficients of Π (1 + x_i T), built one factor at a time.
  std::vector<SparsePoly> e(k + 1, SparsePoly(table));
  e[0] = SparsePoly(table, 1);
  for (auto v : vars) {
    const SparsePoly x = SparsePoly::variable(table, v);
    for (unsigned j = k; j >= 1; --j) e[j] += e[j - 1] * x;
  }
  return e[k];
}

SparsePoly symmetric_to_elementary(const SparsePoly& p, std::span<const std::size_t> roots,
                                   std::vector<std::string> elementary_names) {
  const VarTablePtr& table = p.table();
  const std::size_t r = roots.size();
  std::set<std::size_t> root_set(roots.begin(), roots.end());
  if (root_set.size() != r) raise(ErrorKind::InvalidArgument, "repeated root variable");
  for (auto v : roots)
    if (v >= table->size()) raise(ErrorKind::BadIndex, "root variable out of range");
  if (elementary_names.empty())
    for (std::size_t i = 1; i <= r; ++i) elementary_names.push_back("e" + std::to_string(i));
  if (elementary_names.size() != r) raise(ErrorKind::InvalidArgument, "need one name per root");

  // Adjacent transpositions generate the symmetric group.
  for (std::size_t i = 0; i + 1 < r; ++i) {
    SparsePoly swapped(table);
    for (const auto& [e, c] : p.terms()) {
      Monomial f = e;
      std::swap(f[roots[i]], f[roots[i + 1]]);
      swapped.add_term(f, c);
    }
    if (!(swapped == p))
      raise(ErrorKind::NotSymmetric, "polynomial changes under a transposition of " + table->name(roots[i]) +
                                         " and " + table->name(roots[i + 1]));
  }

  std::vector<std::string> out_names;
  std::vector<std::size_t> keep;  // old index of each kept variable
  for (std::size_t i = 0; i < table->size(); ++i) {
    if (root_set.count(i)) continue;
    keep.push_back(i);
    out_names.push_back(table->name(i));
  }
  for (const auto& nm : elementary_names) out_names.push_back(nm);
  VarTablePtr out_table = VarTable::make(out_names);

  std::vector<SparsePoly> elem;
  for (unsigned k = 1; k <= r; ++k) elem.push_back(elementary_symmetric(table, roots, k));
  // elem_pow[k][j] = e_{k+1}^j, grown on demand.
  std::vector<std::vector<SparsePoly>> elem_pow(r);
  auto epow = [&](std::size_t k, unsigned j) -> const SparsePoly& {
    auto& cache = elem_pow[k];
    if (cache.empty()) cache.emplace_back(table, 1);
    while (cache.size() <= j) cache.push_back(cache.back() * elem[k]);
    return cache[j];
  };

  SparsePoly rest = p;
  SparsePoly out(out_table);
  std::vector<std::uint32_t> lead(r);
  while (!rest.is_zero()) {
    bool have = false;
    for (const auto& [e, c] : rest.terms()) {
      std::vector<std::uint32_t> re(r);
      for (std::size_t i = 0; i < r; ++i) re[i] = e[roots[i]];
      if (!have || re > lead) {
        lead = re;
        have = true;
      }
    }
    for (std::size_t i = 0; i + 1 < r; ++i)
      if (lead[i] < lead[i + 1]) raise(ErrorKind::NotSymmetric, "leading root exponent is not a partition");

    // Coefficient of the leading root monomial, as a polynomial in the rest.
    SparsePoly coeff(table);
    for (const auto& [e, c] : rest.terms()) {
      bool match = true;
      for (std::size_t i = 0; i < r && match; ++i) match = e[roots[i]] == lead[i];
      if (!match) continue;
      Monomial f = e;
      for (auto v : roots) f[v] = 0;
      coeff.add_term(f, c);
    }

    SparsePoly product(table, 1);
    Monomial out_exp(out_table->size(), 0);
    for (std::size_t k = 0; k < r; ++k) {
      const unsigned power = lead[k] - (k + 1 < r ? lead[k + 1] : 0);
      if (power) product *= epow(k, power);
      out_exp[keep.size() + k] = power;
    }
    rest -= coeff * product;
    for (const auto& [e, c] : coeff.terms()) {
      Monomial g = out_exp;
      for (std::size_t i = 0; i < keep.size(); ++i) g[i] = e[keep[i]];
      out.add_term(g, c);
    }
  }
  return out;
}

namespace {

std::vector<Rational> bernoulli_minus(unsigned n) {
  // B_1 = -1/2 convention.
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    Rational s;
    for (unsigned k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * b[k];
    b[m] = -s / Rational(m + 1);
  }
  return b;
}

}  // namespace

const std::vector<Rational>& faulhaber(unsigned j) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<Rational>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(j);
  if (it != cache.end()) return it->second;

  // S(N) = Σ_{k=0}^{N-1} k^j, then F(N) = S(N+1).
  const auto b = bernoulli_minus(j);
  std::vector<Rational> s(j + 2);
  for (unsigned i = 0; i <= j; ++i) s[j + 1 - i] = Rational(binomial(j + 1, i)) * b[i] / Rational(j + 1);
  std::vector<Rational> f(j + 2);
  for (unsigned p = 0; p < s.size(); ++p) {
    if (s[p].is_zero()) continue;
    for (unsigned q = 0; q <= p; ++q) f[q] += s[p] * Rational(binomial(p, q));
  }
  return cache.emplace(j, std::move(f)).first->second;
}

namespace {

// Σ_q coeffs[q]·x^q using a shared power table.
SparsePoly eval_univariate(const std::vector<Rational>& coeffs, std::vector<SparsePoly>& powers,
                           const SparsePoly& x) {
  while (powers.size() < coeffs.size()) powers.push_back(powers.back() * x);
  SparsePoly r(x.table());
  for (std::size_t q = 0; q < coeffs.size(); ++q)
    if (!coeffs[q].is_zero()) r += powers[q] * coeffs[q];
  return r;
}

}  // namespace

SparsePoly definite_power_sum(const SparsePoly& p, std::size_t var, const SparsePoly& lo, const SparsePoly& hi) {
  require_same_table(p.table(), lo.table());
  require_same_table(p.table(), hi.table());
  if (lo.depends_on(var) || hi.depends_on(var))
    raise(ErrorKind::InvalidArgument, "summation bounds may not involve the summation variable");
  const std::size_t idx[] = {var};
  const auto groups = collect(p, idx);
  const SparsePoly lo_minus = lo - Rational(1);
  std::vector<SparsePoly> hi_pow{SparsePoly(p.table(), 1)};
  std::vector<SparsePoly> lo_pow{SparsePoly(p.table(), 1)};
  SparsePoly out(p.table());
  for (const auto& [e, coeff] : groups) {
    const auto& f = faulhaber(e[0]);
    SparsePoly diff = eval_univariate(f, hi_pow, hi) - eval_univariate(f, lo_pow, lo_minus);
    out += coeff * diff;
  }
  return out;
}

SparsePoly substitute(const SparsePoly& p, std::span<const SparsePoly> images) {
  const std::size_t n = p.table()->size();
  if (images.size() != n) raise(ErrorKind::InvalidArgument, "need one image per variable");
  if (n == 0) return p;
  const VarTablePtr& target = images[0].table();
  for (const auto& img : images) require_same_table(target, img.table());
  std::vector<std::vector<SparsePoly>> powers(n);
  auto pw = [&](std::size_t i, unsigned e) -> const SparsePoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.emplace_back(target, 1);
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  SparsePoly out(target);
  for (const auto& [e, c] : p.terms()) {
    SparsePoly term(target, c);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i)
      if (e[i]) term *= pw(i, e[i]);
    out += term;
  }
  return out;
}

SparsePoly substitute_vars(const SparsePoly& p, const std::map<std::size_t, SparsePoly>& images) {
  std::vector<SparsePoly> all;
  all.reserve(p.table()->size());
  for (std::size_t i = 0; i < p.table()->size(); ++i) {
    auto it = images.find(i);
    if (it == images.end()) {
      all.push_back(SparsePoly::variable(p.table(), i));
    } else {
      require_same_table(p.table(), it->second.table());
      all.push_back(it->second);
    }
  }
  return substitute(p, all);
}

Rational evaluate(const SparsePoly& p, std::span<const Rational> values) {
  const std::size_t n = p.table()->size();
  if (values.size() != n) raise(ErrorKind::InvalidArgument, "need one value per variable");
  std::vector<std::vector<Rational>> powers(n);
  Rational out;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < n; ++i) {
      if (!e[i]) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.emplace_back(1);
      while (cache.size() <= e[i]) cache.push_back(cache.back() * values[i]);
      term *= cache[e[i]];
    }
    out += term;
  }
  return out;
}

SparsePoly partial_evaluate(const SparsePoly& p, const std::map<std::size_t, Rational>& values) {
  SparsePoly out(p.table());
  std::map<std::pair<std::size_t, unsigned>, Rational> cache;
  for (const auto& [e, c] : p.terms()) {
    Rational coeff = c;
    Monomial f = e;
    for (const auto& [i, v] : values) {
      if (!f.at(i)) continue;
      auto key = std::make_pair(i, f[i]);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, v.pow(f[i])).first;
      coeff *= it->second;
      f[i] = 0;
    }
    out.add_term(f, coeff);
  }
  return out;
}

SparsePoly remap(const SparsePoly& p, const VarTablePtr& target) {
  const auto& src = *p.table();
  std::vector<std::optional<std::size_t>> where(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) where[i] = target->find(src.name(i));
  SparsePoly out(target);
  for (const auto& [e, c] : p.terms()) {
    Monomial f(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!where[i]) raise(ErrorKind::MismatchedTables, "variable '" + src.name(i) + "' missing from target table");
      f[*where[i]] = e[i];
    }
    out.add_term(f, c);
  }
  return out;
}

std::map<Monomial, SparsePoly> collect(const SparsePoly& p, std::span<const std::size_t> vars) {
  std::map<Monomial, SparsePoly> out;
  Monomial key(vars.size());
  for (const auto& [e, c] : p.terms()) {
    Monomial f = e;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      key[k] = e.at(vars[k]);
      f[vars[k]] = 0;
    }
    auto it = out.find(key);
    if (it == out.end()) it = out.emplace(key, SparsePoly(p.table())).first;
    it->second.add_term(f, c);
  }
  return out;
}

}  // namespace jetdiff
