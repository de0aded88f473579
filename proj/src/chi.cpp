#include <algorithm>
#include <mutex>
#include <numeric>

#include "jetdiff/cache.hpp"
#include "jetdiff/error.hpp"
#include "jetdiff/riemann_roch.hpp"
#include "jetdiff/version.hpp"

namespace jetdiff {

std::string chi_family_name(ChiFamily f) { return f == ChiFamily::Schur3 ? "schur3" : "sym2"; }

std::string cache_status_name(CacheStatus s) {
  switch (s) {
    case CacheStatus::Memory: return "memory";
    case CacheStatus::Hit: return "hit";
    case CacheStatus::Miss: return "miss";
    case CacheStatus::Corrupt: return "corrupt";
    case CacheStatus::Disabled: return "disabled";
  }
  return "?";
}

namespace {

int permutation_sign(const std::vector<std::size_t>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

}  // namespace

namespace {

/// s_λ(e^{y_1}, ..., e^{y_r}) as a truncated series: the alternant with
/// exponents `shifted` over the alternant with exponents r-1, ..., 0, both
/// divided by the Vandermonde product first.
SparsePoly bialternant(const VarTablePtr& table, const std::vector<std::size_t>& roots,
                       const std::vector<SparsePoly>& shifted, const std::vector<std::size_t>& graded,
                       unsigned bound) {
  const unsigned r = static_cast<unsigned>(roots.size());
  const TruncationContext top_ctx = TruncationContext::on(table, graded, bound + r * (r - 1) / 2);
  const TruncationContext ctx = TruncationContext::on(table, graded, bound);
  std::vector<SparsePoly> rho;
  for (unsigned j = 1; j <= r; ++j) rho.emplace_back(table, Rational(r - j));

  SparsePoly num(table), den(table);
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const int sign = permutation_sign(perm);
    SparsePoly arg(table), arg0(table);
    for (unsigned i = 0; i < r; ++i) {
      const SparsePoly y = SparsePoly::variable(table, roots[i]);
      arg += shifted[perm[i]] * y;
      arg0 += rho[perm[i]] * y;
    }
    num += truncated_exp(arg, top_ctx) * Rational(sign);
    den += truncated_exp(arg0, top_ctx) * Rational(sign);
  } while (std::next_permutation(perm.begin(), perm.end()));

  SparsePoly vandermonde(table, 1);
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = i + 1; j < r; ++j)
      vandermonde *= SparsePoly::variable(table, roots[i]) - SparsePoly::variable(table, roots[j]);

  SparsePoly num_q(table), den_q(table);
  try {
    num_q = exact_div(num, vandermonde);
    den_q = exact_div(den, vandermonde);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotDivisible) throw;
    raise(ErrorKind::InternalInconsistency, "bialternant numerator is not divisible by the Vandermonde product");
  }
  return truncated_mul(num_q, truncated_inverse(den_q, ctx), ctx);
}

}  // namespace

SparsePoly schur_character(const std::vector<unsigned>& lambda, unsigned r, unsigned bound) {
  if (r < 1 || lambda.size() > r) raise(ErrorKind::BadPartition, "partition has more parts than the rank");
  std::vector<unsigned> parts = lambda;
  parts.resize(r, 0);
  for (unsigned i = 1; i < r; ++i)
    if (parts[i] > parts[i - 1]) raise(ErrorKind::BadPartition, "parts must be weakly decreasing");
  std::vector<std::string> names;
  for (unsigned i = 1; i <= r; ++i) names.push_back("y" + std::to_string(i));
  const VarTablePtr table = VarTable::make(names);
  std::vector<std::size_t> roots(r);
  std::iota(roots.begin(), roots.end(), 0);
  std::vector<SparsePoly> shifted;
  for (unsigned j = 1; j <= r; ++j) shifted.emplace_back(table, Rational(parts[j - 1] + r - j));
  return bialternant(table, roots, shifted, roots, bound);
}

ChiPolynomial derive_chi(ChiFamily family) {
  const bool schur3 = family == ChiFamily::Schur3;
  const unsigned r = schur3 ? 3 : 2;  // rank of T*_X = dim X
  const unsigned dim = r;

  std::vector<std::string> params = schur3 ? std::vector<std::string>{"l1", "l2", "l3", "t", "d"}
                                           : std::vector<std::string>{"p", "j", "t", "d"};
  std::vector<std::string> names = params;
  for (unsigned i = 1; i <= r; ++i) names.push_back("y" + std::to_string(i));
  names.push_back("h");
  const VarTablePtr table = VarTable::make(names);
  auto var = [&](const std::string& n) { return SparsePoly::variable(table, n); };

  std::vector<std::size_t> roots;
  for (unsigned i = 1; i <= r; ++i) roots.push_back(table->index("y" + std::to_string(i)));
  std::vector<std::size_t> graded = roots;
  graded.push_back(table->index("h"));

  const TruncationContext ctx = TruncationContext::on(table, graded, dim);

  // Shifted exponents λ_j + r - j of the bialternant.
  std::vector<SparsePoly> shifted;
  if (schur3) {
    for (unsigned j = 1; j <= 3; ++j) shifted.push_back(var("l" + std::to_string(j)) + Rational(3 - j));
  } else {
    shifted.push_back(var("p") + Rational(1));
    shifted.emplace_back(table);
  }
  const SparsePoly ch = bialternant(table, roots, shifted, graded, dim);

  // Todd class of T_X written in the roots y of T*_X: Π y/(e^y - 1).
  SparsePoly td(table, 1);
  for (auto root : roots) {
    const SparsePoly y = SparsePoly::variable(table, root);
    SparsePoly series(table), power(table, 1);
    for (unsigned k = 0; k <= dim; ++k) {
      series += power * (Rational(1) / Rational(factorial(k + 1)));
      power *= y;
    }
    td = truncated_mul(td, truncated_inverse(series, ctx), ctx);
  }

  SparsePoly twist = schur3 ? var("t") : var("t") + var("j") * (var("d") - Rational(4));
  const SparsePoly line = truncated_exp(twist * var("h"), ctx);
  const SparsePoly total = truncated_mul(truncated_mul(ch, td, ctx), line, ctx);
  const SparsePoly top = homogeneous_part(total, ctx, dim);

  std::vector<std::string> e_names;
  for (unsigned i = 1; i <= r; ++i) e_names.push_back("e" + std::to_string(i));
  const SparsePoly sym = symmetric_to_elementary(top, roots, e_names);
  const VarTablePtr& st = sym.table();

  // e_i(y) = c_i(T*_X) = (-1)^i c_i(T_X) h^i.
  const ChernData chern = hypersurface_chern(dim + 1);
  const SparsePoly h = SparsePoly::variable(st, "h");
  std::map<std::size_t, SparsePoly> images;
  for (unsigned i = 1; i <= r; ++i) {
    SparsePoly ci = remap(chern.c[i], st) * h.pow(i);
    if (i % 2) ci = -ci;
    images.emplace(st->index("e" + std::to_string(i)), std::move(ci));
  }
  const SparsePoly in_h = substitute_vars(sym, images);

  const std::size_t h_index[] = {st->index("h")};
  const auto by_h = collect(in_h, h_index);
  SparsePoly coeff(st);
  if (auto it = by_h.find(Monomial{dim}); it != by_h.end()) coeff = it->second;
  coeff *= SparsePoly::variable(st, "d");
  return {family, remap(coeff, VarTable::make(params))};
}

namespace {

struct ChiMemo {
  std::mutex mu;
  std::optional<std::filesystem::path> path;
  std::map<ChiFamily, std::unique_ptr<ChiPolynomial>> memo;
};

ChiMemo& memo() {
  static ChiMemo m;
  return m;
}

}  // namespace

void set_chi_cache_path(std::optional<std::filesystem::path> path) {
  std::lock_guard lock(memo().mu);
  memo().path = std::move(path);
}

std::optional<std::filesystem::path> chi_cache_path() {
  std::lock_guard lock(memo().mu);
  return memo().path;
}

void reset_chi_memo() {
  std::lock_guard lock(memo().mu);
  memo().memo.clear();
}

const ChiPolynomial& chi_closed_form(ChiFamily family, CacheStatus* status) {
  auto& m = memo();
  std::lock_guard lock(m.mu);
  auto set = [&](CacheStatus s) {
    if (status) *status = s;
  };
  if (auto it = m.memo.find(family); it != m.memo.end()) {
    set(CacheStatus::Memory);
    return *it->second;
  }
  const std::string key = chi_family_name(family);
  const std::string version(kEngineVersion);

  std::unique_ptr<ChiPolynomial> result;
  CacheStatus outcome = CacheStatus::Disabled;
  if (m.path) {
    ChiCache cache(*m.path);
    LoadOutcome lo;
    if (auto payload = cache.load(key, version, &lo)) {
      try {
        result = std::make_unique<ChiPolynomial>(ChiPolynomial{family, poly_from_json(Json::parse(*payload))});
        outcome = CacheStatus::Hit;
      } catch (const std::exception&) {
        outcome = CacheStatus::Corrupt;
      }
    } else {
      outcome = lo == LoadOutcome::Corrupt ? CacheStatus::Corrupt : CacheStatus::Miss;
    }
  }
  if (!result) {
    result = std::make_unique<ChiPolynomial>(derive_chi(family));
    if (m.path) {
      try {
        ChiCache(*m.path).store(make_cache_entry(key, version, to_json(result->poly).dump()));
      } catch (const Error&) {
      }
    }
  }
  set(outcome);
  return *m.memo.emplace(family, std::move(result)).first->second;
}

Rational chi_schur3(long l1, long l2, long l3, const Rational& t, const Rational& d) {
  const Rational v[] = {l1, l2, l3, t, d};
  return evaluate(chi_closed_form(ChiFamily::Schur3).poly, v);
}

Rational chi_sym2(long p, long j, const Rational& t, const Rational& d) {
  const Rational v[] = {p, j, t, d};
  return evaluate(chi_closed_form(ChiFamily::Sym2).poly, v);
}

}  // namespace jetdiff
