#include <thread>

#include "jetdiff/error.hpp"
#include "jetdiff/riemann_roch.hpp"

namespace jetdiff {

namespace {

// Working symbols: x, y run over a stratum; M, G, H, K are its data.
const VarTablePtr& work_table() {
  static const VarTablePtr table = VarTable::make({"x", "y", "M", "G", "H", "K", "t", "s", "d"});
  return table;
}

enum W : std::size_t { X, Y, M, G, H, K, T, S, D };

SparsePoly w(std::size_t i) { return SparsePoly::variable(work_table(), i); }

/// Σ_{y=0}^{K} Σ_{x=y+G}^{H-y} P(M-2x-3y, x, y): one dimension-3 stratum with
/// gap G and weight M, given P(l1, l2, l3) over the work table.
SparsePoly dim3_stratum_form(const SparsePoly& p) {
  const SparsePoly inner = definite_power_sum(p, X, w(Y) + w(G), w(H) - w(Y));
  return definite_power_sum(inner, Y, SparsePoly(work_table()), w(K));
}

/// Σ_{x=G}^{H} P(M-3x, x) for a rank-2 stratum.
SparsePoly dim2_stratum_form(const SparsePoly& p) { return definite_power_sum(p, X, w(G), w(H)); }

const SparsePoly& chi3_form() {
  static const SparsePoly form = [] {
    const auto& chi = chi_closed_form(ChiFamily::Schur3).poly;
    const SparsePoly images[] = {w(M) - Rational(2) * w(X) - Rational(3) * w(Y), w(X), w(Y), w(T), w(D)};
    return dim3_stratum_form(substitute(chi, images));
  }();
  return form;
}

const SparsePoly& g_form() {
  static const SparsePoly form = [] {
    const SparsePoly l1 = w(M) - Rational(2) * w(X) - Rational(3) * w(Y), l2 = w(X), l3 = w(Y);
    const SparsePoly size = l1 + l2 + l3;
    return dim3_stratum_form(Rational(3, 2) * size.pow(3) * (l1 - l2) * (l1 - l3) * (l2 - l3));
  }();
  return form;
}

const SparsePoly& sym2_form() {
  static const SparsePoly form = [] {
    const auto& chi = chi_closed_form(ChiFamily::Sym2).poly;
    const SparsePoly images[] = {w(M) - Rational(3) * w(X), w(X), SparsePoly(work_table()), w(D)};
    return dim2_stratum_form(substitute(chi, images));
  }();
  return form;
}

struct Stratum {
  long m, g, h, k;
};

long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

/// Dimension-3 stratum with weight M and gap G; nullopt when it is empty.
std::optional<Stratum> dim3_stratum(long m_, long g) {
  const long k = floor_div(m_ - 4 * g, 6);
  if (k < 0) return std::nullopt;
  return Stratum{m_, g, floor_div(m_ - g, 3), k};
}

SparsePoly eval_stratum(const SparsePoly& form, const Stratum& s) {
  return partial_evaluate(form, {{M, Rational(s.m)}, {G, Rational(s.g)}, {H, Rational(s.h)}, {K, Rational(s.k)}});
}

/// Σ over strata split into contiguous chunks, one per worker, added back in
/// chunk order.
SparsePoly reduce(const SparsePoly& form, const std::vector<Stratum>& strata, unsigned workers) {
  if (workers == 0) raise(ErrorKind::InvalidArgument, "worker count must be at least 1");
  const std::size_t n = strata.size();
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  std::vector<SparsePoly> partial(chunks, SparsePoly(work_table()));
  auto run = [&](std::size_t c) {
    const std::size_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i) partial[c] += eval_stratum(form, strata[i]);
  };
  if (chunks == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(chunks);
    for (std::size_t c = 0; c < chunks; ++c)
      pool.emplace_back([&, c] {
        try {
          run(c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  SparsePoly total(work_table());
  for (const auto& p : partial) total += p;
  return total;
}

SparsePoly to_sd(const SparsePoly& p) { return remap(p, sd_table()); }

SparsePoly specialize(const SparsePoly& form, const std::optional<Integer>& d) {
  if (!d) return form;
  return partial_evaluate(form, {{D, Rational(*d)}});
}

SparsePoly chi_E_impl(unsigned k, unsigned dim, unsigned m, unsigned workers, bool twisted,
                      const std::optional<Integer>& d) {
  const bool supported = (k == 1 && dim == 2) || (k == 2 && dim == 2) || (k == 3 && dim == 2) || (k == 3 && dim == 3);
  if (!supported) raise(ErrorKind::UnsupportedCase, "unsupported (k, dim) pair");
  if (twisted && !(k == 3 && dim == 3)) raise(ErrorKind::UnsupportedCase, "twisted sums exist for (3,3) only");
  std::vector<Stratum> strata;
  SparsePoly form(work_table());

  if (dim == 3) {
    form = chi3_form();
    if (twisted) {
      const SparsePoly t = -(w(S) * Rational(m) * (w(D) - Rational(5)));
      form = substitute_vars(form, {{T, t}});
    } else {
      form = partial_evaluate(form, {{T, Rational(0)}});
    }
    for (long g = 0; 5 * g <= static_cast<long>(m); ++g)
      if (auto s = dim3_stratum(static_cast<long>(m) - g, g)) strata.push_back(*s);
  } else if (k == 1) {
    const SparsePoly& chi = chi_closed_form(ChiFamily::Sym2).poly;
    SparsePoly v = partial_evaluate(chi, {{0, Rational(m)}, {1, Rational(0)}, {2, Rational(0)}});
    if (d) v = partial_evaluate(v, {{3, Rational(*d)}});
    return remap(v, sd_table());
  } else if (k == 2) {
    form = sym2_form();
    strata.push_back({static_cast<long>(m), 0, static_cast<long>(m) / 3, 0});
  } else {
    form = sym2_form();
    for (long g = 0; 5 * g <= static_cast<long>(m); ++g)
      strata.push_back({static_cast<long>(m) - g, g, (static_cast<long>(m) - 2 * g) / 3, 0});
  }
  return to_sd(reduce(specialize(form, d), strata, workers));
}

}  // namespace

SparsePoly chi_E_poly(unsigned k, unsigned dim, unsigned m, unsigned workers, bool twisted) {
  return chi_E_impl(k, dim, m, workers, twisted, std::nullopt);
}

Rational chi_E(unsigned k, unsigned dim, unsigned m, const Integer& d, unsigned workers) {
  return chi_E_impl(k, dim, m, workers, false, d).constant_term();
}

Rational g_lambda(long l1, long l2, long l3) {
  const Rational size = Rational(l1 + l2 + l3);
  return Rational(3, 2) * size * size * size * Rational((l1 - l2) * (l1 - l3) * (l2 - l3));
}

Rational h2_sum(unsigned m, unsigned workers) {
  std::vector<Stratum> strata;
  for (long g = 1; 5 * g <= static_cast<long>(m); ++g)
    if (auto s = dim3_stratum(static_cast<long>(m) - g, g)) strata.push_back(*s);
  // γ = 0 with strict parts: same weight, gap 1.
  if (auto s = dim3_stratum(m, 1)) strata.push_back(*s);
  return reduce(g_form(), strata, workers).constant_term();
}

Rational h2_bound(unsigned m, const Integer& d, unsigned workers) {
  return Rational(d) * Rational(Integer(d + 13)) * h2_sum(m, workers);
}

}  // namespace jetdiff
