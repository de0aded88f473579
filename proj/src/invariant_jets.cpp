#include "jetdiff/invariant_jets.hpp"

#include "jetdiff/error.hpp"

namespace jetdiff {

namespace {

VarTablePtr jet_table(unsigned n, unsigned k) {
  std::vector<std::string> names;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= k; ++j) names.push_back("f" + std::to_string(i) + "_" + std::to_string(j));
  for (unsigned j = 1; j <= k; ++j) names.push_back("b" + std::to_string(j));
  for (unsigned j = 1; j <= k; ++j) names.push_back("c" + std::to_string(j));
  names.push_back("lam");
  return VarTable::make(std::move(names));
}

}  // namespace

JetSpace::JetSpace(unsigned n, unsigned k) : n_(n), k_(k) {
  if (n == 0 || k == 0) raise(ErrorKind::InvalidArgument, "jet space needs n ≥ 1 and k ≥ 1");
  table_ = jet_table(n, k);
}

std::size_t JetSpace::f_index(unsigned i, unsigned j) const {
  if (i < 1 || i > n_ || j < 1 || j > k_) raise(ErrorKind::BadIndex, "jet variable index out of range");
  return (i - 1) * k_ + (j - 1);
}

std::size_t JetSpace::b_index(unsigned j) const {
  if (j < 1 || j > k_) raise(ErrorKind::BadIndex, "reparametrization index out of range");
  return n_ * k_ + j - 1;
}

std::size_t JetSpace::c_index(unsigned j) const {
  if (j < 1 || j > k_) raise(ErrorKind::BadIndex, "reparametrization index out of range");
  return n_ * k_ + k_ + j - 1;
}

ReparamMap reparam_jets(const JetSpace& space, std::vector<SparsePoly> phi) {
  const unsigned k = space.k();
  if (k > 3) raise(ErrorKind::UnsupportedOrder, "reparametrization supported for k ≤ 3");
  if (phi.size() != k) raise(ErrorKind::InvalidArgument, "need k series coefficients");
  const auto& table = space.table();

  // coef[s][j] = [t^j] φ(t)^s for 1 ≤ s ≤ j ≤ k.
  std::vector<std::vector<SparsePoly>> coef(k + 1, std::vector<SparsePoly>(k + 1, SparsePoly(table)));
  std::vector<SparsePoly> power(k + 1, SparsePoly(table));  // series φ^s, index = t-degree
  power[0] = SparsePoly(table, 1);
  for (unsigned s = 1; s <= k; ++s) {
    std::vector<SparsePoly> next(k + 1, SparsePoly(table));
    for (unsigned a = 0; a <= k; ++a) {
      if (power[a].is_zero()) continue;
      for (unsigned i = 1; a + i <= k; ++i) next[a + i] += power[a] * phi[i - 1];
    }
    power = std::move(next);
    for (unsigned j = s; j <= k; ++j) coef[s][j] = power[j];
  }

  ReparamMap map{k, phi, {}};
  for (unsigned i = 1; i <= space.n(); ++i) {
    for (unsigned j = 1; j <= k; ++j) {
      SparsePoly img(table);
      for (unsigned s = 1; s <= j; ++s) {
        const Rational scale = Rational(factorial(j)) / Rational(factorial(s));
        img += space.f(i, s) * coef[s][j] * scale;
      }
      map.images.emplace(space.f_index(i, j), std::move(img));
    }
  }
  return map;
}

ReparamMap reparam_jets(const JetSpace& space) {
  std::vector<SparsePoly> phi;
  for (unsigned j = 1; j <= space.k(); ++j) phi.push_back(space.b(j));
  return reparam_jets(space, std::move(phi));
}

namespace {

void need_order(const JetSpace& s, unsigned k) {
  if (s.k() < k) raise(ErrorKind::UnsupportedOrder, "generator needs jets of order " + std::to_string(k));
}

SparsePoly w_poly(const JetSpace& s, unsigned i, unsigned j, unsigned o) {
  return s.f(i, 1) * s.f(j, o) - s.f(i, o) * s.f(j, 1);
}

}  // namespace

WeightedInvariant gen_fprime(const JetSpace& s, unsigned i) { return {s.f(i, 1), 1}; }

WeightedInvariant gen_w(const JetSpace& s, unsigned i, unsigned j) {
  need_order(s, 2);
  return {w_poly(s, i, j, 2), 3};
}

WeightedInvariant gen_wk(const JetSpace& s, unsigned i, unsigned j, unsigned k) {
  need_order(s, 3);
  return {s.f(k, 1) * w_poly(s, i, j, 3) - Rational(3) * s.f(k, 2) * w_poly(s, i, j, 2), 5};
}

WeightedInvariant gen_W(const JetSpace& s) {
  if (s.n() != 3) raise(ErrorKind::BadIndex, "W is defined for n = 3 only");
  need_order(s, 3);
  SparsePoly det(s.table());
  const unsigned perms[6][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}, {1, 3, 2}, {3, 2, 1}, {2, 1, 3}};
  for (int p = 0; p < 6; ++p) {
    SparsePoly term = s.f(perms[p][0], 1) * s.f(perms[p][1], 2) * s.f(perms[p][2], 3);
    if (p < 3) det += term;
    else det -= term;
  }
  return {det, 6};
}

unsigned weight_of(const SparsePoly& p, const JetSpace& s) {
  if (p.is_zero()) raise(ErrorKind::InvalidArgument, "weight of the zero polynomial");
  std::optional<unsigned> w;
  for (const auto& [e, c] : p.terms()) {
    unsigned total = 0;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (!e[v]) continue;
      if (v >= s.n() * s.k()) raise(ErrorKind::InvalidArgument, "polynomial involves non-jet symbols");
      total += e[v] * (static_cast<unsigned>(v % s.k()) + 1);
    }
    if (w && *w != total) raise(ErrorKind::NotHomogeneous, "jet polynomial is not weighted-homogeneous");
    w = total;
  }
  return *w;
}

std::optional<unsigned> check_invariance(const SparsePoly& p, const JetSpace& s) {
  unsigned m;
  try {
    m = weight_of(p, s);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotHomogeneous) return std::nullopt;
    throw;
  }
  const SparsePoly moved = reparam_jets(s).apply(p);
  if (moved == s.b(1).pow(m) * p) return m;
  return std::nullopt;
}

bool verify_relation_R(unsigned n, unsigned i, unsigned j, long coefficient) {
  if (n < 2 || i < 1 || i >= j || j > n) raise(ErrorKind::BadIndex, "relation needs 1 ≤ i < j ≤ n");
  const JetSpace s(n, 3);
  const SparsePoly w = gen_w(s, i, j).poly;
  const SparsePoly lhs = Rational(coefficient) * w * w;
  const SparsePoly rhs = s.f(j, 1) * gen_wk(s, i, j, i).poly - s.f(i, 1) * gen_wk(s, i, j, j).poly;
  return (lhs - rhs).is_zero();
}

std::vector<HwvExponent> hwv_enumerate(unsigned m, unsigned dim) {
  if (dim != 2 && dim != 3) raise(ErrorKind::InvalidArgument, "dimension must be 2 or 3");
  std::vector<HwvExponent> out;
  const unsigned max_delta = dim == 3 ? m / 6 : 0;
  for (unsigned delta = 0; delta <= max_delta; ++delta)
    for (unsigned gamma = 0; 6 * delta + 5 * gamma <= m; ++gamma)
      for (unsigned beta = 0; 6 * delta + 5 * gamma + 3 * beta <= m; ++beta)
        out.push_back({m - 6 * delta - 5 * gamma - 3 * beta, beta, gamma, delta});
  return out;
}

std::uint64_t a3_graded_dim_dim2(unsigned m) {
  std::uint64_t total = 0;
  for (unsigned e = 0; e <= 1 && 3 * e <= m; ++e) {
    const unsigned rest = m - 3 * e;
    for (unsigned s = 0; 5 * s <= rest; ++s) total += std::uint64_t(s + 1) * (rest - 5 * s + 1);
  }
  return total;
}

}  // namespace jetdiff
