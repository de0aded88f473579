#include "jetdiff/universal_vf.hpp"

#include <algorithm>
#include <functional>

#include "jetdiff/error.hpp"

namespace jetdiff {

namespace {

std::string label_name(const Multi& alpha) {
  std::string s = "a[";
  for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + std::to_string(alpha[i]);
  return s + "]";
}

unsigned weight(const Multi& alpha) {
  unsigned s = 0;
  for (auto x : alpha) s += x;
  return s;
}

void multi_indices(unsigned n, unsigned max_total, std::vector<Multi>& out) {
  Multi cur(n, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, max_total);
}

}  // namespace

UniversalCoords::UniversalCoords(unsigned n, unsigned d, unsigned k) : n_(n), d_(d), k_(k) {
  if (n != 3 && n != 4) raise(ErrorKind::UnsupportedAmbient, "ambient dimension must be 3 or 4");
  if (d < 2) raise(ErrorKind::InvalidArgument, "degree must be at least 2");
  if (k > 3) raise(ErrorKind::UnsupportedOrder, "jet order must be at most 3");
  std::vector<Multi> all;
  multi_indices(n, d, all);
  const Multi norm = normalized();
  std::vector<std::string> names;
  for (unsigned j = 1; j <= n; ++j) names.push_back("z" + std::to_string(j));
  for (const auto& alpha : all) {
    if (alpha == norm) continue;
    a_index_.emplace(alpha, names.size());
    labels_.push_back(alpha);
    names.push_back(label_name(alpha));
  }
  for (unsigned s = 1; s <= k; ++s)
    for (unsigned j = 1; j <= n; ++j) names.push_back("x" + std::to_string(s) + "_" + std::to_string(j));
  table_ = VarTable::make(std::move(names));
}

Multi UniversalCoords::normalized() const {
  Multi m(n_, 0);
  m[0] = d_;
  return m;
}

std::size_t UniversalCoords::z(unsigned j) const {
  if (j < 1 || j > n_) raise(ErrorKind::BadIndex, "z index out of range");
  return j - 1;
}

std::optional<std::size_t> UniversalCoords::a(const Multi& alpha) const {
  auto it = a_index_.find(alpha);
  if (it == a_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t UniversalCoords::xi(unsigned s, unsigned j) const {
  if (s < 1 || s > k_ || j < 1 || j > n_) raise(ErrorKind::BadIndex, "jet coordinate out of range");
  return n_ + labels_.size() + (s - 1) * n_ + (j - 1);
}

SparsePoly UniversalCoords::z_power(const Multi& alpha) const {
  Monomial e(size(), 0);
  for (unsigned j = 0; j < n_; ++j) e[j] = alpha.at(j);
  return SparsePoly::monomial(table_, std::move(e), 1);
}

unsigned UniversalCoords::z_degree(const SparsePoly& p) const {
  unsigned best = 0;
  for (const auto& [e, c] : p.terms()) {
    unsigned s = 0;
    for (unsigned j = 0; j < n_; ++j) s += e[j];
    best = std::max(best, s);
  }
  return best;
}

SparsePoly jet_derivative(const UniversalCoords& c, const SparsePoly& p) {
  if (c.k() == 0) raise(ErrorKind::UnsupportedOrder, "no jet coordinates at order 0");
  for (unsigned j = 1; j <= c.n(); ++j)
    if (p.depends_on(c.xi(c.k(), j))) raise(ErrorKind::UnsupportedOrder, "derivative needs jets beyond order k");
  SparsePoly out(c.table());
  for (unsigned j = 1; j <= c.n(); ++j) {
    out += c.xi_var(1, j) * p.derivative(c.z(j));
    for (unsigned s = 1; s < c.k(); ++s) out += c.xi_var(s + 1, j) * p.derivative(c.xi(s, j));
  }
  return out;
}

JetEquations build_equations(const UniversalCoords& c) {
  SparsePoly f = c.z_power(c.normalized());
  for (const auto& alpha : c.a_labels()) f += SparsePoly::variable(c.table(), *c.a(alpha)) * c.z_power(alpha);
  JetEquations out;
  out.eqs.push_back(std::move(f));
  for (unsigned s = 1; s <= c.k(); ++s) out.eqs.push_back(jet_derivative(c, out.eqs.back()));
  return out;
}

void MeroField::add(std::size_t var, const SparsePoly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = coeffs.try_emplace(var, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

SparsePoly MeroField::apply(const SparsePoly& p) const {
  SparsePoly out(table);
  for (const auto& [v, coeff] : coeffs) {
    if (!p.depends_on(v)) continue;
    out += coeff * p.derivative(v);
  }
  return out;
}

unsigned MeroField::pole_order(const UniversalCoords& c) const {
  unsigned best = 0;
  for (const auto& [v, coeff] : coeffs) best = std::max(best, c.z_degree(coeff));
  return best;
}

MeroField& MeroField::operator+=(const MeroField& o) {
  require_same_table(table, o.table);
  if (!(denominator == o.denominator)) raise(ErrorKind::InvalidArgument, "fields have different denominators");
  for (const auto& [v, coeff] : o.coeffs) add(v, coeff);
  return *this;
}

MeroField MeroField::scaled(const Rational& r) const {
  MeroField out(table);
  out.denominator = denominator;
  for (const auto& [v, coeff] : coeffs) out.add(v, coeff * r);
  return out;
}

bool check_tangency(const MeroField& field, const JetEquations& eqs) {
  for (const auto& eq : eqs.eqs)
    if (!field.apply(eq).is_zero()) return false;
  return true;
}

FieldFamily parse_field_family(const std::string& name) {
  if (name == "V300") return FieldFamily::V300;
  if (name == "V210") return FieldFamily::V210;
  if (name == "V111") return FieldFamily::V111;
  if (name == "V1") return FieldFamily::V1;
  raise(ErrorKind::InvalidArgument, "unknown field family '" + name + "'");
}

std::string field_family_name(FieldFamily f) {
  switch (f) {
    case FieldFamily::V300: return "V300";
    case FieldFamily::V210: return "V210";
    case FieldFamily::V111: return "V111";
    case FieldFamily::V1: return "V1";
  }
  return "?";
}

std::vector<Multi> family_exponents(FieldFamily f) {
  Multi base;
  switch (f) {
    case FieldFamily::V300: base = {3, 0, 0}; break;
    case FieldFamily::V210: base = {2, 1, 0}; break;
    case FieldFamily::V111: base = {1, 1, 1}; break;
    case FieldFamily::V1: base = {1, 0, 0}; break;
  }
  std::sort(base.begin(), base.end());
  std::vector<Multi> out;
  do out.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  std::reverse(out.begin(), out.end());
  return out;
}

MeroField binomial_field(const UniversalCoords& c, const Multi& alpha, const Multi& mu) {
  if (c.n() != 3) raise(ErrorKind::UnsupportedAmbient, "vector fields are implemented for n = 3");
  if (alpha.size() != 3 || mu.size() != 3) raise(ErrorKind::IndexOutOfRange, "multi-indices need three entries");
  if (weight(alpha) > c.d()) raise(ErrorKind::IndexOutOfRange, "|alpha| exceeds the degree");
  for (unsigned i = 0; i < 3; ++i)
    if (alpha[i] < mu[i]) raise(ErrorKind::IndexOutOfRange, "alpha must dominate the family exponent");
  MeroField field(c.table());
  for (unsigned n1 = 0; n1 <= mu[0]; ++n1)
    for (unsigned n2 = 0; n2 <= mu[1]; ++n2)
      for (unsigned n3 = 0; n3 <= mu[2]; ++n3) {
        const Multi target{alpha[0] - n1, alpha[1] - n2, alpha[2] - n3};
        const auto var = c.a(target);
        if (!var) raise(ErrorKind::IndexOutOfRange, "field touches the normalized coefficient");
        Integer coef = binomial(mu[0], n1) * binomial(mu[1], n2) * binomial(mu[2], n3);
        if ((n1 + n2 + n3) % 2) coef = -coef;
        field.add(*var, c.z_power({n1, n2, n3}) * Rational(coef));
      }
  return field;
}

MeroField explicit_family(const UniversalCoords& c, FieldFamily f, const Multi& alpha, const Multi& mu) {
  const auto allowed = family_exponents(f);
  if (std::find(allowed.begin(), allowed.end(), mu) == allowed.end())
    raise(ErrorKind::IndexOutOfRange, "exponent is not a permutation of the family's base");
  return binomial_field(c, alpha, mu);
}

std::vector<std::pair<Multi, Multi>> family_members(const UniversalCoords& c, FieldFamily f) {
  std::vector<std::pair<Multi, Multi>> out;
  const Multi norm = c.normalized();
  for (const auto& mu : family_exponents(f)) {
    std::vector<Multi> all;
    multi_indices(3, c.d(), all);
    for (const auto& alpha : all) {
      if (alpha == norm) continue;
      bool ok = true;
      for (unsigned i = 0; i < 3; ++i) ok = ok && alpha[i] >= mu[i];
      if (ok) out.emplace_back(alpha, mu);
    }
  }
  return out;
}

MeroField translation_field(const UniversalCoords& c, unsigned j) {
  const SparsePoly f = build_equations(UniversalCoords(c.n(), c.d(), 0)).eqs[0];
  MeroField field(c.table());
  field.add(c.z(j), SparsePoly(c.table(), 1));
  // Σ_α v_α z^α = −∂F/∂z_j, read coefficient by coefficient in z.
  const SparsePoly grad = remap(f.derivative(j - 1), c.table());
  std::vector<std::size_t> zs;
  for (unsigned i = 1; i <= c.n(); ++i) zs.push_back(c.z(i));
  for (const auto& [e, coeff] : collect(grad, zs)) {
    const auto var = c.a(Multi(e.begin(), e.end()));
    if (!var) raise(ErrorKind::InternalInconsistency, "translation needs the normalized coefficient");
    field.add(*var, -coeff);
  }
  return field;
}

}  // namespace jetdiff
