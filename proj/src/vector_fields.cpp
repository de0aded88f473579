#include <random>

#include "jetdiff/error.hpp"
#include "jetdiff/linalg.hpp"
#include "jetdiff/universal_vf.hpp"

namespace jetdiff {

namespace {

void require_threefold(const UniversalCoords& c) {
  if (c.n() != 3) raise(ErrorKind::UnsupportedAmbient, "vector fields are implemented for n = 3");
}

unsigned l1_distance(const Multi& a, const Multi& b) {
  unsigned s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  return s;
}

std::vector<Multi> z_monomials(unsigned max_total) {
  std::vector<Multi> out;
  for (unsigned t = 0; t <= max_total; ++t)
    for (unsigned i = 0; i <= t; ++i)
      for (unsigned j = 0; i + j <= t; ++j) out.push_back({i, j, t - i - j});
  return out;
}

/// D^s(z^α) for s = 0..k.
std::vector<SparsePoly> jet_powers(const UniversalCoords& c, const Multi& alpha) {
  std::vector<SparsePoly> out{c.z_power(alpha)};
  for (unsigned s = 1; s <= c.k(); ++s) out.push_back(jet_derivative(c, out.back()));
  return out;
}

SparsePoly det(const std::vector<std::vector<SparsePoly>>& m, const VarTablePtr& table) {
  const std::size_t n = m.size();
  if (n == 0) return SparsePoly(table, 1);
  if (n == 1) return m[0][0];
  SparsePoly out(table);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<SparsePoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<SparsePoly> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != col) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    SparsePoly term = m[0][col] * det(minor, table);
    if (col % 2) out -= term;
    else out += term;
  }
  return out;
}

/// ξ-part of the slanted field applied as a derivation.
SparsePoly apply_xi_part(const UniversalCoords& c, const Matrix3& a, const SparsePoly& p) {
  SparsePoly out(c.table());
  for (unsigned s = 1; s <= c.k(); ++s)
    for (unsigned j = 1; j <= 3; ++j) {
      if (!p.depends_on(c.xi(s, j))) continue;
      SparsePoly coeff(c.table());
      for (unsigned l = 1; l <= 3; ++l)
        if (!a[j - 1][l - 1].is_zero()) coeff += c.xi_var(s, l) * a[j - 1][l - 1];
      out += coeff * p.derivative(c.xi(s, j));
    }
  return out;
}

/// Solves Σ_α v_α(z) D^s(z^α) = target_s for s = 0..k with deg v_α ≤ 3 and α
/// restricted to `support`.
std::optional<std::map<Multi, SparsePoly>> solve_label(const UniversalCoords& c,
                                                       const std::map<Multi, std::vector<SparsePoly>>& powers,
                                                       const std::vector<Multi>& support,
                                                       const std::vector<SparsePoly>& targets) {
  static const std::vector<Multi> betas = z_monomials(3);
  std::map<std::pair<unsigned, Monomial>, std::size_t> row_of;
  SparseSystem sys;
  sys.unknowns = support.size() * betas.size();
  auto row = [&](unsigned s, const Monomial& e) -> std::size_t {
    auto [it, inserted] = row_of.try_emplace({s, e}, sys.rows.size());
    if (inserted) sys.add({}, Rational(0));
    return it->second;
  };
  for (std::size_t ai = 0; ai < support.size(); ++ai) {
    const auto& pw = powers.at(support[ai]);
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      const std::size_t unknown = ai * betas.size() + bi;
      for (unsigned s = 0; s < pw.size(); ++s)
        for (const auto& [e, coeff] : pw[s].terms()) {
          Monomial shifted = e;
          for (unsigned j = 0; j < 3; ++j) shifted[j] += betas[bi][j];
          sys.rows[row(s, shifted)][unknown] += coeff;
        }
    }
  }
  for (unsigned s = 0; s < targets.size(); ++s)
    for (const auto& [e, coeff] : targets[s].terms()) sys.rhs[row(s, e)] += coeff;
  const auto sol = solve(sys);
  if (!sol) return std::nullopt;
  std::map<Multi, SparsePoly> out;
  for (std::size_t ai = 0; ai < support.size(); ++ai) {
    SparsePoly v(c.table());
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      const Rational& x = (*sol)[ai * betas.size() + bi];
      if (!x.is_zero()) v += c.z_power(betas[bi]) * x;
    }
    if (!v.is_zero()) out.emplace(support[ai], std::move(v));
  }
  return out;
}

Rational draw(std::mt19937_64& rng) { return Rational(static_cast<long>(rng() % 19) - 9); }

}  // namespace

MeroField solve_slanted(const UniversalCoords& c, const JetEquations& eqs, const Matrix3& a_matrix) {
  require_threefold(c);
  if (c.k() < 1 || c.k() > 2) raise(ErrorKind::UnsupportedOrder, "slanted fields need jet order 1 or 2");
  std::vector<Multi> every = c.a_labels();
  every.push_back(c.normalized());
  std::map<Multi, std::vector<SparsePoly>> powers;
  for (const auto& alpha : every) powers.emplace(alpha, jet_powers(c, alpha));

  MeroField field(c.table());
  for (unsigned s = 1; s <= c.k(); ++s)
    for (unsigned j = 1; j <= 3; ++j) {
      SparsePoly coeff(c.table());
      for (unsigned l = 1; l <= 3; ++l)
        if (!a_matrix[j - 1][l - 1].is_zero()) coeff += c.xi_var(s, l) * a_matrix[j - 1][l - 1];
      field.add(c.xi(s, j), coeff);
    }

  // The a-coefficients are affine in a, so the system splits by a-label γ:
  // the label of z1^d contributes the constant part.
  for (const auto& gamma : every) {
    std::vector<SparsePoly> targets;
    bool trivial = true;
    for (const auto& p : powers.at(gamma)) {
      targets.push_back(-apply_xi_part(c, a_matrix, p));
      trivial = trivial && targets.back().is_zero();
    }
    if (trivial) continue;
    std::optional<std::map<Multi, SparsePoly>> sol;
    for (unsigned radius = 2; !sol && radius <= 2 * c.d(); ++radius) {
      std::vector<Multi> support;
      for (const auto& alpha : c.a_labels())
        if (l1_distance(alpha, gamma) <= radius) support.push_back(alpha);
      sol = solve_label(c, powers, support, targets);
    }
    if (!sol) raise(ErrorKind::NoSolution, "no slanted field with z-degree at most 3");
    const auto label = c.a(gamma);
    const SparsePoly weight =
        label ? SparsePoly::variable(c.table(), *label) : SparsePoly(c.table(), 1);
    for (const auto& [alpha, v] : *sol) field.add(*c.a(alpha), weight * v);
  }
  if (!check_tangency(field, eqs)) raise(ErrorKind::InternalInconsistency, "slanted field failed verification");
  return field;
}

std::vector<Multi> wronskian_unknowns(const UniversalCoords& c) {
  const std::vector<Multi> all{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  return {all.begin(), all.begin() + std::min<unsigned>(c.k(), 2) + 1};
}

std::vector<Multi> wronskian_free(const UniversalCoords& c) {
  const auto unknowns = wronskian_unknowns(c);
  std::vector<Multi> out;
  for (const auto& alpha : z_monomials(std::min<unsigned>(c.k(), 2)))
    if (c.a(alpha) && std::find(unknowns.begin(), unknowns.end(), alpha) == unknowns.end()) out.push_back(alpha);
  return out;
}

MeroField wronskian_solve(const UniversalCoords& c, const JetEquations& eqs,
                          const std::map<Multi, SparsePoly>& free_assignment) {
  require_threefold(c);
  if (c.k() > 2) raise(ErrorKind::UnsupportedOrder, "Cramer solve needs jet order at most 2");
  const auto unknowns = wronskian_unknowns(c);
  const auto free = wronskian_free(c);
  for (const auto& [alpha, v] : free_assignment) {
    if (std::find(free.begin(), free.end(), alpha) == free.end())
      raise(ErrorKind::IndexOutOfRange, "assignment outside the free multi-indices");
    require_same_table(v.table(), c.table());
  }
  const std::size_t n = unknowns.size();
  std::vector<std::vector<SparsePoly>> m(n);
  std::vector<SparsePoly> rhs(n, SparsePoly(c.table()));
  for (const auto& alpha : unknowns) {
    const auto pw = jet_powers(c, alpha);
    for (std::size_t s = 0; s < n; ++s) m[s].push_back(pw[s]);
  }
  for (const auto& [alpha, v] : free_assignment) {
    const auto pw = jet_powers(c, alpha);
    for (std::size_t s = 0; s < n; ++s) rhs[s] -= v * pw[s];
  }
  const SparsePoly den = det(m, c.table());
  if (den.is_zero()) raise(ErrorKind::SingularSystem, "Cramer determinant vanishes identically");

  MeroField field(c.table());
  field.denominator = den;
  for (const auto& [alpha, v] : free_assignment) field.add(*c.a(alpha), v * den);
  for (std::size_t i = 0; i < n; ++i) {
    auto mi = m;
    for (std::size_t s = 0; s < n; ++s) mi[s][i] = rhs[s];
    field.add(*c.a(unknowns[i]), det(mi, c.table()));
  }
  if (!check_tangency(field, eqs)) raise(ErrorKind::InternalInconsistency, "Cramer field failed verification");
  return field;
}

std::vector<Rational> random_point(const UniversalCoords& c, const JetEquations& eqs, std::uint64_t seed) {
  require_threefold(c);
  std::mt19937_64 rng(seed);
  const auto unknowns = wronskian_unknowns(c);
  std::vector<std::size_t> solved;
  for (const auto& alpha : unknowns) solved.push_back(*c.a(alpha));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Rational> point(c.size());
    for (auto& v : point) v = draw(rng);
    for (auto v : solved) point[v] = Rational(0);
    // Each equation is affine in the solved a's: constant part plus Σ coefficient · a.
    SparseSystem sys;
    sys.unknowns = solved.size();
    bool regular = true;
    Matrix lhs;
    for (std::size_t s = 0; s < solved.size(); ++s) {
      SparseRow row;
      std::vector<Rational> dense;
      for (std::size_t i = 0; i < solved.size(); ++i) {
        const Rational coeff = evaluate(eqs.eqs[s].derivative(solved[i]), point);
        dense.push_back(coeff);
        if (!coeff.is_zero()) row[i] = coeff;
      }
      lhs.push_back(dense);
      sys.add(std::move(row), -evaluate(eqs.eqs[s], point));
    }
    regular = rank(lhs) == solved.size();
    if (!regular) continue;
    const auto sol = solve(sys);
    if (!sol) continue;
    for (std::size_t i = 0; i < solved.size(); ++i) point[solved[i]] = (*sol)[i];
    bool on = true;
    for (const auto& eq : eqs.eqs) on = on && evaluate(eq, point).is_zero();
    if (!on) raise(ErrorKind::InternalInconsistency, "sampled point is off the variety");
    return point;
  }
  raise(ErrorKind::SingularSystem, "could not sample a regular point");
}

std::size_t tangent_dimension(const UniversalCoords& c, const JetEquations& eqs, const std::vector<Rational>& point) {
  Matrix jac;
  for (const auto& eq : eqs.eqs) {
    std::vector<Rational> row(c.size());
    for (std::size_t v = 0; v < c.size(); ++v)
      if (eq.depends_on(v)) row[v] = evaluate(eq.derivative(v), point);
    jac.push_back(std::move(row));
  }
  return c.size() - rank(std::move(jac));
}

std::size_t spanning_rank(const std::vector<MeroField>& fields, const std::vector<Rational>& point,
                          const UniversalCoords& c, const JetEquations& eqs) {
  if (point.size() != c.size()) raise(ErrorKind::InvalidArgument, "point has the wrong number of coordinates");
  for (const auto& eq : eqs.eqs)
    if (!evaluate(eq, point).is_zero()) raise(ErrorKind::PointNotOnVariety, "point does not satisfy the equations");
  if (c.k() >= 1) {
    bool zero = true;
    for (unsigned j = 1; j <= 3; ++j) zero = zero && point[c.xi(1, j)].is_zero();
    if (zero) raise(ErrorKind::PointInSigma, "first jet vanishes");
  }
  if (c.k() >= 2) {
    bool wedge_zero = true;
    for (unsigned i = 1; i <= 3; ++i)
      for (unsigned j = i + 1; j <= 3; ++j)
        wedge_zero = wedge_zero && (point[c.xi(1, i)] * point[c.xi(2, j)] - point[c.xi(1, j)] * point[c.xi(2, i)]).is_zero();
    if (wedge_zero) raise(ErrorKind::PointInSigma, "first and second jets are collinear");
  }
  Matrix m;
  for (const auto& f : fields) {
    const Rational den = evaluate(f.denominator, point);
    if (den.is_zero()) raise(ErrorKind::PointInSigma, "a field has a pole at the point");
    std::vector<Rational> row(c.size());
    for (const auto& [v, coeff] : f.coeffs) row[v] = evaluate(coeff, point) / den;
    m.push_back(std::move(row));
  }
  return rank(std::move(m));
}

std::vector<MeroField> spanning_collection(const UniversalCoords& c, const JetEquations& eqs) {
  require_threefold(c);
  std::vector<MeroField> out;
  const unsigned order = c.k() + 1;
  for (const auto& mu : z_monomials(order)) {
    if (mu[0] + mu[1] + mu[2] != order) continue;
    for (const auto& alpha : c.a_labels()) {
      if (alpha[0] < mu[0] || alpha[1] < mu[1] || alpha[2] < mu[2]) continue;
      out.push_back(binomial_field(c, alpha, mu));
    }
  }
  for (const auto& alpha : wronskian_free(c)) out.push_back(wronskian_solve(c, eqs, {{alpha, SparsePoly(c.table(), 1)}}));
  if (c.k() >= 1)
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned j = 0; j < 3; ++j) {
        Matrix3 e{};
        e[i][j] = Rational(1);
        out.push_back(solve_slanted(c, eqs, e));
      }
  for (unsigned j = 1; j <= 3; ++j) out.push_back(translation_field(c, j));
  return out;
}

}  // namespace jetdiff
