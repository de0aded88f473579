#include <random>

#include "doctest.h"
#include "jetdiff/error.hpp"
#include "jetdiff/universal_vf.hpp"

using namespace jetdiff;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

unsigned weight(const Multi& m) { return m[0] + m[1] + m[2]; }

Matrix3 random_matrix(std::mt19937_64& rng) {
  Matrix3 a{};
  for (auto& row : a)
    for (auto& x : row) x = Rational(static_cast<long>(rng() % 15) - 7, static_cast<long>(rng() % 4) + 1);
  return a;
}

}  // namespace

TEST_CASE("chart coordinates") {
  const UniversalCoords c(3, 4, 2);
  CHECK(c.n_d() == 34);
  CHECK(c.size() == 3 + 34 + 6);
  CHECK_FALSE(c.a({4, 0, 0}).has_value());
  CHECK(c.table()->name(*c.a({2, 1, 0})) == "a[2,1,0]");
  CHECK(c.is_xi(c.xi(2, 3)));
  CHECK(kind_of([] { UniversalCoords(5, 4, 1); }) == ErrorKind::UnsupportedAmbient);
  CHECK(kind_of([] { UniversalCoords(3, 4, 4); }) == ErrorKind::UnsupportedOrder);
}

TEST_CASE("jet equations are successive total derivatives") {
  const UniversalCoords c(3, 3, 2);
  const auto eqs = build_equations(c);
  REQUIRE(eqs.eqs.size() == 3);
  CHECK(eqs.eqs[1] == jet_derivative(c, eqs.eqs[0]));
  CHECK(eqs.eqs[2] == jet_derivative(c, eqs.eqs[1]));
  SparsePoly first(c.table());
  for (unsigned j = 1; j <= 3; ++j) first += eqs.eqs[0].derivative(c.z(j)) * c.xi_var(1, j);
  CHECK(eqs.eqs[1] == first);
}

TEST_CASE("binomial fields annihilate the hypersurface equation") {
  const UniversalCoords c(3, 5, 0);
  const auto eqs = build_equations(c);
  for (const auto& alpha : c.a_labels())
    for (unsigned j = 0; j < 3; ++j) {
      Multi mu{0, 0, 0};
      mu[j] = 1;
      if (alpha[j] == 0) continue;
      const auto v = binomial_field(c, alpha, mu);
      CHECK(v.apply(eqs.eqs[0]).is_zero());
      CHECK(v.pole_order(c) == 1);
    }
}

TEST_CASE("explicit families are tangent for d in 4..6") {
  for (unsigned d : {4u, 5u, 6u}) {
    const UniversalCoords c2(3, d, 2), c0(3, d, 0);
    const auto eqs2 = build_equations(c2), eqs0 = build_equations(c0);
    for (auto fam : {FieldFamily::V300, FieldFamily::V210, FieldFamily::V111}) {
      const auto members = family_members(c2, fam);
      CHECK_FALSE(members.empty());
      for (const auto& [alpha, mu] : members) {
        const auto v = explicit_family(c2, fam, alpha, mu);
        CHECK(check_tangency(v, eqs2));
        CHECK(v.pole_order(c2) == 3);
      }
    }
    for (const auto& [alpha, mu] : family_members(c0, FieldFamily::V1)) {
      const auto v = explicit_family(c0, FieldFamily::V1, alpha, mu);
      CHECK(check_tangency(v, eqs0));
      CHECK(v.pole_order(c0) == 1);
    }
  }
}

TEST_CASE("property: binomial fields are tangent exactly when |mu| exceeds the order") {
  for (unsigned k = 0; k <= 3; ++k) {
    const UniversalCoords c(3, 4, k);
    const auto eqs = build_equations(c);
    for (const auto& alpha : c.a_labels())
      for (unsigned a = 0; a <= alpha[0]; ++a)
        for (unsigned b = 0; b <= alpha[1]; ++b)
          for (unsigned g = 0; g <= alpha[2]; ++g) {
            const Multi mu{a, b, g};
            if (weight(mu) == 0 || weight(mu) > 4) continue;
            MeroField v(c.table());
            try {
              v = binomial_field(c, alpha, mu);
            } catch (const Error& e) {
              CHECK(e.kind() == ErrorKind::IndexOutOfRange);
              continue;
            }
            CHECK(check_tangency(v, eqs) == (weight(mu) >= k + 1));
          }
  }
}

TEST_CASE("family index errors") {
  const UniversalCoords c(3, 4, 2);
  CHECK(kind_of([&] { binomial_field(c, {1, 0, 0}, {2, 0, 0}); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([&] { binomial_field(c, {3, 2, 0}, {1, 0, 0}); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([&] { explicit_family(c, FieldFamily::V300, {2, 1, 0}, {2, 1, 0}); }) == ErrorKind::IndexOutOfRange);
  CHECK(parse_field_family(field_family_name(FieldFamily::V210)) == FieldFamily::V210);
}

TEST_CASE("translation fields are tangent at every order") {
  for (unsigned k = 0; k <= 3; ++k) {
    const UniversalCoords c(3, 5, k);
    const auto eqs = build_equations(c);
    for (unsigned j = 1; j <= 3; ++j) CHECK(check_tangency(translation_field(c, j), eqs));
  }
}

TEST_CASE("slanted solves") {
  const UniversalCoords c(3, 5, 2);
  const auto eqs = build_equations(c);
  std::vector<Matrix3> cases(2);
  for (int i = 0; i < 3; ++i) cases[1][i][i] = Rational(1);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 3; ++i) cases.push_back(random_matrix(rng));
  for (const auto& a : cases) {
    const auto v = solve_slanted(c, eqs, a);
    CHECK(check_tangency(v, eqs));
    CHECK(v.pole_order(c) <= 3);
    for (unsigned s = 1; s <= 2; ++s)
      for (unsigned i = 0; i < 3; ++i) {
        SparsePoly expected(c.table());
        for (unsigned j = 0; j < 3; ++j) expected += c.xi_var(s, j + 1) * a[i][j];
        const auto it = v.coeffs.find(c.xi(s, i + 1));
        CHECK((it == v.coeffs.end() ? SparsePoly(c.table()) : it->second) == expected);
      }
  }
  const UniversalCoords c0(3, 5, 0);
  CHECK(kind_of([&] { solve_slanted(c0, build_equations(c0), cases[1]); }) == ErrorKind::UnsupportedOrder);
}

TEST_CASE("Cramer solves") {
  for (unsigned d : {4u, 5u}) {
    const UniversalCoords c(3, d, 2);
    const auto eqs = build_equations(c);
    const auto free = wronskian_free(c);
    CHECK(free.size() == 7);
    const SparsePoly w12 = c.xi_var(1, 1) * c.xi_var(2, 2) - c.xi_var(1, 2) * c.xi_var(2, 1);
    std::vector<std::map<Multi, SparsePoly>> assignments(3);
    for (const auto& alpha : free) assignments[0].insert_or_assign(alpha, SparsePoly(c.table(), 1));
    assignments[1].insert_or_assign({0, 0, 1}, c.z_var(3));
    assignments[1].insert_or_assign({2, 0, 0}, SparsePoly(c.table(), 1));
    std::mt19937_64 rng(d);
    for (const auto& alpha : free)
      assignments[2].insert_or_assign(
          alpha, c.z_var(1 + static_cast<unsigned>(rng() % 3)) * Rational(static_cast<long>(rng() % 9) - 4) +
                     Rational(static_cast<long>(rng() % 9) - 4));
    for (const auto& asg : assignments) {
      const auto v = wronskian_solve(c, eqs, asg);
      CHECK(check_tangency(v, eqs));
      CHECK((v.denominator == w12 || v.denominator == -w12));
      CHECK(v.pole_order(c) <= 7);
    }
    CHECK(kind_of([&] { wronskian_solve(c, eqs, {{{0, 0, 0}, SparsePoly(c.table(), 1)}}); }) ==
          ErrorKind::IndexOutOfRange);
  }
}

TEST_CASE("random points lie on the variety and are reproducible") {
  const UniversalCoords c(3, 5, 2);
  const auto eqs = build_equations(c);
  const auto p = random_point(c, eqs, 17);
  for (const auto& e : eqs.eqs) CHECK(evaluate(e, p).is_zero());
  CHECK(random_point(c, eqs, 17) == p);
  CHECK_FALSE(random_point(c, eqs, 18) == p);
}

TEST_CASE("spanning rank equals the tangent dimension") {
  for (unsigned d : {4u, 5u})
    for (unsigned k = 0; k <= 2; ++k) {
      const UniversalCoords c(3, d, k);
      const auto eqs = build_equations(c);
      const auto p = random_point(c, eqs, 5 + d + k);
      const auto fields = spanning_collection(c, eqs);
      for (const auto& f : fields) CHECK(check_tangency(f, eqs));
      const std::size_t dim = tangent_dimension(c, eqs, p);
      CHECK(dim == c.n_d() + 2 * k + 2);
      CHECK(spanning_rank(fields, p, c, eqs) == dim);
    }
}

TEST_CASE("inadmissible points") {
  const UniversalCoords c(3, 4, 2);
  const auto eqs = build_equations(c);
  const auto fields = spanning_collection(c, eqs);
  auto p = random_point(c, eqs, 3);
  auto off = p;
  off[c.z(1)] += Rational(1, 7);
  CHECK(kind_of([&] { spanning_rank(fields, off, c, eqs); }) == ErrorKind::PointNotOnVariety);
  for (unsigned s = 1; s <= 2; ++s)
    for (unsigned j = 1; j <= 3; ++j) p[c.xi(s, j)] = 0;
  CHECK(kind_of([&] { spanning_rank(fields, p, c, eqs); }) == ErrorKind::PointInSigma);
}
