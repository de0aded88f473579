#include <random>

#include "doctest.h"
#include "jetdiff/error.hpp"
#include "jetdiff/poly.hpp"
#include "jetdiff/serialize.hpp"

using namespace jetdiff;

namespace {

VarTablePtr xyz() { return VarTable::make({"x", "y", "z"}); }

SparsePoly var(const VarTablePtr& t, const std::string& n) { return SparsePoly::variable(t, n); }

SparsePoly random_poly(std::mt19937_64& rng, const VarTablePtr& t, unsigned terms, unsigned max_exp) {
  SparsePoly p(t);
  for (unsigned i = 0; i < terms; ++i) {
    Monomial e(t->size());
    for (auto& x : e) x = static_cast<std::uint32_t>(rng() % (max_exp + 1));
    p.add_term(e, Rational(static_cast<long>(rng() % 19) - 9));
  }
  return p;
}

Rational brute_sum(const std::vector<Rational>& coeffs, long lo, long hi) {
  Rational total;
  for (long k = lo; k <= hi; ++k) {
    Rational pk, kp = 1;
    for (const auto& c : coeffs) {
      pk += c * kp;
      kp *= Rational(k);
    }
    total += pk;
  }
  return total;
}

}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(Rational(Integer(6), Integer(-4)).to_string() == "-3/2");
  CHECK(Rational(Integer(0), Integer(5)).to_string() == "0");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7").to_string() == "-7");
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
}

TEST_CASE("arithmetic examples") {
  const auto t = xyz();
  const SparsePoly x = var(t, "x"), y = var(t, "y");
  CHECK((x + Rational(1)) + (x - Rational(1)) == Rational(2) * x);
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x * y * Rational(7) * SparsePoly(t)).is_zero());
  CHECK((x - x).terms().empty());
}

TEST_CASE("mismatched tables are rejected") {
  const auto a = VarTable::make({"x"}), b = VarTable::make({"y"});
  CHECK_THROWS_AS(var(a, "x") + var(b, "y"), Error);
  try {
    (void)(var(a, "x") * var(b, "y"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MismatchedTables);
  }
}

TEST_CASE("exact division") {
  const auto t = xyz();
  const SparsePoly x = var(t, "x"), y = var(t, "y"), z = var(t, "z");
  CHECK(exact_div(x * x - y * y, x - y) == x + y);
  CHECK(exact_div((x - y) * (x - z) * (y - z), x - y) == (x - z) * (y - z));
  try {
    exact_div(x + Rational(1), x - Rational(1));
    FAIL("expected NotDivisible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDivisible);
  }
}

TEST_CASE("truncated exponential") {
  const auto t = VarTable::make({"x", "y", "h"});
  const SparsePoly x = var(t, "x"), y = var(t, "y"), h = var(t, "h");
  CHECK(truncated_exp(x, TruncationContext::uniform(t, 2)) == x + Rational(1) + Rational(1, 2) * x * x);
  CHECK(truncated_exp(x + y, TruncationContext::uniform(t, 1)) == x + y + Rational(1));
  CHECK(truncated_exp(Rational(3) * h, TruncationContext::uniform(t, 3)) ==
        Rational(3) * h + Rational(1) + Rational(9, 2) * h * h + Rational(9, 2) * h.pow(3));
  try {
    truncated_exp(x + Rational(1), TruncationContext::uniform(t, 2));
    FAIL("expected NonNilpotentArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonNilpotentArgument);
  }
}

TEST_CASE("truncated inverse") {
  const auto t = VarTable::make({"x"});
  const SparsePoly x = var(t, "x");
  const auto ctx = TruncationContext::uniform(t, 5);
  const SparsePoly p = x + Rational(2) + Rational(3) * x * x;
  CHECK(truncated_mul(p, truncated_inverse(p, ctx), ctx) == SparsePoly(t, 1));
}

TEST_CASE("symmetric reduction examples") {
  const auto t = xyz();
  const SparsePoly x = var(t, "x"), y = var(t, "y"), z = var(t, "z");
  const std::size_t two[] = {0, 1}, three[] = {0, 1, 2};
  CHECK(symmetric_to_elementary(x + y, two).to_string() == "e1");
  CHECK(symmetric_to_elementary(x * x + y * y, two).to_string() == "e1^2 - 2*e2");
  CHECK(symmetric_to_elementary(x * y * z, three).to_string() == "e3");
  try {
    symmetric_to_elementary(x * x + y, two);
    FAIL("expected NotSymmetric");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSymmetric);
  }
}

TEST_CASE("power sum examples") {
  const auto t = VarTable::make({"k", "N"});
  const SparsePoly k = var(t, "k"), n = var(t, "N"), zero(t);
  CHECK(definite_power_sum(k, 0, zero, n) == n * (n + Rational(1)) * Rational(1, 2));
  CHECK(definite_power_sum(k * k, 0, zero, n) == n * (n + Rational(1)) * (Rational(2) * n + Rational(1)) * Rational(1, 6));
  CHECK(definite_power_sum(k.pow(3), 0, SparsePoly(t, 1), SparsePoly(t, 3)) == SparsePoly(t, 36));
  CHECK(definite_power_sum(k.pow(4), 0, SparsePoly(t, 5), SparsePoly(t, 4)).is_zero());
}

TEST_CASE("property: ring axioms on random triples") {
  std::mt19937_64 rng(7);
  const auto t = xyz();
  for (int i = 0; i < 200; ++i) {
    const SparsePoly a = random_poly(rng, t, 4, 2), b = random_poly(rng, t, 4, 2), c = random_poly(rng, t, 4, 2);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
  }
}

TEST_CASE("property: exact_div inverts multiplication") {
  std::mt19937_64 rng(11);
  const auto t = xyz();
  for (int i = 0; i < 100; ++i) {
    const SparsePoly a = random_poly(rng, t, 4, 2);
    SparsePoly b = random_poly(rng, t, 3, 2);
    if (b.is_zero()) b = SparsePoly(t, 1);
    CHECK(exact_div(a * b, b) == a);
  }
}

TEST_CASE("property: symmetric reduction round trip") {
  std::mt19937_64 rng(13);
  const auto t = VarTable::make({"x1", "x2", "x3", "u"});
  const std::size_t roots[] = {0, 1, 2};
  const std::vector<SparsePoly> e{elementary_symmetric(t, roots, 1), elementary_symmetric(t, roots, 2),
                                  elementary_symmetric(t, roots, 3)};
  for (int i = 0; i < 30; ++i) {
    // Symmetrize a random polynomial by summing over S3.
    const SparsePoly seed = random_poly(rng, t, 3, 3);
    SparsePoly sym(t);
    const std::size_t perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perms) {
      std::vector<SparsePoly> images{var(t, "x1"), var(t, "x2"), var(t, "x3"), var(t, "u")};
      for (int j = 0; j < 3; ++j) images[j] = SparsePoly::variable(t, p[j]);
      sym += substitute(seed, images);
    }
    const SparsePoly reduced = symmetric_to_elementary(sym, roots);
    const auto& rt = reduced.table();
    std::vector<SparsePoly> back;
    for (std::size_t v = 0; v < rt->size(); ++v) {
      const std::string& name = rt->name(v);
      if (name == "u") back.push_back(var(t, "u"));
      else back.push_back(e.at(name[1] - '1'));
    }
    CHECK(substitute(reduced, back) == sym);
  }
}

TEST_CASE("property: exp of a sum is the product of exps") {
  std::mt19937_64 rng(17);
  const auto t = xyz();
  const auto ctx = TruncationContext::uniform(t, 4);
  for (int i = 0; i < 30; ++i) {
    SparsePoly p = random_poly(rng, t, 3, 2), q = random_poly(rng, t, 3, 2);
    p -= SparsePoly(t, p.constant_term());
    q -= SparsePoly(t, q.constant_term());
    CHECK(truncated_exp(p + q, ctx) == truncated_mul(truncated_exp(p, ctx), truncated_exp(q, ctx), ctx));
  }
}

TEST_CASE("property: definite power sums match brute force") {
  std::mt19937_64 rng(19);
  const auto t = VarTable::make({"k", "lo", "hi"});
  const SparsePoly k = var(t, "k");
  for (unsigned deg = 0; deg <= 9; ++deg) {
    std::vector<Rational> coeffs;
    SparsePoly p(t);
    for (unsigned j = 0; j <= deg; ++j) {
      coeffs.push_back(Rational(static_cast<long>(rng() % 19) - 9));
      p += k.pow(j) * coeffs.back();
    }
    const SparsePoly closed = definite_power_sum(p, 0, var(t, "lo"), var(t, "hi"));
    for (long lo = 0; lo <= 30; lo += 3)
      for (long hi = lo - 1; hi <= 30; hi += 2)
        CHECK(evaluate(closed, std::vector<Rational>{0, lo, hi}) == brute_sum(coeffs, lo, hi));
  }
}

TEST_CASE("serialization round trip") {
  const auto t = xyz();
  const SparsePoly p = Rational(-3, 7) * var(t, "x").pow(2) * var(t, "z") + Rational(5);
  const Json j = to_json(p);
  CHECK(j["vars"] == Json::array({"x", "y", "z"}));
  CHECK(j["terms"][0][1] == "5");
  CHECK(poly_from_json(j) == remap(p, poly_from_json(j).table()));
  CHECK(poly_from_json(j, t) == p);
  CHECK(to_json(Rational(-1, 2)) == "-1/2");
  CHECK(rational_from_json(Json("4/6")) == Rational(2, 3));
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"({"vars": ["x"], "terms": [[[1, 2], "1"]]})")), Error);
}
