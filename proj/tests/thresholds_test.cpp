#include <random>

#include "doctest.h"
#include "jetdiff/error.hpp"
#include "jetdiff/thresholds.hpp"

using namespace jetdiff;

namespace {

SparsePoly poly_in_d(const std::vector<long>& coeffs) {
  SparsePoly p(sd_table());
  for (std::size_t i = 0; i < coeffs.size(); ++i) p += d_poly().pow(static_cast<unsigned>(i)) * Rational(coeffs[i]);
  return p;
}

/// Last d in [2, cap] with f(d) ≤ 0, plus one.
long brute_threshold(const SparsePoly& f, long cap) {
  long last = 1;
  for (long d = 2; d <= cap; ++d)
    if (eval_d(f, Rational(d)).sign() <= 0) last = d;
  return last + 1;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

void check_certificate(const SparsePoly& f, const ThresholdCertificate& c) {
  CHECK(eval_d(f, Rational(c.d_min - 1)) == c.before);
  CHECK(eval_d(f, Rational(c.d_min)) == c.at);
  if (c.d_min > 2) CHECK(c.before.sign() <= 0);
  for (long d = c.d_min; d <= c.d_min + 50; ++d) CHECK(eval_d(f, Rational(d)).sign() > 0);
}

}  // namespace

TEST_CASE("minimal_degree on simple polynomials") {
  CHECK(minimal_degree(poly_in_d({21, -10, 1})).d_min == 8);
  CHECK(minimal_degree(poly_in_d({100, -20, 1})).d_min == 11);
  CHECK(minimal_degree(poly_in_d({-1000, 0, 0, 1})).d_min == 11);
  CHECK(minimal_degree(poly_in_d({5})).d_min == 2);
  CHECK(kind_of([] { minimal_degree(poly_in_d({0, 10, -4})); }) == ErrorKind::NoThresholdFound);
  CHECK(kind_of([] { minimal_degree(poly_in_d({})); }) == ErrorKind::NoThresholdFound);
  ScanOptions tight;
  tight.cap = 100;
  CHECK(kind_of([&] { minimal_degree(poly_in_d({-5000, 1}), tight); }) == ErrorKind::NoThresholdFound);
  CHECK(kind_of([] { minimal_degree(s_poly() * d_poly()); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: minimal_degree matches a brute scan") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    // Product of (d - r_i) with roots in [-20, 80], times a positive constant.
    SparsePoly f(sd_table(), static_cast<long>(rng() % 5) + 1);
    const int deg = static_cast<int>(rng() % 4) + 1;
    for (int j = 0; j < deg; ++j) f = f * (d_poly() - Rational(static_cast<long>(rng() % 101) - 20));
    f = f + Rational(static_cast<long>(rng() % 7) - 3);
    const auto cert = minimal_degree(f);
    CHECK(cert.d_min == brute_threshold(f, 400));
    check_certificate(f, cert);
  }
}

TEST_CASE("Chern expressions") {
  const SparsePoly d = d_poly();
  CHECK(jets1_chern() == d * (SparsePoly(sd_table(), 10) - Rational(4) * d));
  CHECK(jets2_chern() == Rational(13) * d * (d - Rational(4)).pow(2) - Rational(9) * d * (d * d - Rational(4) * d + Rational(6)));
  CHECK(eval_d(jets2_chern(), 14) == Rational(-196));
  CHECK(eval_d(jets2_chern(), 15) == Rational(510));
}

TEST_CASE("first-order jets never suffice") {
  const auto rep = threshold(Criterion::Jets1Surface);
  REQUIRE(rep.routes.size() == 2);
  for (const auto& r : rep.routes) {
    CHECK_FALSE(r.certificate.has_value());
    CHECK_FALSE(r.error.empty());
  }
  CHECK(rep.routes_agree);
  CHECK(jets1_engine() == jets1_chern());
}

TEST_CASE("surface 2-jet threshold") {
  const auto rep = threshold(Criterion::Jets2Surface);
  CHECK(rep.routes_agree);
  for (const auto& r : rep.routes) {
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->d_min == 15);
    check_certificate(r.expression, *r.certificate);
  }
  CHECK(jets2_engine() == jets2_chern());
}

TEST_CASE("threefold thresholds") {
  const auto chi3 = threshold(Criterion::Chi3Positive);
  CHECK(chi3.routes_agree);
  for (const auto& r : chi3.routes) {
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->d_min == 43);
    check_certificate(r.expression, *r.certificate);
  }
  CHECK(chi3_engine() == chi3_displayed());

  CHECK(h2_constant_engine() == h2_constant_displayed());
  CHECK(h2_constant_displayed() == Rational(49403) / Rational(Integer(2520000000)));
  const auto h = threshold(Criterion::H0MinusH2);
  CHECK(h.routes_agree);
  for (const auto& r : h.routes) {
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->d_min == 97);
    check_certificate(r.expression, *r.certificate);
  }
  const SparsePoly cross = h0_minus_h2(chi3_engine(), h2_constant_engine());
  CHECK(minimal_degree(cross).d_min == 97);
}

TEST_CASE("twisted surface threshold at delta = 1/5") {
  const auto rep = threshold(Criterion::TwistedSurface, {{"delta", Rational(1, 5)}});
  REQUIRE_FALSE(rep.routes.empty());
  REQUIRE(rep.routes[0].certificate.has_value());
  CHECK(rep.routes[0].certificate->d_min == 231);
  CHECK(kind_of([] { threshold(Criterion::TwistedSurface); }) == ErrorKind::MissingParam);
  CHECK(kind_of([] { threshold(Criterion::TwistedSurface, {{"delta", Rational(1, 3)}}); }) ==
        ErrorKind::NoThresholdFound);
}

TEST_CASE("feasibility regions") {
  const auto s = feasibility("twisted-surface", {{"d", 50}, {"delta", Rational(1, 5)}});
  REQUIRE(s.parts.size() == 4);
  CHECK(s.parts[3].lhs == Rational(46, 5));
  CHECK(s.parts[3].holds);
  // (18/25 - 2 + 13/3) c1² - 3 c2 at d = 50.
  CHECK(s.parts[2].lhs == Rational(229, 75) * Rational(50 * 46 * 46) - Rational(3 * 50 * (2500 - 200 + 6)));

  CHECK_FALSE(feasibility("twisted-threefold", {{"d", 10000}, {"delta", Rational(1, 18)}}).feasible);
  CHECK(feasibility("twisted-threefold", {{"d", 10000}, {"delta", Rational(1, 20)}}).feasible);

  const auto deg = feasibility("deg-condition", {{"d", 18}, {"m", 6}, {"t", 1}});
  const Rational c1sq = 18 * 14 * 14, c2 = 18 * (324 - 72 + 6);
  CHECK(deg.parts[0].lhs == Rational(6) * (Rational(13) * c1sq - Rational(9) * c2));
  CHECK(deg.parts[0].rhs == Rational(12) * c1sq);
  CHECK(deg.feasible == (deg.parts[0].lhs > deg.parts[0].rhs));

  CHECK(kind_of([] { feasibility("deg-condition", {{"d", 18}, {"m", 6}}); }) == ErrorKind::MissingParam);
  CHECK(kind_of([] { feasibility("nowhere", {}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("criterion names round trip") {
  for (auto c : {Criterion::Jets1Surface, Criterion::Jets2Surface, Criterion::Chi3Positive, Criterion::H0MinusH2,
                 Criterion::TwistedSurface, Criterion::TwistedThreefold, Criterion::DegCondition})
    CHECK(parse_criterion(criterion_name(c)) == c);
  CHECK(kind_of([] { parse_criterion("jets9"); }) == ErrorKind::InvalidArgument);
}
