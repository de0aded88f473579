#include "jetdiff/rational.hpp"

#include <cctype>
#include <ostream>

#include "jetdiff/error.hpp"

namespace jetdiff {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MismatchedTables: return "MismatchedTables";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NonNilpotentArgument: return "NonNilpotentArgument";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::BadPartition: return "BadPartition";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::UnsupportedAmbient: return "UnsupportedAmbient";
    case ErrorKind::UnsupportedCase: return "UnsupportedCase";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::PeriodUndetermined: return "PeriodUndetermined";
    case ErrorKind::NoThresholdFound: return "NoThresholdFound";
    case ErrorKind::MissingParam: return "MissingParam";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::PointNotOnVariety: return "PointNotOnVariety";
    case ErrorKind::PointInSigma: return "PointInSigma";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) raise(ErrorKind::InvalidArgument, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  if (!valid_integer_text(s)) raise(ErrorKind::ParseError, "not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  const Integer num = parse_integer(trim(s.substr(0, slash)));
  const std::string_view den_text = trim(s.substr(slash + 1));
  if (!den_text.empty() && den_text[0] == '-')
    raise(ErrorKind::ParseError, "denominator must be positive: '" + std::string(text) + "'");
  const Integer den = parse_integer(den_text);
  if (den == 0) raise(ErrorKind::ParseError, "zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string Rational::to_string() const { return v_.get_str(10); }

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::inverse() const {
  if (is_zero()) raise(ErrorKind::InvalidArgument, "inverse of zero");
  return Rational(mpq_class(1 / v_));
}

Rational Rational::pow(unsigned e) const {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
  return Rational(n, d);
}

Integer Rational::floor() const {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) raise(ErrorKind::InvalidArgument, "division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace jetdiff
