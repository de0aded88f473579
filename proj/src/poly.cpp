#include "jetdiff/poly.hpp"

#include <algorithm>
#include <sstream>

#include "jetdiff/error.hpp"

namespace jetdiff {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second)
      raise(ErrorKind::InvalidArgument, "duplicate variable name '" + names_[i] + "'");
  }
}

std::shared_ptr<const VarTable> VarTable::make(std::vector<std::string> names) {
  return std::make_shared<const VarTable>(std::move(names));
}

std::optional<std::size_t> VarTable::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarTable::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) raise(ErrorKind::BadIndex, "unknown variable '" + name + "'");
  return it->second;
}

void require_same_table(const VarTablePtr& a, const VarTablePtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) raise(ErrorKind::MismatchedTables, "polynomials use different variable tables");
}

SparsePoly::SparsePoly(VarTablePtr table) : table_(std::move(table)) {}

SparsePoly::SparsePoly(VarTablePtr table, const Rational& c) : table_(std::move(table)) {
  if (!c.is_zero()) terms_.emplace(zero_monomial(), c);
}

SparsePoly SparsePoly::variable(VarTablePtr table, std::size_t index) {
  if (index >= table->size()) raise(ErrorKind::BadIndex, "variable index out of range");
  Monomial e(table->size(), 0);
  e[index] = 1;
  return monomial(std::move(table), std::move(e), 1);
}

SparsePoly SparsePoly::variable(const VarTablePtr& table, const std::string& name) {
  return variable(table, table->index(name));
}

SparsePoly SparsePoly::monomial(VarTablePtr table, Monomial exponents, const Rational& c) {
  if (exponents.size() != table->size())
    raise(ErrorKind::InvalidArgument, "exponent vector length does not match the table");
  SparsePoly p(std::move(table));
  if (!c.is_zero()) p.terms_.emplace(std::move(exponents), c);
  return p;
}

bool SparsePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == zero_monomial());
}

void SparsePoly::add_term(const Monomial& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational SparsePoly::coefficient(const Monomial& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational() : it->second;
}

Rational SparsePoly::constant_term() const { return coefficient(zero_monomial()); }

unsigned SparsePoly::total_degree() const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (auto x : e) s += x;
    best = std::max(best, s);
  }
  return best;
}

unsigned SparsePoly::degree_in(std::size_t var) const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) best = std::max<unsigned>(best, e.at(var));
  return best;
}

bool SparsePoly::depends_on(std::size_t var) const { return degree_in(var) > 0; }

SparsePoly SparsePoly::derivative(std::size_t var) const {
  SparsePoly r(table_);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == 0) continue;
    Monomial f = e;
    --f[var];
    r.add_term(f, c * Rational(e[var]));
  }
  return r;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly result(table_, 1);
  SparsePoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

SparsePoly SparsePoly::scaled(const Rational& c) const { return *this * c; }

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool is_one = mag == Rational(1);
    bool any_var = false;
    std::ostringstream vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (any_var) vars << "*";
      vars << table_->name(i);
      if (e[i] > 1) vars << "^" << e[i];
      any_var = true;
    }
    if (!any_var) {
      os << mag;
    } else {
      if (!is_one) os << mag << "*";
      os << vars.str();
    }
  }
  return os.str();
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  require_same_table(table_, o.table_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  require_same_table(table_, o.table_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  require_same_table(a.table_, b.table_);
  SparsePoly r(a.table_);
  if (a.is_zero() || b.is_zero()) return r;
  const std::size_t n = a.table_->size();
  Monomial e(n);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

SparsePoly& SparsePoly::operator*=(const SparsePoly& o) {
  *this = *this * o;
  return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

SparsePoly operator-(const SparsePoly& a) { return a * Rational(-1); }

SparsePoly operator+(SparsePoly a, const Rational& c) {
  a.add_term(a.zero_monomial(), c);
  return a;
}

SparsePoly operator-(SparsePoly a, const Rational& c) {
  a.add_term(a.zero_monomial(), -c);
  return a;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  require_same_table(a.table_, b.table_);
  return a.terms_ == b.terms_;
}

TruncationContext TruncationContext::uniform(const VarTablePtr& table, std::uint32_t bound) {
  return {std::vector<std::uint32_t>(table->size(), 1), bound};
}

TruncationContext TruncationContext::on(const VarTablePtr& table, std::span<const std::size_t> vars,
                                        std::uint32_t bound) {
  TruncationContext ctx{std::vector<std::uint32_t>(table->size(), 0), bound};
  for (auto v : vars) ctx.weights.at(v) = 1;
  return ctx;
}

std::uint64_t TruncationContext::weight_of(const Monomial& e) const {
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < e.size(); ++i) w += static_cast<std::uint64_t>(weights[i]) * e[i];
  return w;
}

}  // namespace jetdiff
