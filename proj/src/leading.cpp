#include <map>

#include "jetdiff/error.hpp"
#include "jetdiff/riemann_roch.hpp"

namespace jetdiff {

namespace {

SparsePoly lagrange_at(const std::vector<Rational>& xs, const std::vector<SparsePoly>& ys, const Rational& x) {
  SparsePoly out(ys.front().table());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rational weight = 1;
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i) weight *= (x - xs[j]) / (xs[i] - xs[j]);
    out += ys[i] * weight;
  }
  return out;
}

SparsePoly top_coefficient(const std::vector<Rational>& xs, const std::vector<SparsePoly>& ys) {
  SparsePoly out(ys.front().table());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i) denom *= xs[i] - xs[j];
    out += ys[i] * denom.inverse();
  }
  return out;
}

}  // namespace

LeadingCoefficient leading_coeff(const SeriesEvaluator& series, unsigned degree, const InterpolationPlan& plan) {
  if (plan.periods.empty() || plan.starts.empty())
    raise(ErrorKind::InvalidArgument, "interpolation plan needs at least one period and one start");
  std::map<unsigned, SparsePoly> seen;
  auto value = [&](unsigned m) -> const SparsePoly& {
    auto it = seen.find(m);
    if (it == seen.end()) it = seen.emplace(m, series(m)).first;
    return it->second;
  };

  for (unsigned period : plan.periods) {
    for (unsigned start : plan.starts) {
      std::vector<Rational> xs;
      std::vector<SparsePoly> ys;
      for (unsigned i = 1; i <= degree + 1; ++i) {
        xs.emplace_back(start + i * period);
        ys.push_back(value(start + i * period));
      }
      bool ok = true;
      std::vector<std::pair<unsigned, SparsePoly>> evidence;
      for (std::size_t i = 0; i < xs.size(); ++i) evidence.emplace_back(start + (i + 1) * period, ys[i]);
      for (unsigned h = 1; h <= plan.held_out && ok; ++h) {
        const unsigned m = start + (degree + 1 + h) * period;
        const SparsePoly& actual = value(m);
        ok = lagrange_at(xs, ys, Rational(m)) == actual;
        evidence.emplace_back(m, actual);
      }
      if (!ok) continue;
      return {degree, top_coefficient(xs, ys), period, start, std::move(evidence)};
    }
  }
  raise(ErrorKind::PeriodUndetermined, "no interpolation period validated on the held-out points");
}

}  // namespace jetdiff
