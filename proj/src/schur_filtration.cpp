#include "jetdiff/schur_filtration.hpp"

#include <algorithm>
#include <functional>

#include "jetdiff/error.hpp"

namespace jetdiff {

Family parse_family(std::string_view name) {
  if (name == "k2dim2") return Family::K2Dim2;
  if (name == "k3dim2") return Family::K3Dim2;
  if (name == "k3dim3") return Family::K3Dim3;
  if (name == "gg" || name == "GG") return Family::GG;
  raise(ErrorKind::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::K2Dim2: return "k2dim2";
    case Family::K3Dim2: return "k3dim2";
    case Family::K3Dim3: return "k3dim3";
    case Family::GG: return "gg";
  }
  return "?";
}

unsigned Partition::size() const {
  unsigned s = 0;
  for (auto p : parts) s += p;
  return s;
}

namespace {

void sort_stratum(std::vector<FiltrationIndex>& v, std::size_t from) {
  std::sort(v.begin() + static_cast<long>(from), v.end(),
            [](const FiltrationIndex& a, const FiltrationIndex& b) { return a.lambda.parts > b.lambda.parts; });
}

void gg_tuples(unsigned m, unsigned k, std::vector<FiltrationIndex>& out) {
  std::vector<unsigned> l(k, 0);
  // Fill l_k, ..., l_2 and let l_1 absorb the rest.
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
    if (pos == 0) {
      l[0] = left;
      out.push_back({Family::GG, 0, {l}});
      return;
    }
    for (unsigned v = 0; (pos + 1) * v <= left; ++v) {
      l[pos] = v;
      rec(pos - 1, left - (pos + 1) * v);
    }
    l[pos] = 0;
  };
  rec(k - 1, m);
}

}  // namespace

std::vector<FiltrationIndex> filtration_indices(Family family, unsigned m, unsigned k) {
  std::vector<FiltrationIndex> out;
  switch (family) {
    case Family::K3Dim3:
      for (unsigned g = 0; 5 * g <= m; ++g) {
        const std::size_t from = out.size();
        const unsigned total = m - g;
        for (unsigned l3 = 0; 6 * l3 + 4 * g <= total; ++l3)
          for (unsigned l2 = l3 + g; 2 * l2 + 3 * l3 <= total; ++l2) {
            const unsigned l1 = total - 2 * l2 - 3 * l3;
            if (l1 >= l2 + g) out.push_back({family, g, {{l1, l2, l3}}});
          }
        sort_stratum(out, from);
      }
      break;
    case Family::K3Dim2:
      for (unsigned g = 0; 5 * g <= m; ++g) {
        const std::size_t from = out.size();
        const unsigned total = m - g;
        for (unsigned l2 = g; 2 * l2 <= total; ++l2) {
          const unsigned l1 = total - 2 * l2;
          if (l1 >= l2 + g) out.push_back({family, g, {{l1, l2}}});
        }
        sort_stratum(out, from);
      }
      break;
    case Family::K2Dim2:
      for (unsigned j = 0; 3 * j <= m; ++j) out.push_back({family, j, {{m - 3 * j, 0}}});
      break;
    case Family::GG:
      if (k == 0) raise(ErrorKind::InvalidArgument, "GG family needs k ≥ 1");
      gg_tuples(m, k, out);
      sort_stratum(out, 0);
      break;
  }
  return out;
}

Integer schur_dim(const Partition& lambda, unsigned r) {
  if (r != 2 && r != 3) raise(ErrorKind::BadPartition, "rank must be 2 or 3");
  for (std::size_t i = r; i < lambda.parts.size(); ++i)
    if (lambda.parts[i]) raise(ErrorKind::BadPartition, "partition has more parts than the rank");
  for (std::size_t i = 0; i + 1 < lambda.parts.size(); ++i)
    if (lambda.parts[i] < lambda.parts[i + 1]) raise(ErrorKind::BadPartition, "parts must be weakly decreasing");
  const Integer l1 = lambda.part(0), l2 = lambda.part(1), l3 = lambda.part(2);
  if (r == 2) return l1 - l2 + 1;
  return (l1 - l2 + 1) * (l2 - l3 + 1) * (l1 - l3 + 2) / 2;
}

Integer graded_dim_E(Family family, unsigned m, unsigned r, unsigned k) {
  Integer total = 0;
  for (const auto& idx : filtration_indices(family, m, k)) {
    if (family == Family::GG) {
      Integer prod = 1;
      for (auto l : idx.lambda.parts) prod *= binomial(l + r - 1, r - 1);
      total += prod;
    } else {
      total += schur_dim(idx.lambda, family == Family::K3Dim3 ? 3 : 2);
    }
  }
  return total;
}

HwvExponent hwv_bijection(const FiltrationIndex& idx, unsigned m) {
  const auto& lam = idx.lambda;
  const unsigned g = idx.gamma;
  if (idx.family == Family::K3Dim3) {
    if (lam.parts.size() > 3 || lam.part(0) < lam.part(1) + g || lam.part(1) < lam.part(2) + g ||
        lam.part(0) + 2 * lam.part(1) + 3 * lam.part(2) + g != m)
      raise(ErrorKind::ConstraintViolation, "index violates the dimension-3 constraints");
    return {lam.part(0) - lam.part(1) - g, lam.part(1) - lam.part(2) - g, g, lam.part(2)};
  }
  if (idx.family == Family::K3Dim2) {
    if (lam.parts.size() > 2 || lam.part(0) < lam.part(1) + g || lam.part(1) < g ||
        lam.part(0) + 2 * lam.part(1) + g != m)
      raise(ErrorKind::ConstraintViolation, "index violates the dimension-2 constraints");
    return {lam.part(0) - lam.part(1) - g, lam.part(1) - g, g, 0};
  }
  raise(ErrorKind::ConstraintViolation, "bijection is defined for k3dim3 and k3dim2 only");
}

FiltrationIndex hwv_inverse(const HwvExponent& e, unsigned m, unsigned dim) {
  if (dim == 3) {
    if (e.alpha + 3 * e.beta + 5 * e.gamma + 6 * e.delta != m)
      raise(ErrorKind::ConstraintViolation, "exponent has the wrong weight");
    const unsigned l3 = e.delta, l2 = e.beta + e.gamma + l3, l1 = e.alpha + e.gamma + l2;
    return {Family::K3Dim3, e.gamma, {{l1, l2, l3}}};
  }
  if (dim == 2) {
    if (e.delta != 0 || e.alpha + 3 * e.beta + 5 * e.gamma != m)
      raise(ErrorKind::ConstraintViolation, "exponent has the wrong weight");
    const unsigned l2 = e.beta + e.gamma, l1 = e.alpha + e.gamma + l2;
    return {Family::K3Dim2, e.gamma, {{l1, l2}}};
  }
  raise(ErrorKind::ConstraintViolation, "dimension must be 2 or 3");
}

std::pair<unsigned, unsigned> tower_dims(unsigned n, unsigned r, unsigned k) {
  if (r < 1 || n < r) raise(ErrorKind::InvalidArgument, "need n ≥ r ≥ 1");
  return {n + k * (r - 1), r};
}

}  // namespace jetdiff
