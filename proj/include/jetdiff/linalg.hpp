#pragma once

#include <map>
#include <optional>
#include <vector>

#include "jetdiff/rational.hpp"

namespace jetdiff {

using Matrix = std::vector<std::vector<Rational>>;

/// Exact rank by Gaussian elimination over the rationals.
std::size_t rank(Matrix m);

using SparseRow = std::map<std::size_t, Rational>;

struct SparseSystem {
  std::size_t unknowns = 0;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;

  void add(SparseRow row, Rational value);
};

/// One solution of the system (free unknowns set to 0), or nullopt when the
/// system is inconsistent.
std::optional<std::vector<Rational>> solve(const SparseSystem& sys);

}  // namespace jetdiff
