#include "jetdiff/linalg.hpp"

#include "jetdiff/error.hpp"

namespace jetdiff {

std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.size() && m[pivot][c].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[r], m[pivot]);
    const Rational inv = m[r][c].inverse();
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c].is_zero()) continue;
      const Rational f = m[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

void SparseSystem::add(SparseRow row, Rational value) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= unknowns) raise(ErrorKind::BadIndex, "unknown index outside the system");
    it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }
  rows.push_back(std::move(row));
  rhs.push_back(std::move(value));
}

namespace {

void axpy(SparseRow& target, Rational& target_rhs, const SparseRow& src, const Rational& src_rhs,
          const Rational& f) {
  for (const auto& [c, v] : src) {
    auto [it, inserted] = target.try_emplace(c, -(f * v));
    if (!inserted) {
      it->second -= f * v;
      if (it->second.is_zero()) target.erase(it);
    }
  }
  target_rhs -= f * src_rhs;
}

}  // namespace

std::optional<std::vector<Rational>> solve(const SparseSystem& sys) {
  // Gauss-Jordan with pivots on the lowest remaining column of each row.
  std::vector<SparseRow> pivot_rows;
  std::vector<Rational> pivot_rhs;
  std::map<std::size_t, std::size_t> pivot_of;  // column -> index into pivot_rows

  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    SparseRow row = sys.rows[r];
    Rational value = sys.rhs[r];
    for (;;) {
      bool reduced = false;
      for (const auto& [c, v] : row) {
        auto p = pivot_of.find(c);
        if (p == pivot_of.end()) continue;
        const Rational f = v;
        axpy(row, value, pivot_rows[p->second], pivot_rhs[p->second], f);
        reduced = true;
        break;
      }
      if (!reduced) break;
    }
    if (row.empty()) {
      if (!value.is_zero()) return std::nullopt;
      continue;
    }
    const std::size_t col = row.begin()->first;
    const Rational inv = row.begin()->second.inverse();
    for (auto& [c, v] : row) v *= inv;
    value *= inv;
    // Keep earlier pivot rows free of the new pivot column.
    for (std::size_t i = 0; i < pivot_rows.size(); ++i) {
      auto it = pivot_rows[i].find(col);
      if (it == pivot_rows[i].end()) continue;
      const Rational f = it->second;
      axpy(pivot_rows[i], pivot_rhs[i], row, value, f);
    }
    pivot_of.emplace(col, pivot_rows.size());
    pivot_rows.push_back(std::move(row));
    pivot_rhs.push_back(std::move(value));
  }

  std::vector<Rational> x(sys.unknowns);
  for (const auto& [col, i] : pivot_of) x[col] = pivot_rhs[i];
  return x;
}

}  // namespace jetdiff
