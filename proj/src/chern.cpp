#include "jetdiff/error.hpp"
#include "jetdiff/riemann_roch.hpp"

namespace jetdiff {

const VarTablePtr& sd_table() {
  static const VarTablePtr table = VarTable::make({"s", "d"});
  return table;
}

SparsePoly d_poly() { return SparsePoly::variable(sd_table(), 1); }
SparsePoly s_poly() { return SparsePoly::variable(sd_table(), 0); }

ChernData hypersurface_chern(unsigned ambient) {
  if (ambient != 3 && ambient != 4) raise(ErrorKind::UnsupportedAmbient, "ambient dimension must be 3 or 4");
  ChernData out;
  out.ambient = ambient;
  const SparsePoly minus_d = -d_poly();
  // (1+h)^{n+1} / (1+dh) up to h^{n-1}.
  for (unsigned i = 0; i < ambient; ++i) {
    SparsePoly ci(sd_table());
    for (unsigned b = 0; b <= i; ++b) ci += minus_d.pow(b) * Rational(binomial(ambient + 1, i - b));
    out.c.push_back(std::move(ci));
  }
  return out;
}

SparsePoly ChernData::integral(const std::vector<unsigned>& exponents) const {
  unsigned degree = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) degree += static_cast<unsigned>(i + 1) * exponents[i];
  if (degree != dim()) return SparsePoly(sd_table());
  SparsePoly prod = d_poly();
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i + 1 >= c.size() && exponents[i]) return SparsePoly(sd_table());
    if (exponents[i]) prod *= c[i + 1].pow(exponents[i]);
  }
  return prod;
}

}  // namespace jetdiff
