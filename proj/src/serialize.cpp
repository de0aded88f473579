#include "jetdiff/serialize.hpp"

#include "jetdiff/error.hpp"

namespace jetdiff {

Json to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) raise(ErrorKind::ParseError, "rational must be a JSON string");
  return Rational::parse(j.get<std::string>());
}

Json to_json(const SparsePoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json::array({e, c.to_string()}));
  return Json{{"vars", p.table()->names()}, {"terms", std::move(terms)}};
}

SparsePoly poly_from_json(const Json& j, VarTablePtr table) {
  try {
    auto names = j.at("vars").get<std::vector<std::string>>();
    if (!table || table->names() != names) table = VarTable::make(std::move(names));
    SparsePoly p(table);
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 2) raise(ErrorKind::ParseError, "malformed polynomial term");
      auto e = t[0].get<Monomial>();
      if (e.size() != table->size()) raise(ErrorKind::ParseError, "exponent vector has the wrong length");
      p.add_term(e, rational_from_json(t[1]));
    }
    return p;
  } catch (const nlohmann::json::exception& ex) {
    raise(ErrorKind::ParseError, std::string("bad polynomial document: ") + ex.what());
  }
}

}  // namespace jetdiff
