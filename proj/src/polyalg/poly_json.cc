#include "reachbound/polyalg/poly_json.h"

#include "reachbound/common/errors.h"

namespace reachbound {

using nlohmann::json;

json TermsToJson(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back(json::array({c, m.exponents()}));
  }
  return terms;
}

json PolynomialToJson(const Polynomial& p) {
  return json{{"variables", p.variables()}, {"terms", TermsToJson(p)}};
}

Polynomial PolynomialFromJson(
    const json& j, const std::optional<std::vector<std::string>>& variables) {
  std::vector<std::string> own;
  const json* terms = &j;
  if (j.is_object()) {
    own = j.at("variables").get<std::vector<std::string>>();
    terms = &j.at("terms");
  } else if (variables) {
    own = *variables;
  } else {
    throw InputError("bare term array needs a variable declaration");
  }
  if (!terms->is_array()) throw InputError("polynomial terms must be an array");
  Polynomial p(own);
  for (const auto& term : *terms) {
    if (!term.is_array() || term.size() != 2 || !term[1].is_array()) {
      throw InputError("polynomial term must be [coefficient, [exponents]]");
    }
    auto exps = term[1].get<std::vector<int>>();
    if (exps.size() != own.size()) {
      throw InputError("exponent vector has " + std::to_string(exps.size()) +
                       " entries, expected " + std::to_string(own.size()));
    }
    p.AddTerm(Monomial(std::move(exps)), term[0].get<double>());
  }
  if (variables && *variables != own) return p.EmbedInto(*variables);
  return p;
}

}  // namespace reachbound
