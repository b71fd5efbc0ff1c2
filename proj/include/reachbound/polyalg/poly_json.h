#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reachbound/polyalg/polynomial.h"

namespace reachbound {

/// {"variables": [...], "terms": [[coefficient, [e_1, ..., e_k]], ...]} with
/// terms in graded-lex order.
nlohmann::json PolynomialToJson(const Polynomial& p);

/// Bare term array, graded-lex order. The variable list is declared elsewhere.
nlohmann::json TermsToJson(const Polynomial& p);

/// Accepts either the object form, or a bare term array whose exponent
/// vectors are indexed by `variables`. The result is embedded into
/// `variables` when given.
Polynomial PolynomialFromJson(
    const nlohmann::json& j,
    const std::optional<std::vector<std::string>>& variables = std::nullopt);

}  // namespace reachbound
