#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "reachbound/problem/problem_spec.h"

namespace reachbound {

/// Parses the problem-file schema
///   {n, m, f[], c, g, hX, hY, T, omega[], d, mode, Y_bounding_box[]}
/// with optional "name", "variables" and "X_bounding_box". Polynomials are
/// either bare term arrays over the ambient variables or objects carrying
/// their own variable list. The result is not validated.
ProblemSpec ProblemFromJson(const nlohmann::json& j);
nlohmann::json ProblemToJson(const ProblemSpec& spec);

/// Reads and validates a problem file.
ProblemSpec LoadProblemFile(const std::filesystem::path& path,
                            const ValidateOptions& options = {});

/// Stable 64-bit FNV-1a digest of the canonical JSON form, as 16 hex digits.
std::string SpecHash(const ProblemSpec& spec);
std::string Fnv1aHex(const std::string& bytes);

}  // namespace reachbound
