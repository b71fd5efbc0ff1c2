#include "reachbound/problem/problem_io.h"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include "reachbound/common/errors.h"
#include "reachbound/polyalg/poly_json.h"

namespace reachbound {

using nlohmann::json;

namespace {

std::vector<Interval> IntervalsFromJson(const json& j, const char* field) {
  std::vector<Interval> out;
  if (!j.is_array()) throw InputError(std::string(field) + " must be an array");
  for (const auto& iv : j) {
    if (!iv.is_array() || iv.size() != 2) {
      throw InputError(std::string(field) + " entries must be [lo, hi]");
    }
    out.push_back({iv[0].get<double>(), iv[1].get<double>()});
  }
  return out;
}

json IntervalsToJson(const std::vector<Interval>& v) {
  json out = json::array();
  for (const auto& iv : v) out.push_back(json::array({iv.lo, iv.hi}));
  return out;
}

Polynomial PolyField(const json& j, const char* field,
                     const std::vector<std::string>& vars) {
  if (!j.contains(field)) return Polynomial(vars);
  try {
    return PolynomialFromJson(j.at(field), vars);
  } catch (const std::exception& e) {
    throw InputError(std::string(field) + ": " + e.what());
  }
}

}  // namespace

ProblemSpec ProblemFromJson(const json& j) {
  ProblemSpec spec;
  try {
    spec.name = j.value("name", std::string());
    spec.n = j.at("n").get<int>();
    spec.m = j.value("m", 0);
    spec.variables = j.contains("variables")
                         ? j.at("variables").get<std::vector<std::string>>()
                         : DefaultVariableNames(spec.n, spec.m);
    const auto& vars = spec.variables;
    for (const auto& fi : j.at("f")) spec.f.push_back(PolynomialFromJson(fi, vars));
    spec.c = PolyField(j, "c", vars);
    spec.g = PolyField(j, "g", vars);
    spec.h_x = PolyField(j, "hX", vars);
    spec.h_y = PolyField(j, "hY", vars);
    spec.T = j.at("T").get<double>();
    spec.omega = IntervalsFromJson(j.at("omega"), "omega");
    spec.d = j.value("d", 4);
    const std::string mode = j.value("mode", std::string("reachability"));
    if (mode == "reachability") {
      spec.mode = ProblemMode::kReachability;
    } else if (mode == "general-ocp") {
      spec.mode = ProblemMode::kGeneralOcp;
    } else {
      throw InputError("mode must be 'reachability' or 'general-ocp'");
    }
    spec.y_bounding_box = j.contains("Y_bounding_box")
                              ? IntervalsFromJson(j.at("Y_bounding_box"), "Y_bounding_box")
                              : std::vector<Interval>{};
    if (j.contains("X_bounding_box")) {
      spec.x_bounding_box = IntervalsFromJson(j.at("X_bounding_box"), "X_bounding_box");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed problem file: ") + e.what());
  }
  return spec;
}

json ProblemToJson(const ProblemSpec& spec) {
  json f = json::array();
  for (const auto& fi : spec.f) f.push_back(TermsToJson(fi));
  json j{
      {"name", spec.name},
      {"n", spec.n},
      {"m", spec.m},
      {"variables", spec.variables},
      {"f", f},
      {"c", TermsToJson(spec.c)},
      {"g", TermsToJson(spec.g)},
      {"hX", TermsToJson(spec.h_x)},
      {"hY", TermsToJson(spec.h_y)},
      {"T", spec.T},
      {"omega", IntervalsToJson(spec.omega)},
      {"d", spec.d},
      {"mode", spec.mode == ProblemMode::kReachability ? "reachability" : "general-ocp"},
      {"Y_bounding_box", IntervalsToJson(spec.y_bounding_box)},
  };
  if (spec.x_bounding_box) j["X_bounding_box"] = IntervalsToJson(*spec.x_bounding_box);
  return j;
}

ProblemSpec LoadProblemFile(const std::filesystem::path& path,
                            const ValidateOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("problem file " + path.string() + " is not valid JSON: " + e.what());
  }
  ProblemSpec spec = ProblemFromJson(j);
  if (spec.name.empty()) spec.name = path.stem().string();
  return Validate(std::move(spec), options);
}

std::string Fnv1aHex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string SpecHash(const ProblemSpec& spec) {
  json j = ProblemToJson(spec);
  // The display name does not change the mathematical problem.
  j.erase("name");
  return Fnv1aHex(j.dump());
}

}  // namespace reachbound
