#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reachbound/polyalg/integrate.h"
#include "reachbound/sdpsolve/certificate.h"

namespace reachbound::cli {

inline constexpr const char* kToolVersion = "0.3.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitViolation = 3;

/// REACHBOUND_SEED if set and numeric, else 0.
std::uint64_t DefaultSeed();

struct SolveOptions {
  std::filesystem::path problem;
  std::optional<int> degree;
  Direction direction{Direction::kBackward};
  std::filesystem::path out{"out"};
  bool sdp_export{false};
  bool verbose{false};
};

struct VerifyOptions {
  std::filesystem::path problem;
  std::filesystem::path certificate;
  /// Outer samples; the inner check uses half as many grid points.
  int samples{1000};
  int pieces{5};
  std::uint64_t seed{0};
  int threads{0};
  std::filesystem::path out{"out"};
};

struct ContourOptions {
  std::filesystem::path problem;
  std::filesystem::path certificate;
  /// Defaults to omega.
  std::optional<std::vector<Interval>> window;
  int resolution{201};
  double level{1.0};
  std::filesystem::path out{"out"};
};

struct SizingOptions {
  std::filesystem::path problem;
  std::optional<int> degree;
  std::filesystem::path out{"out"};
};

/// Each command prints a human summary to `log`, writes its files and a
/// manifest under `out`, and returns an exit code. Errors are reported on
/// `err`.
int RunSolve(const SolveOptions& o, std::ostream& log, std::ostream& err);
int RunVerify(const VerifyOptions& o, std::ostream& log, std::ostream& err);
int RunContour(const ContourOptions& o, std::ostream& log, std::ostream& err);
int RunSizing(const SizingOptions& o, std::ostream& log, std::ostream& err);

/// The spec a certificate for `problem` must have been solved from: the
/// validated file, negated for forward certificates, at the given degree.
ProblemSpec SolvedSpec(const std::filesystem::path& problem, Direction direction,
                       std::optional<int> degree);

/// Solve pipeline without file output. Throws on any failure.
ValueCertificate SolveToCertificate(const ProblemSpec& solved, Direction direction,
                                    bool verbose = false);

struct VerifyResult {
  nlohmann::json report;
  bool passed{false};
};

/// Every check run by `verify`, gated as the command gates them. The report
/// carries no timestamps, so equal inputs give equal bytes.
VerifyResult VerifyCertificate(const ValueCertificate& cert, const VerifyOptions& o);

/// "a:b,c:d" -> intervals.
std::vector<Interval> ParseWindow(const std::string& text);

}  // namespace reachbound::cli
