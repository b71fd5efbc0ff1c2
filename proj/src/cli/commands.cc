#include "reachbound/cli/commands.h"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "reachbound/certbuild/multiplier_degrees.h"
#include "reachbound/certbuild/sos_program.h"
#include "reachbound/common/errors.h"
#include "reachbound/problem/problem_io.h"
#include "reachbound/problem/trivial_certificate.h"
#include "reachbound/sdpsolve/ipm_solver.h"
#include "reachbound/sdpsolve/sdp_instance.h"
#include "reachbound/sdpsolve/sdpa_io.h"
#include "reachbound/verify/containment.h"
#include "reachbound/verify/contour.h"
#include "reachbound/verify/simulate.h"
#include "reachbound/verify/value_checks.h"

namespace reachbound::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t DefaultSeed() {
  const char* env = std::getenv("REACHBOUND_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  return *end == '\0' ? v : 0;
}

namespace {

constexpr int kFlowSamples = 100;
constexpr double kFlowTolerance = 1e-5;

std::string Timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

class Manifest {
 public:
  Manifest(std::string command, fs::path out, json options)
      : command_(std::move(command)), out_(std::move(out)), options_(std::move(options)),
        started_(Timestamp()) {
    fs::create_directories(out_);
  }

  void set_spec_hash(const std::string& h) { spec_hash_ = h; }
  void set_solver(json s) { solver_ = std::move(s); }

  fs::path Write(const std::string& name, const std::string& contents) {
    const fs::path p = out_ / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InputError("cannot write " + p.string());
    f << contents;
    outputs_.push_back(name);
    return p;
  }

  void Finish() {
    json j{{"command", command_},
           {"tool_version", kToolVersion},
           {"spec_hash", spec_hash_},
           {"options", options_},
           {"started", started_},
           {"finished", Timestamp()},
           {"outputs", outputs_}};
    if (!solver_.is_null()) j["solver"] = solver_;
    std::ofstream f(out_ / ("manifest_" + command_ + ".json"));
    f << j.dump(1) << "\n";
  }

 private:
  std::string command_;
  fs::path out_;
  json options_;
  std::string started_;
  std::string spec_hash_;
  json solver_;
  std::vector<std::string> outputs_;
};

json SolverSummary(const ValueCertificate& c) {
  return {{"status", c.solver_status},
          {"iterations", c.solver.iterations},
          {"primal_residual", c.solver.primal_residual},
          {"dual_residual", c.solver.dual_residual},
          {"gap", c.solver.gap},
          {"epsilon", c.epsilon}};
}

// Runs body and maps exceptions to exit codes.
template <typename F>
int Guard(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: invalid problem\n";
    for (const auto& d : e.diagnostics()) err << "  - " << d << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CertificateError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitSolver;
  }
}

std::string WindowText(const std::vector<Interval>& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i].lo << ":" << w[i].hi;
  return os.str();
}

double StateRadius(const ProblemSpec& spec) {
  double r = 0.0;
  for (const auto& iv : StateRegionBox(spec)) r = std::max({r, std::abs(iv.lo), std::abs(iv.hi)});
  return r;
}

}  // namespace

ProblemSpec SolvedSpec(const fs::path& problem, Direction direction, std::optional<int> degree) {
  ProblemSpec spec = LoadProblemFile(problem);
  if (degree) spec = WithDegree(spec, *degree);
  if (direction == Direction::kForward) spec = NegateField(spec);
  return spec;
}

ValueCertificate SolveToCertificate(const ProblemSpec& solved, Direction direction, bool verbose) {
  const SosProgram program = BuildSosProgram(solved);
  SolverOptions so;
  so.verbose = verbose;
  const SdpSolution sol = Solve(Compile(program), so);
  return ExtractCertificate(sol, program, direction);
}

int RunSolve(const SolveOptions& o, std::ostream& log, std::ostream& err) {
  return Guard(err, [&] {
    const ProblemSpec spec = SolvedSpec(o.problem, o.direction, o.degree);
    const std::string hash = SpecHash(spec);
    Manifest manifest("solve", o.out,
                      {{"problem", o.problem.string()},
                       {"degree", spec.d},
                       {"direction", ToString(o.direction)},
                       {"sdp_export", o.sdp_export}});
    manifest.set_spec_hash(hash);
    if (OmegaLooksInsideTarget(spec)) {
      err << "warning: omega appears to lie inside X_0 = {g <= 1}; the gap objective will say "
             "little about the reachable set boundary\n";
    }
    const SosProgram program = BuildSosProgram(spec);
    const SdpInstance inst = Compile(program);
    if (o.sdp_export) {
      manifest.Write("program.dat-s",
                     WriteSdpa(ToSdpa(inst), "reachbound " + spec.name + " spec_hash=" + hash));
    }
    SolverOptions so;
    so.verbose = o.verbose;
    const SdpSolution sol = Solve(inst, so);
    log << "problem " << spec.name << "  d = " << spec.d << "  direction " << ToString(o.direction)
        << "\n";
    log << "solver: " << ToString(sol.status) << " (" << sol.message << ") after "
        << sol.diagnostics.iterations << " iterations\n";
    if (sol.status != SolveStatus::kOptimal) {
      manifest.Finish();
      err << "solver failure: " << sol.message << "\n";
      return kExitSolver;
    }
    const ValueCertificate cert = ExtractCertificate(sol, program, o.direction);
    manifest.Write("certificate.json", CertificateToJson(cert).dump(1) + "\n");
    manifest.set_solver(SolverSummary(cert));
    manifest.Finish();
    log << std::setprecision(10) << "epsilon = " << cert.epsilon << "\n";
    log << "max identity residual " << cert.max_identity_residual() << ", min Gram eigenvalue "
        << cert.min_gram_eigenvalue() << "\n";
    log << "wrote " << (o.out / "certificate.json").string() << "\n";
    return kExitOk;
  });
}

VerifyResult VerifyCertificate(const ValueCertificate& cert, const VerifyOptions& o) {
  VerifyResult res;
  json& r = res.report;
  r["problem"] = cert.problem_name;
  r["spec_hash"] = cert.spec_hash;
  r["direction"] = ToString(cert.direction);
  r["degree"] = cert.degree;
  r["seed"] = o.seed;
  bool passed = true;

  const auto residuals = IdentityResiduals(cert);
  double max_res = 0.0;
  for (const auto& [name, v] : residuals) max_res = std::max(max_res, v);
  const bool gram_ok = cert.min_gram_eigenvalue() >= kClampFloor;
  const bool identity_ok = max_res <= kMaxIdentityResidual;
  r["certificate"] = {{"identity_residuals", residuals},
                      {"max_identity_residual", max_res},
                      {"min_gram_eigenvalue", cert.min_gram_eigenvalue()},
                      {"passed", gram_ok && identity_ok}};
  passed &= gram_ok && identity_ok;

  const DissipationReport diss = CheckDissipationGrid(cert);
  r["dissipation"] = ToJson(diss);
  passed &= diss.passed();

  ContainmentOptions co;
  co.outer_samples = o.samples;
  co.inner_samples = o.samples / 2;
  co.pieces = o.pieces;
  co.seed = o.seed;
  co.threads = o.threads;
  const ContainmentReport cont = CheckContainment(cert, co);
  r["containment"] = ToJson(cont);
  passed &= cont.passed();

  const FlowIdentityReport flow = CheckFlowIdentities(cert.spec, kFlowSamples, o.seed, kFlowTolerance);
  r["flow_identities"] = ToJson(flow);
  passed &= flow.passed();

  if (IsScalarBilinearExample(cert.spec)) {
    const SandwichReport sw = CheckSandwich1d(cert);
    r["sandwich"] = ToJson(sw);
    passed &= sw.passed();
  }
  if (cert.spec.n == 2) {
    // Reported, not gated.
    const ContourData grid = ContourGrid(cert, 1.0, cert.spec.omega, 201);
    r["nesting"] = ToJson(CheckNesting(grid, cert.spec));
  }
  r["passed"] = passed;
  res.passed = passed;
  return res;
}

int RunVerify(const VerifyOptions& o, std::ostream& log, std::ostream& err) {
  return Guard(err, [&] {
    const ValueCertificate cert = ReadCertificate(o.certificate);
    const ProblemSpec spec = SolvedSpec(o.problem, cert.direction, cert.degree);
    const std::string hash = SpecHash(spec);
    if (hash != cert.spec_hash || SpecHash(cert.spec) != cert.spec_hash) {
      err << "error: certificate spec hash " << cert.spec_hash << " does not match problem "
          << o.problem.string() << " (" << hash << "); refusing to verify\n";
      return kExitInput;
    }
    Manifest manifest("verify", o.out,
                      {{"problem", o.problem.string()},
                       {"certificate", o.certificate.string()},
                       {"samples", o.samples},
                       {"pieces", o.pieces},
                       {"seed", o.seed}});
    manifest.set_spec_hash(hash);
    const VerifyResult res = VerifyCertificate(cert, o);
    manifest.Write("verify_report.json", res.report.dump(1) + "\n");
    manifest.Finish();
    const json& r = res.report;
    log << "certificate: max identity residual " << r["certificate"]["max_identity_residual"]
        << ", min Gram eigenvalue " << r["certificate"]["min_gram_eigenvalue"] << "\n";
    log << "dissipation grid: " << r["dissipation"]["points"] << " points, "
        << r["dissipation"]["total_violations"] << " violations\n";
    log << "containment outer: " << r["containment"]["outer"]["checked"] << " checked, "
        << r["containment"]["outer"]["violations"] << " violations\n";
    log << "containment inner: " << r["containment"]["inner"]["checked"] << " of "
        << r["containment"]["inner_requested"] << " checked, "
        << r["containment"]["inner"]["violations"] << " violations, "
        << r["containment"]["inner"]["unconfirmed"] << " unconfirmed, "
        << r["containment"]["inner"]["left_region"] << " left the state region\n";
    log << "flow identities: " << (r["flow_identities"]["passed"].get<bool>() ? "pass" : "FAIL")
        << "\n";
    if (r.contains("sandwich")) {
      log << "1D sandwich: " << r["sandwich"]["lower_violations"] << " lower / "
          << r["sandwich"]["upper_violations"] << " upper violations\n";
    }
    log << (res.passed ? "PASS" : "FAIL") << "\n";
    return res.passed ? kExitOk : kExitViolation;
  });
}

int RunContour(const ContourOptions& o, std::ostream& log, std::ostream& err) {
  return Guard(err, [&] {
    const ValueCertificate cert = ReadCertificate(o.certificate);
    const ProblemSpec spec = SolvedSpec(o.problem, cert.direction, cert.degree);
    const std::string hash = SpecHash(spec);
    if (hash != cert.spec_hash) {
      err << "error: certificate does not belong to " << o.problem.string() << "; refusing\n";
      return kExitInput;
    }
    const std::vector<Interval> window = o.window.value_or(spec.omega);
    if (static_cast<int>(window.size()) != spec.n) {
      throw InputError("window needs one interval per state");
    }
    Manifest manifest("contour", o.out,
                      {{"problem", o.problem.string()},
                       {"certificate", o.certificate.string()},
                       {"window", WindowText(window)},
                       {"resolution", o.resolution},
                       {"level", o.level}});
    manifest.set_spec_hash(hash);
    const std::uint64_t seed = DefaultSeed();
    std::ostringstream prov;
    prov << "# spec_hash=" << hash << " seed=" << seed << " level=" << o.level << "\n";
    const std::string provenance = prov.str();
    if (spec.n == 2) {
      const ContourData d = ContourGrid(cert, o.level, window, o.resolution);
      manifest.Write("contour.csv", provenance + ContourCsv(d));
      json seg = SegmentsJson(d);
      seg["spec_hash"] = hash;
      seg["seed"] = seed;
      manifest.Write("segments.json", seg.dump(1) + "\n");
      log << "lower level set: " << d.lower_set.segments.size() << " segments, "
          << d.lower_set.components << " components\n";
      log << "upper level set: " << d.upper_set.segments.size() << " segments, "
          << d.upper_set.components << " components\n";
    } else if (spec.n == 1) {
      const Profile1d p = ProfileGrid1d(cert.lower(), cert.upper(), spec, window[0], o.resolution);
      manifest.Write("profile.csv", provenance + ProfileCsv(p));
      log << "profile: " << p.xs.size() << " rows\n";
    } else {
      err << "contour data needs a 1D or 2D state space\n";
      manifest.Finish();
      return kExitInput;
    }
    manifest.Finish();
    return kExitOk;
  });
}

int RunSizing(const SizingOptions& o, std::ostream& log, std::ostream& err) {
  return Guard(err, [&] {
    ProblemSpec spec = LoadProblemFile(o.problem);
    if (o.degree) spec = WithDegree(spec, *o.degree);
    const std::string hash = SpecHash(spec);
    Manifest manifest("sizing", o.out, {{"problem", o.problem.string()}, {"degree", spec.d}});
    manifest.set_spec_hash(hash);
    const DegreeTable table = MultiplierDegrees(spec);
    const SosProgram program = BuildSosProgram(spec, table);
    json blocks = json::array();
    log << table.Describe();
    log << "Gram blocks:\n";
    for (const auto* d : program.gram_decisions()) {
      log << "  " << std::left << std::setw(6) << d->name << " " << d->size() << "\n";
      blocks.push_back({{"name", d->name}, {"size", d->size()}});
    }
    log << "free coefficients: " << program.num_free << "\n";
    log << "equality constraints: " << program.constraints.size() << "\n";

    const double radius = StateRadius(spec);
    const AlphaEstimate est = EstimateAlphaBounds(spec, radius, GridCounts{});
    const auto [lo, hi] = TrivialCertificates(spec, est.alpha_lower, est.alpha_upper);
    const DissipationReport trivial = CheckDissipationAt(lo, hi, spec, est.points);
    log << "alpha estimates on the radius-" << radius << " grid: [" << est.alpha_lower << ", "
        << est.alpha_upper << "] from " << est.points.size() << " points\n";
    log << "trivial certificates on that grid: "
        << (trivial.passed() ? "feasible" : "VIOLATED") << "\n";

    json multipliers = json::array();
    for (const auto& s : table.multipliers) {
      multipliers.push_back({{"name", s.name},
                             {"present", s.present()},
                             {"degree", s.degree},
                             {"companion_degree", s.companion_degree}});
    }
    const json report{{"spec_hash", hash},
                      {"value_degree", table.value_degree},
                      {"field_degree", table.field_degree},
                      {"identity_degree", table.total_degree},
                      {"multipliers", multipliers},
                      {"gram_blocks", blocks},
                      {"free_coefficients", program.num_free},
                      {"constraints", program.constraints.size()},
                      {"alpha_lower", est.alpha_lower},
                      {"alpha_upper", est.alpha_upper},
                      {"alpha_radius", radius},
                      {"trivial_certificate_check", ToJson(trivial)}};
    manifest.Write("sizing.json", report.dump(1) + "\n");
    manifest.Finish();
    return kExitOk;
  });
}

std::vector<Interval> ParseWindow(const std::string& text) {
  std::vector<Interval> out;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = std::min(text.find(',', start), text.size());
    const std::string part = text.substr(start, comma - start);
    start = comma + 1;
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw InputError("window interval '" + part + "' is not lo:hi");
    try {
      size_t used = 0;
      const std::string lo_text = part.substr(0, colon), hi_text = part.substr(colon + 1);
      const double lo = std::stod(lo_text, &used);
      if (used != lo_text.size()) throw std::invalid_argument(lo_text);
      const double hi = std::stod(hi_text, &used);
      if (used != hi_text.size()) throw std::invalid_argument(hi_text);
      if (!(lo < hi)) throw InputError("window interval '" + part + "' is empty");
      out.push_back({lo, hi});
    } catch (const std::logic_error&) {
      throw InputError("window interval '" + part + "' is not numeric");
    }
  }
  return out;
}

}  // namespace reachbound::cli
