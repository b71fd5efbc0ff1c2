#include "reachbound/sdpsolve/certificate.h"

#include <cmath>
#include <fstream>
#include <limits>

#include "reachbound/common/errors.h"
#include "reachbound/polyalg/poly_json.h"
#include "reachbound/problem/problem_io.h"

namespace reachbound {

using nlohmann::json;

std::string ToString(Direction d) {
  return d == Direction::kBackward ? "backward" : "forward";
}

Direction DirectionFromString(const std::string& s) {
  if (s == "backward") return Direction::kBackward;
  if (s == "forward") return Direction::kForward;
  throw InputError("direction must be 'forward' or 'backward', got '" + s + "'");
}

double ValueCertificate::max_identity_residual() const {
  double r = 0.0;
  for (const auto& [name, v] : identity_residuals) r = std::max(r, v);
  return r;
}

double ValueCertificate::min_gram_eigenvalue() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& [name, v] : min_eigenvalues) e = std::min(e, v);
  return e;
}

namespace {

Polynomial GramForm(const std::vector<Monomial>& basis, const Eigen::MatrixXd& q,
                    const std::vector<std::string>& vars) {
  Polynomial p(vars);
  for (size_t a = 0; a < basis.size(); ++a) {
    for (size_t b = a; b < basis.size(); ++b) {
      const double v = a == b ? q(a, a) : q(a, b) + q(b, a);
      if (v != 0.0) p.AddTerm(basis[a] * basis[b], v);
    }
  }
  return p;
}

double MaxAbsCoefficient(const Polynomial& p) {
  double r = 0.0;
  for (const auto& [m, c] : p.terms()) r = std::max(r, std::abs(c));
  return r;
}

}  // namespace

std::map<std::string, double> IdentityResiduals(const ValueCertificate& cert) {
  const SosProgram program = BuildSosProgram(cert.spec);
  std::map<std::string, Polynomial> expanded;
  expanded["V_l"] = cert.lower();
  expanded["V_u"] = cert.upper();
  for (const auto& [name, q] : cert.grams) {
    expanded[name] = GramForm(cert.gram_bases.at(name), q, cert.spec.variables);
  }
  const auto defining = DefiningPolynomials(program, expanded);
  std::map<std::string, double> out;
  for (const auto& [name, k] : defining) {
    out[name] = MaxAbsCoefficient(expanded.at(name) - k);
  }
  return out;
}

ValueCertificate ExtractCertificate(const SdpSolution& solution,
                                    const SosProgram& program, Direction direction) {
  if (solution.status != SolveStatus::kOptimal) {
    throw CertificateError("solver status " + ToString(solution.status) + " (" +
                           solution.message + "); no certificate extracted");
  }
  ValueCertificate cert;
  cert.problem_name = program.spec.name;
  cert.spec = program.spec;
  cert.spec_hash = SpecHash(program.spec);
  cert.direction = direction;
  cert.degree = program.spec.d;
  cert.solver_status = ToString(solution.status);
  cert.solver_message = solution.message;
  cert.solver = solution.diagnostics;
  cert.primal_objective = solution.primal_objective;
  cert.dual_objective = solution.dual_objective;

  DecisionValues values;
  values.free = solution.free;
  for (const auto* d : program.gram_decisions()) {
    const Eigen::MatrixXd q = 0.5 * (solution.blocks[d->slot] + solution.blocks[d->slot].transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    Eigen::VectorXd lam = es.eigenvalues();
    int clamped = 0;
    for (int i = 0; i < lam.size(); ++i) {
      if (lam[i] < 0.0 && lam[i] >= kClampFloor) {
        lam[i] = 0.0;
        ++clamped;
      }
    }
    cert.clamped_eigenvalues += clamped;
    const Eigen::MatrixXd qc =
        clamped ? Eigen::MatrixXd(es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose())
                : q;
    cert.min_eigenvalues[d->name] = lam.minCoeff();
    cert.grams[d->name] = qc;
    cert.gram_bases[d->name] = d->basis.entries();
    values.grams.push_back(qc);
  }
  cert.polynomials = ExpandDecisions(program, values);
  cert.epsilon = program.objective.dot(values.free);
  cert.identity_residuals = IdentityResiduals(cert);
  if (cert.max_identity_residual() > kMaxIdentityResidual) {
    throw CertificateError("identity re-expansion residual " +
                           std::to_string(cert.max_identity_residual()) + " exceeds " +
                           std::to_string(kMaxIdentityResidual));
  }
  return cert;
}

json CertificateToJson(const ValueCertificate& cert) {
  json polys = json::object();
  for (const auto& [name, p] : cert.polynomials) polys[name] = PolynomialToJson(p);
  json grams = json::object();
  for (const auto& [name, q] : cert.grams) {
    json rows = json::array();
    for (int r = 0; r < q.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < q.cols(); ++c) row.push_back(q(r, c));
      rows.push_back(std::move(row));
    }
    json basis = json::array();
    for (const auto& m : cert.gram_bases.at(name)) basis.push_back(m.exponents());
    grams[name] = {{"basis", basis}, {"matrix", rows}};
  }
  const auto& s = cert.solver;
  json diag{
      {"status", cert.solver_status},
      {"message", cert.solver_message},
      {"primal_residual", s.primal_residual},
      {"dual_residual", s.dual_residual},
      {"gap", s.gap},
      {"iterations", s.iterations},
      {"dropped_constraints", s.dropped_constraints},
      {"primal_objective", cert.primal_objective},
      {"dual_objective", cert.dual_objective},
      {"min_eigenvalues", cert.min_eigenvalues},
      {"identity_residuals", cert.identity_residuals},
      {"clamped_eigenvalues", cert.clamped_eigenvalues},
  };
  return json{
      {"problem", cert.problem_name},
      {"spec_hash", cert.spec_hash},
      {"direction", ToString(cert.direction)},
      {"degree", cert.degree},
      {"epsilon", cert.epsilon},
      {"spec", ProblemToJson(cert.spec)},
      {"polynomials", polys},
      {"grams", grams},
      {"diagnostics", diag},
  };
}

ValueCertificate CertificateFromJson(const json& j) {
  ValueCertificate cert;
  try {
    cert.problem_name = j.value("problem", std::string());
    cert.spec_hash = j.at("spec_hash").get<std::string>();
    cert.direction = DirectionFromString(j.at("direction").get<std::string>());
    cert.degree = j.at("degree").get<int>();
    cert.epsilon = j.at("epsilon").get<double>();
    cert.spec = Validate(ProblemFromJson(j.at("spec")), ValidateOptions{.allow_odd_degree = true});
    for (const auto& [name, pj] : j.at("polynomials").items()) {
      cert.polynomials[name] = PolynomialFromJson(pj, cert.spec.variables);
    }
    for (const auto& [name, gj] : j.at("grams").items()) {
      std::vector<Monomial> basis;
      for (const auto& e : gj.at("basis")) basis.emplace_back(e.get<std::vector<int>>());
      const auto& rows = gj.at("matrix");
      Eigen::MatrixXd q(rows.size(), rows.size());
      for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) throw InputError("gram matrix " + name + " is not square");
        for (size_t c = 0; c < rows.size(); ++c) q(r, c) = rows[r][c].get<double>();
      }
      if (basis.size() != rows.size()) throw InputError("gram basis size mismatch for " + name);
      cert.gram_bases[name] = std::move(basis);
      cert.grams[name] = std::move(q);
    }
    const auto& d = j.at("diagnostics");
    cert.solver_status = d.at("status").get<std::string>();
    cert.solver_message = d.value("message", std::string());
    cert.solver.primal_residual = d.at("primal_residual").get<double>();
    cert.solver.dual_residual = d.at("dual_residual").get<double>();
    cert.solver.gap = d.at("gap").get<double>();
    cert.solver.iterations = d.at("iterations").get<int>();
    cert.solver.dropped_constraints = d.value("dropped_constraints", 0);
    cert.primal_objective = d.at("primal_objective").get<double>();
    cert.dual_objective = d.at("dual_objective").get<double>();
    cert.min_eigenvalues = d.at("min_eigenvalues").get<std::map<std::string, double>>();
    cert.identity_residuals = d.at("identity_residuals").get<std::map<std::string, double>>();
    cert.clamped_eigenvalues = d.value("clamped_eigenvalues", 0);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  }
  if (!cert.polynomials.count("V_l") || !cert.polynomials.count("V_u")) {
    throw InputError("certificate lacks V_l or V_u");
  }
  return cert;
}

void WriteCertificate(const ValueCertificate& cert, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << CertificateToJson(cert).dump(1) << "\n";
}

ValueCertificate ReadCertificate(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open certificate " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("certificate " + path.string() + " is not valid JSON: " + e.what());
  }
  return CertificateFromJson(j);
}

}  // namespace reachbound
