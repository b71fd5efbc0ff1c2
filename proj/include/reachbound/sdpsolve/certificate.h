#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "reachbound/certbuild/sos_program.h"
#include "reachbound/sdpsolve/ipm_solver.h"

namespace reachbound {

/// Identity re-expansion tolerance, coefficient infinity norm.
inline constexpr double kMaxIdentityResidual = 1e-6;
/// Gram eigenvalues in [kClampFloor, 0) are set to zero on extraction.
inline constexpr double kClampFloor = -1e-8;

enum class Direction { kBackward, kForward };

std::string ToString(Direction d);
Direction DirectionFromString(const std::string& s);

/// Extracted sub/super-value pair with every multiplier and Gram matrix, enough
/// to re-check the certificate without the solver.
struct ValueCertificate {
  std::string problem_name;
  std::string spec_hash;  ///< hash of the solved (possibly negated) spec
  Direction direction{Direction::kBackward};
  int degree{0};
  ProblemSpec spec;  ///< the solved spec
  std::map<std::string, Polynomial> polynomials;
  std::map<std::string, Eigen::MatrixXd> grams;
  std::map<std::string, std::vector<Monomial>> gram_bases;
  /// ∫_Ω V_u(x,0) - V_l(x,0) dx.
  double epsilon{0.0};

  std::string solver_status;
  std::string solver_message;
  SolverDiagnostics solver;
  double primal_objective{0.0};
  double dual_objective{0.0};
  std::map<std::string, double> identity_residuals;
  std::map<std::string, double> min_eigenvalues;
  int clamped_eigenvalues{0};

  const Polynomial& lower() const { return polynomials.at("V_l"); }
  const Polynomial& upper() const { return polynomials.at("V_u"); }
  double max_identity_residual() const;
  double min_gram_eigenvalue() const;
};

/// Builds the certificate from an optimal solution. Throws CertificateError
/// for a non-optimal status or when an identity re-expands with residual
/// above kMaxIdentityResidual.
ValueCertificate ExtractCertificate(const SdpSolution& solution,
                                    const SosProgram& program,
                                    Direction direction = Direction::kBackward);

/// Per-identity infinity norm of coefficients(z^T Q_k z) - coefficients(k
/// from its defining expression), recomputed from stored polynomials and
/// Gram matrices.
std::map<std::string, double> IdentityResiduals(const ValueCertificate& cert);

nlohmann::json CertificateToJson(const ValueCertificate& cert);
ValueCertificate CertificateFromJson(const nlohmann::json& j);
void WriteCertificate(const ValueCertificate& cert, const std::filesystem::path& path);
ValueCertificate ReadCertificate(const std::filesystem::path& path);

}  // namespace reachbound
