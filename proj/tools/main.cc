#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "reachbound/cli/commands.h"
#include "reachbound/common/errors.h"

using namespace reachbound;

namespace {

void AddDegree(CLI::App* cmd, std::optional<int>& degree) {
  cmd->add_option_function<int>(
         "--degree,-d", [&degree](int d) { degree = d; },
         "Polynomial degree of V_l and V_u (default from the problem file)")
      ->check(CLI::Range(1, 12));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial sub/super-value certificates and reachable-set bounds"};
  app.set_version_flag("--version", std::string(cli::kToolVersion));
  app.require_subcommand(1);

  cli::SolveOptions solve;
  std::string direction = "backward";
  CLI::App* s = app.add_subcommand("solve", "Build and solve the SDP, write certificate.json");
  s->add_option("problem", solve.problem, "Problem JSON")->required()->check(CLI::ExistingFile);
  AddDegree(s, solve.degree);
  s->add_option("--direction", direction, "backward or forward")
      ->check(CLI::IsMember({"backward", "forward"}));
  s->add_option("--out,-o", solve.out, "Output directory");
  s->add_flag("--sdp-export", solve.sdp_export, "Also write program.dat-s (SDPA sparse)");
  s->add_flag("--verbose,-v", solve.verbose, "Print solver iterations");

  cli::VerifyOptions verify;
  verify.seed = cli::DefaultSeed();
  CLI::App* v = app.add_subcommand("verify", "Check a certificate against its problem");
  v->add_option("problem", verify.problem, "Problem JSON")->required()->check(CLI::ExistingFile);
  v->add_option("certificate", verify.certificate, "certificate.json")
      ->required()
      ->check(CLI::ExistingFile);
  v->add_option("--samples,-n", verify.samples, "Outer samples (inner uses half)")
      ->check(CLI::PositiveNumber);
  v->add_option("--pieces", verify.pieces, "Pieces of the random input signals")
      ->check(CLI::PositiveNumber);
  v->add_option("--seed", verify.seed, "RNG seed (default $REACHBOUND_SEED or 0)");
  v->add_option("--threads", verify.threads, "Worker threads, 0 for all cores");
  v->add_option("--out,-o", verify.out, "Output directory");

  cli::ContourOptions contour;
  std::string window;
  CLI::App* c = app.add_subcommand("contour", "Write level-set data of V_l and V_u at t = 0");
  c->add_option("problem", contour.problem, "Problem JSON")->required()->check(CLI::ExistingFile);
  c->add_option("certificate", contour.certificate, "certificate.json")
      ->required()
      ->check(CLI::ExistingFile);
  c->add_option("--window", window, "lo:hi per state, comma separated (default omega)");
  c->add_option("--resolution", contour.resolution, "Grid points per axis")
      ->check(CLI::Range(2, 4001));
  c->add_option("--level", contour.level, "Level of the contour");
  c->add_option("--out,-o", contour.out, "Output directory");

  cli::SizingOptions sizing;
  CLI::App* z = app.add_subcommand("sizing", "Print degrees and SDP size, check trivial bounds");
  z->add_option("problem", sizing.problem, "Problem JSON")->required()->check(CLI::ExistingFile);
  AddDegree(z, sizing.degree);
  z->add_option("--out,-o", sizing.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitInput;
  }

  if (s->parsed()) {
    solve.direction = DirectionFromString(direction);
    return cli::RunSolve(solve, std::cout, std::cerr);
  }
  if (v->parsed()) return cli::RunVerify(verify, std::cout, std::cerr);
  if (c->parsed()) {
    if (!window.empty()) {
      try {
        contour.window = cli::ParseWindow(window);
      } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitInput;
      }
    }
    return cli::RunContour(contour, std::cout, std::cerr);
  }
  return cli::RunSizing(sizing, std::cout, std::cerr);
}
