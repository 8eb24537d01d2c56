// tridiag_spectra: constants, limit-law CDFs, finite-n simulation and the
// verification suite.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "tridiag/analytic.hpp"
#include "tridiag/cli.hpp"
#include "tridiag/core.hpp"

namespace {

using namespace tridiag;

struct Common {
  std::string format = "csv";
  std::string out;
};

struct DistFlags {
  std::string dist = "gaussian";
  bool sym = false;
  bool nonsym = false;

  EntryDistribution resolve() const {
    if (sym && nonsym) throw cli::UsageError("--sym and --nonsym are mutually exclusive");
    return cli::parse_distribution(dist, !nonsym);
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "Write the output to this path (CSV also gets <path>.manifest.json)");
}

void add_dist(CLI::App* cmd, DistFlags& d) {
  cmd->add_option("--dist", d.dist, "rademacher | gaussian | cauchy | pointmass:x,y,z");
  cmd->add_flag("--sym", d.sym, "Symmetric assignment Z := Y (default)");
  cmd->add_flag("--nonsym", d.nonsym, "Independent X, Y, Z");
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int emit(const cli::Report& r, const Common& c) {
  const auto format = c.format == "json" ? cli::Format::Json : cli::Format::Csv;
  std::cout << cli::render(r, format);
  if (!c.out.empty()) cli::write_outputs(r, format, c.out);
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of random tridiagonal Toeplitz matrices"};
  app.set_version_flag("--version", cli::kToolVersion);
  app.require_subcommand(1);

  Common constants_common;
  auto* constants = app.add_subcommand("constants", "Singularity constants of the five standard laws");
  add_common(constants, constants_common);

  Common cdf_common;
  DistFlags cdf_dist;
  std::string which = "vmax";
  std::vector<double> grid;
  double tol = 1e-3;
  auto* limit_cdf = app.add_subcommand("limit-cdf", "Evaluate a limit-law function on a grid");
  add_common(limit_cdf, cdf_common);
  add_dist(limit_cdf, cdf_dist);
  limit_cdf->add_option("--which", which, "vmax | wmin_density | kappa");
  limit_cdf->add_option("--grid", grid, "Comma-separated sorted arguments")->delimiter(',')->required();
  limit_cdf->add_option("--tol", tol, "Largest acceptable error estimate per row")->check(CLI::PositiveNumber);

  Common sim_common;
  DistFlags sim_dist;
  std::vector<std::int64_t> n_grid;
  std::int64_t trials = 10'000;
  std::optional<std::uint64_t> seed;
  int threads = default_threads();
  std::string backend = "closedform";
  auto* simulate = app.add_subcommand("simulate", "Finite-n Monte Carlo of the extreme spectral moduli");
  add_common(simulate, sim_common);
  add_dist(simulate, sim_dist);
  simulate->add_option("--n", n_grid, "Comma-separated matrix orders")->delimiter(',')->required();
  simulate->add_option("--trials", trials, "Trials per order");
  simulate->add_option("--seed", seed, "Seed (falls back to $TRIDIAG_SPECTRA_SEED, then 0)");
  simulate->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--backend", backend, "Spectra from the closed form or the dense oracle")
      ->check(CLI::IsMember({"closedform", "oracle"}));

  Common verify_common;
  std::string level = "quick";
  int verify_threads = default_threads();
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  add_common(verify, verify_common);
  verify->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--threads", verify_threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    if (*constants) return emit(cli::cmd_constants(), constants_common);
    if (*limit_cdf) {
      const auto law = analytic::limit_law_for(cdf_dist.resolve());
      if (!law) throw cli::UsageError("limit-cdf needs one of the named laws (not a point mass)");
      auto report = cli::cmd_limit_cdf(*law, cli::parse_which(which), grid);
      for (auto& row : report.table.rows) {
        if (row[3] == "ok" && row[2].is_number() && row[2].get<double>() > tol) {
          row[3] = "above_tol";
          report.exit_code = cli::kExitNumeric;
        }
      }
      report.manifest.config["tol"] = tol;
      return emit(report, cdf_common);
    }
    if (*simulate) {
      montecarlo::SimulationConfig cfg;
      cfg.dist = sim_dist.resolve();
      cfg.n_grid = n_grid;
      cfg.trials = trials;
      cfg.seed = cli::resolve_seed(seed, std::getenv(cli::kSeedEnvVar));
      cfg.backend = backend == "oracle" ? montecarlo::Backend::Oracle : montecarlo::Backend::ClosedForm;
      cfg.threads = threads;
      try {
        cfg.validate();
      } catch (const Error& e) {
        throw cli::UsageError(e.what());
      }
      return emit(cli::cmd_simulate(cfg), sim_common);
    }
    if (*verify) return emit(cli::cmd_verify(level == "full", verify_threads), verify_common);
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidArgument ? cli::kExitUsage : cli::kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitNumeric;
  }
  return cli::kExitUsage;
}
