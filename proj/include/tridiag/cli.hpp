#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tridiag/analytic.hpp"
#include "tridiag/core.hpp"
#include "tridiag/montecarlo.hpp"

// Command implementations behind the tridiag_spectra executable.  Each
// command returns a Report; rendering and file output are separate so the
// commands can be called in-process (the verify suite does this).
namespace tridiag::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSeedEnvVar = "TRIDIAG_SPECTRA_SEED";

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailure = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

// Bad flags or flag combinations; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  std::string timestamp;  // ISO-8601, UTC

  nlohmann::json to_json() const;
};

// Cells are JSON scalars: numbers, strings, or null for "not applicable".
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

struct Report {
  RunManifest manifest;
  Table table;
  int exit_code = kExitOk;
};

enum class Format { Csv, Json };

// A double as a table cell: finite values as numbers, +-inf as the strings
// "inf"/"-inf", NaN as null.
nlohmann::json number_cell(double v);

// '#'-prefixed manifest lines, then the header row, then the data.
std::string render_csv(const Report& r);
// {"manifest": ..., "columns": [...], "rows": [[...], ...]}
std::string render_json(const Report& r);
std::string render(const Report& r, Format format);
// The CSV header and data rows only: the part covered by the determinism
// contract.
std::string payload(const Report& r);
// Writes the rendered report to `path`; in CSV mode the JSON manifest is
// also written to `path` + ".manifest.json".
void write_outputs(const Report& r, Format format, const std::string& path);

std::string iso8601_now();

// rademacher | gaussian | cauchy | pointmass:x,y[,z].  In symmetric mode a
// point mass may give z only if it equals y.  Throws UsageError.
EntryDistribution parse_distribution(std::string_view text, bool symmetric);
// The explicit flag wins, then the environment value, then 0.  Throws
// UsageError for a malformed environment value.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value);

enum class Which { Vmax, WminDensity, Kappa };
Which parse_which(std::string_view s);
std::string to_string(Which w);

Report cmd_constants();
// Rows (argument, value, error_estimate, status).  Unsupported arguments are
// reported per row; numeric failures set exit code 3.
Report cmd_limit_cdf(analytic::LimitLaw law, Which which, const std::vector<double>& grid);
// Per n, one row each for lo, hi and kappa with empirical quantiles, the
// infinite-kappa fraction and, for the named laws, the KS distance to the
// limit law.  The payload is independent of cfg.threads.
Report cmd_simulate(const montecarlo::SimulationConfig& cfg);
Report cmd_verify(bool full, int threads);

}  // namespace tridiag::cli
