#include "tridiag/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "tridiag/quadrature.hpp"
#include "tridiag/verify.hpp"

namespace tridiag::cli {

namespace {

using nlohmann::json;
using analytic::LimitLaw;

std::string cell_text(const json& c) {
  if (c.is_null()) return "";
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number_integer()) return std::to_string(c.get<std::int64_t>());
  if (c.is_number_unsigned()) return std::to_string(c.get<std::uint64_t>());
  if (c.is_number_float()) return format_double(c.get<double>());
  if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
  return c.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

double parse_double(std::string_view s, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError(std::string("invalid ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

json distribution_json(const EntryDistribution& d) {
  json j{{"law", to_string(d.law)}, {"assignment", d.symmetric() ? "symmetric" : "nonsymmetric"}};
  if (d.law == Law::PointMass) j["point"] = {d.point.x, d.point.y, d.point.z};
  return j;
}

// Monotone piecewise-linear interpolant of a CDF through (x_k, F(x_k)).
// Constant beyond the last node; `floor` below the first.
struct TabulatedCdf {
  std::vector<double> x;
  std::vector<double> f;
  double floor = 0.0;

  double operator()(double t) const {
    if (t < x.front()) return floor;
    if (t >= x.back()) return f.back();
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - x.begin());
    const double w = (t - x[k - 1]) / (x[k] - x[k - 1]);
    return f[k - 1] + w * (f[k] - f[k - 1]);
  }
};

constexpr int kTableNodes = 129;

// Nodes at the empirical quantiles k/(kTableNodes-1) of the finite samples,
// plus `origin`, deduplicated.  Each interval then carries about 1/128 of
// the sample mass whatever the scale of the law.
std::vector<double> quantile_nodes(const montecarlo::EmpiricalCdf& emp, double origin) {
  std::vector<double> nodes{origin};
  const auto& s = emp.sorted_samples();
  for (int k = 0; k < kTableNodes; ++k) {
    const auto idx = static_cast<std::size_t>(
        std::llround(static_cast<double>(s.size() - 1) * k / (kTableNodes - 1)));
    if (s[idx] > origin) nodes.push_back(s[idx]);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

// KS distance with the empirical CDF normalized by the total count, so an
// infinite-kappa atom is compared against the missing mass of `cdf`.
double ks_total(const montecarlo::EmpiricalCdf& emp, const std::function<double(double)>& cdf) {
  const auto& s = emp.sorted_samples();
  const double total = static_cast<double>(emp.total());
  double d = 0.0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const double below = std::nextafter(s[i], -std::numeric_limits<double>::infinity());
    d = std::max(d, std::abs(static_cast<double>(j) / total - cdf(s[i])));
    d = std::max(d, std::abs(static_cast<double>(i) / total - cdf(below)));
    i = j;
  }
  return d;
}

// Limit-law CDFs of lo, hi and kappa for one named law; continuous laws are
// tabulated on the sample quantiles.
class LimitReference {
 public:
  LimitReference(LimitLaw law, int threads) : law_(law), threads_(threads) {
    atom_ = analytic::singularity_constant(law).value;
  }

  std::function<double(double)> lo_cdf(const montecarlo::EmpiricalCdf& emp) const {
    const double c = atom_;
    if (law_ == LimitLaw::RademacherSym) return [](double w) { return w >= 0.0 ? 1.0 : 0.0; };
    if (law_ == LimitLaw::RademacherNonsym) {
      const auto atoms = analytic::wmin_conditional_atoms(law_);
      return [c, atoms](double w) {
        if (w < 0.0) return 0.0;
        double p = c;
        for (const auto& a : atoms) {
          if (a.value <= w) p += (1.0 - c) * a.probability;
        }
        return p;
      };
    }
    const auto nodes = quantile_nodes(emp, 0.0);
    std::vector<double> pieces(nodes.size(), 0.0);
    const LimitLaw law = law_;
    montecarlo::parallel_for(static_cast<std::int64_t>(nodes.size()) - 1, threads_, [&](std::int64_t k) {
      const auto i = static_cast<std::size_t>(k);
      const auto r = quadrature::integrate_finite(
          [law](double w) { return analytic::wmin_conditional_density(law, w).value; }, nodes[i], nodes[i + 1],
          1e-9);
      pieces[i + 1] = r.value;
    });
    TabulatedCdf t{nodes, std::vector<double>(nodes.size()), 0.0};
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      acc += pieces[i];
      t.f[i] = c + (1.0 - c) * std::min(acc, 1.0);
    }
    return t;
  }

  std::function<double(double)> hi_cdf(const montecarlo::EmpiricalCdf& emp) const {
    const LimitLaw law = law_;
    if (analytic::is_discrete(law)) return [law](double y) { return analytic::vmax_cdf(law, y).value; };
    const auto nodes = quantile_nodes(emp, 0.0);
    return tabulate(nodes, [law](double y) { return analytic::vmax_cdf(law, y).value; });
  }

  std::function<double(double)> kappa_cdf(const montecarlo::EmpiricalCdf& emp) const {
    const double scale = 1.0 - atom_;
    const LimitLaw law = law_;
    if (law == LimitLaw::RademacherSym) return [](double) { return 0.0; };
    if (law == LimitLaw::RademacherNonsym) {
      return [law, scale](double z) { return scale * analytic::kappa_cdf(law, z).value; };
    }
    if (emp.finite_count() == 0) return [](double) { return 0.0; };
    const auto nodes = quantile_nodes(emp, 1.0);
    return tabulate(nodes, [law, scale](double z) { return scale * analytic::kappa_cdf(law, z).value; });
  }

 private:
  TabulatedCdf tabulate(const std::vector<double>& nodes, const std::function<double(double)>& f) const {
    TabulatedCdf t{nodes, std::vector<double>(nodes.size()), 0.0};
    montecarlo::parallel_for(static_cast<std::int64_t>(nodes.size()), threads_, [&](std::int64_t k) {
      t.f[static_cast<std::size_t>(k)] = f(nodes[static_cast<std::size_t>(k)]);
    });
    // Quadrature noise must not break monotonicity of the interpolant.
    for (std::size_t i = 1; i < t.f.size(); ++i) t.f[i] = std::max(t.f[i], t.f[i - 1]);
    return t;
  }

  LimitLaw law_;
  int threads_;
  double atom_ = 0.0;
};

constexpr double kQuantileLevels[] = {0.01, 0.05, 0.25, 0.50, 0.75, 0.95, 0.99};

std::vector<json> quantile_row(std::int64_t n, const char* quantity, const montecarlo::EmpiricalCdf& emp,
                               std::optional<double> ks) {
  std::vector<json> row{n, quantity};
  for (double p : kQuantileLevels) row.push_back(number_cell(emp.quantile(p)));
  row.push_back(number_cell(emp.infinite_fraction()));
  row.push_back(ks ? number_cell(*ks) : json(nullptr));
  return row;
}

}  // namespace

json RunManifest::to_json() const {
  return json{{"command", command},
              {"config", config},
              {"tool_version", tool_version},
              {"seed", seed},
              {"timestamp", timestamp}};
}

json number_cell(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string render_csv(const Report& r) {
  std::ostringstream out;
  const json m = r.manifest.to_json();
  out << "# command: " << r.manifest.command << '\n';
  out << "# config: " << m["config"].dump() << '\n';
  out << "# tool_version: " << r.manifest.tool_version << '\n';
  out << "# seed: " << r.manifest.seed << '\n';
  out << "# timestamp: " << r.manifest.timestamp << '\n';
  out << payload(r);
  return out.str();
}

std::string payload(const Report& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_escape(r.table.columns[i]);
  }
  out << '\n';
  for (const auto& row : r.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i]));
    out << '\n';
  }
  return out.str();
}

std::string render_json(const Report& r) {
  json rows = json::array();
  for (const auto& row : r.table.rows) rows.push_back(row);
  const json doc{{"manifest", r.manifest.to_json()}, {"columns", r.table.columns}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::string render(const Report& r, Format format) {
  return format == Format::Csv ? render_csv(r) : render_json(r);
}

void write_outputs(const Report& r, Format format, const std::string& path) {
  auto write = [](const std::string& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + p + "'");
    f << text;
    if (!f) throw UsageError("failed writing '" + p + "'");
  };
  write(path, render(r, format));
  if (format == Format::Csv) write(path + ".manifest.json", r.manifest.to_json().dump(2) + "\n");
}

std::string iso8601_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

EntryDistribution parse_distribution(std::string_view text, bool symmetric) {
  const Assignment a = symmetric ? Assignment::SymmetricIID : Assignment::NonsymmetricIID;
  if (text == "rademacher") return EntryDistribution::standard(Law::Rademacher, a);
  if (text == "gaussian" || text == "normal") return EntryDistribution::standard(Law::StandardNormal, a);
  if (text == "cauchy") return EntryDistribution::standard(Law::StandardCauchy, a);
  constexpr std::string_view prefix = "pointmass:";
  if (text.substr(0, prefix.size()) != prefix) {
    throw UsageError("unknown distribution '" + std::string(text) +
                     "' (expected rademacher, gaussian, cauchy or pointmass:x,y,z)");
  }
  std::vector<double> v;
  std::string_view rest = text.substr(prefix.size());
  while (true) {
    const auto comma = rest.find(',');
    v.push_back(parse_double(rest.substr(0, comma), "pointmass entry"));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (symmetric) {
    if (v.size() != 2 && v.size() != 3) throw UsageError("symmetric pointmass takes x,y or x,y,z");
    if (v.size() == 3 && v[2] != v[1]) throw UsageError("symmetric pointmass needs z equal to y");
    return EntryDistribution::point_mass(RealizedTriple::symmetric(v[0], v[1]), a);
  }
  if (v.size() != 3) throw UsageError("non-symmetric pointmass takes x,y,z");
  return EntryDistribution::point_mass(RealizedTriple::checked(v[0], v[1], v[2]), a);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value) {
  if (flag) return *flag;
  if (env_value == nullptr || *env_value == '\0') return 0;
  const std::string_view s(env_value);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError(std::string("invalid ") + kSeedEnvVar + " value '" + env_value + "'");
  }
  return v;
}

Which parse_which(std::string_view s) {
  if (s == "vmax") return Which::Vmax;
  if (s == "wmin_density") return Which::WminDensity;
  if (s == "kappa") return Which::Kappa;
  throw UsageError("unknown --which '" + std::string(s) + "' (expected vmax, wmin_density or kappa)");
}

std::string to_string(Which w) {
  switch (w) {
    case Which::Vmax: return "vmax";
    case Which::WminDensity: return "wmin_density";
    case Which::Kappa: return "kappa";
  }
  return "unknown";
}

Report cmd_constants() {
  Report r;
  r.manifest = {"constants", json::object(), kToolVersion, 0, iso8601_now()};
  r.table.columns = {"law", "method", "value", "error_estimate"};
  for (LimitLaw law : analytic::kAllLaws) {
    const auto c = analytic::singularity_constant(law);
    r.table.rows.push_back({analytic::to_string(law), c.method, number_cell(c.value), number_cell(c.abs_error)});
  }
  return r;
}

Report cmd_limit_cdf(LimitLaw law, Which which, const std::vector<double>& grid) {
  if (grid.empty()) throw UsageError("--grid must not be empty");
  if (!std::is_sorted(grid.begin(), grid.end())) throw UsageError("--grid must be sorted");
  Report r;
  r.manifest = {"limit-cdf",
                json{{"law", analytic::to_string(law)}, {"which", to_string(which)}, {"grid", grid}},
                kToolVersion, 0, iso8601_now()};
  r.table.columns = {"argument", "value", "error_estimate", "status"};
  for (double a : grid) {
    try {
      analytic::Estimate e;
      switch (which) {
        case Which::Vmax: e = analytic::vmax_cdf(law, a); break;
        case Which::WminDensity: e = analytic::wmin_conditional_density(law, a); break;
        case Which::Kappa: e = analytic::kappa_cdf(law, a); break;
      }
      r.table.rows.push_back({number_cell(a), number_cell(e.value), number_cell(e.abs_error), "ok"});
    } catch (const Error& err) {
      r.table.rows.push_back({number_cell(a), nullptr, nullptr, tridiag::to_string(err.kind())});
      if (err.kind() != ErrorKind::Unsupported) r.exit_code = kExitNumeric;
    }
  }
  return r;
}

Report cmd_simulate(const montecarlo::SimulationConfig& cfg) {
  cfg.validate();
  Report r;
  r.manifest = {"simulate",
                json{{"dist", distribution_json(cfg.dist)},
                     {"n", cfg.n_grid},
                     {"trials", cfg.trials},
                     {"backend", cfg.backend == montecarlo::Backend::ClosedForm ? "closedform" : "oracle"},
                     {"threads", cfg.threads}},
                kToolVersion, cfg.seed, iso8601_now()};
  r.table.columns = {"n", "quantity", "q01", "q05", "q25", "q50", "q75", "q95", "q99", "infinite_fraction",
                     "ks_limit"};
  const auto law = analytic::limit_law_for(cfg.dist);
  std::optional<LimitReference> ref;
  if (law) ref.emplace(*law, cfg.threads);
  for (std::int64_t n : cfg.n_grid) {
    const auto s = montecarlo::simulate_extremes(cfg, n);
    std::optional<double> ks_lo, ks_hi, ks_kappa;
    if (ref) {
      ks_lo = ks_total(s.lo, ref->lo_cdf(s.lo));
      ks_hi = ks_total(s.hi, ref->hi_cdf(s.hi));
      ks_kappa = ks_total(s.kappa, ref->kappa_cdf(s.kappa));
    }
    r.table.rows.push_back(quantile_row(n, "lo", s.lo, ks_lo));
    r.table.rows.push_back(quantile_row(n, "hi", s.hi, ks_hi));
    r.table.rows.push_back(quantile_row(n, "kappa", s.kappa, ks_kappa));
  }
  return r;
}

Report cmd_verify(bool full, int threads) {
  Report r;
  r.manifest = {"verify", json{{"level", full ? "full" : "quick"}, {"threads", threads}}, kToolVersion, 0,
                iso8601_now()};
  r.table.columns = {"criterion", "name", "result", "seconds", "budget_seconds", "detail"};
  for (const auto& c : verify::run(full, threads)) {
    r.table.rows.push_back({c.id, c.name, c.passed ? "PASS" : "FAIL", number_cell(c.seconds),
                            number_cell(c.budget_seconds), c.detail});
    if (!c.passed) r.exit_code = kExitVerifyFailure;
  }
  return r;
}

}  // namespace tridiag::cli
