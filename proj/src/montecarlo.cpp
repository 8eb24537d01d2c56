#include "tridiag/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "tridiag/closedform.hpp"
#include "tridiag/oracle.hpp"

namespace tridiag::montecarlo {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) {
  sorted_.reserve(samples.size());
  for (double v : samples) {
    if (std::isnan(v)) throw Error(ErrorKind::InvalidArgument, "NaN sample");
    if (std::isinf(v)) {
      if (v < 0) throw Error(ErrorKind::InvalidArgument, "-inf sample");
      ++infinite_;
    } else {
      sorted_.push_back(v);
    }
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::infinite_fraction() const noexcept {
  return total() == 0 ? 0.0 : static_cast<double>(infinite_) / static_cast<double>(total());
}

double EmpiricalCdf::operator()(double t) const noexcept {
  if (total() == 0) return 0.0;
  const auto k = std::upper_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin();
  return static_cast<double>(k) / static_cast<double>(total());
}

double EmpiricalCdf::left_limit(double t) const noexcept {
  if (total() == 0) return 0.0;
  const auto k = std::lower_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin();
  return static_cast<double>(k) / static_cast<double>(total());
}

double EmpiricalCdf::quantile(double p) const {
  if (total() == 0) throw Error(ErrorKind::InvalidArgument, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "quantile level outside [0, 1]");
  const auto rank = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(p * static_cast<double>(total()))));
  if (rank > finite_count()) return std::numeric_limits<double>::infinity();
  return sorted_[static_cast<std::size_t>(rank - 1)];
}

void SimulationConfig::validate() const {
  if (n_grid.empty()) throw Error(ErrorKind::InvalidArgument, "n grid is empty");
  for (auto n : n_grid) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "matrix orders must be >= 1");
    if (backend == Backend::Oracle && n > oracle::kMaxDenseOrder) {
      throw Error(ErrorKind::InvalidArgument, "oracle backend is limited to n <= 512");
    }
  }
  if (trials < 1 || trials > kMaxTrials) {
    throw Error(ErrorKind::InvalidArgument, "trials must lie in [1, 10000000]");
  }
  if (threads < 1) throw Error(ErrorKind::InvalidArgument, "threads must be >= 1");
}

RealizedTriple sample_triple(const EntryDistribution& dist, CounterRng& rng) {
  RealizedTriple t;
  switch (dist.law) {
    case Law::PointMass:
      return dist.point;
    case Law::Rademacher: {
      const std::uint64_t bits = rng.next_u64();
      auto sign = [&](int k) { return ((bits >> k) & 1u) != 0 ? 1.0 : -1.0; };
      t = {sign(0), sign(1), sign(2)};
      break;
    }
    case Law::StandardNormal: {
      auto pair = [&] {
        const double r = std::sqrt(-2.0 * std::log(rng.uniform_open()));
        const double a = 2.0 * std::numbers::pi * rng.uniform_open();
        return std::pair{r * std::cos(a), r * std::sin(a)};
      };
      const auto [a, b] = pair();
      t.x = a;
      t.y = b;
      if (!dist.symmetric()) t.z = pair().first;
      break;
    }
    case Law::StandardCauchy: {
      auto draw = [&] { return std::tan(std::numbers::pi * (rng.uniform_open() - 0.5)); };
      t.x = draw();
      t.y = draw();
      if (!dist.symmetric()) t.z = draw();
      break;
    }
  }
  if (dist.symmetric()) t.z = t.y;
  return t;
}

RealizedTriple trial_triple(const EntryDistribution& dist, std::uint64_t seed, std::int64_t trial) {
  CounterRng rng(seed, static_cast<std::uint64_t>(trial));
  return sample_triple(dist, rng);
}

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body) {
  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(count, 1)));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const std::int64_t begin = count * w / workers;
      const std::int64_t end = count * (w + 1) / workers;
      pool.emplace_back([&, begin, end] {
        try {
          for (std::int64_t i = begin; i < end; ++i) body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

TrialExtremes oracle_extremes(const RealizedTriple& t, std::int64_t n, SpectrumKind kind) {
  if (kind == SpectrumKind::SymmetricSingular) {
    const auto sv = oracle::singular_values(t, n);
    return {sv.front(), sv.back()};
  }
  const double scale = std::abs(t.x) + 2.0 * std::sqrt(std::abs(t.y * t.z)) + 1.0;
  const auto eig = oracle::nonsymmetric_eigenvalues(t, n, 1e-14 * scale);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& l : eig) {
    lo = std::min(lo, std::abs(l));
    hi = std::max(hi, std::abs(l));
  }
  return {lo, hi};
}


}  // namespace

std::vector<TrialExtremes> simulate_trials(const SimulationConfig& cfg, std::int64_t n) {
  cfg.validate();
  if (std::find(cfg.n_grid.begin(), cfg.n_grid.end(), n) == cfg.n_grid.end()) {
    throw Error(ErrorKind::InvalidArgument, "n is not in the configured grid");
  }
  const SpectrumKind kind = cfg.dist.kind();
  std::vector<TrialExtremes> out(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t i) {
    const RealizedTriple t = trial_triple(cfg.dist, cfg.seed, i);
    if (cfg.backend == Backend::ClosedForm) {
      const auto e = closedform::finite_extremes(t, n, kind);
      out[static_cast<std::size_t>(i)] = {e.lo(), e.hi()};
    } else {
      out[static_cast<std::size_t>(i)] = oracle_extremes(t, n, kind);
    }
  });
  return out;
}

ExtremesSample simulate_extremes(const SimulationConfig& cfg, std::int64_t n) {
  const auto trials = simulate_trials(cfg, n);
  std::vector<double> lo, hi, kappa;
  lo.reserve(trials.size());
  hi.reserve(trials.size());
  kappa.reserve(trials.size());
  for (const auto& t : trials) {
    lo.push_back(t.lo);
    hi.push_back(t.hi);
    kappa.push_back(condition_number(SpectralExtremes(t.lo, t.hi, cfg.dist.kind(), FiniteN{n})).as_double());
  }
  return {EmpiricalCdf(std::move(lo)), EmpiricalCdf(std::move(hi)), EmpiricalCdf(std::move(kappa))};
}

double ks_distance(const EmpiricalCdf& emp, const std::function<double(double)>& cdf) {
  const auto& s = emp.sorted_samples();
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "KS distance needs finite samples");
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const double t = s[i];
    const double below = std::nextafter(t, -std::numeric_limits<double>::infinity());
    d = std::max(d, std::abs(static_cast<double>(j) / n - cdf(t)));
    d = std::max(d, std::abs(static_cast<double>(i) / n - cdf(below)));
    i = j;
  }
  return d;
}

double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  const auto& x = a.sorted_samples();
  const auto& y = b.sorted_samples();
  if (x.empty() || y.empty()) throw Error(ErrorKind::InvalidArgument, "KS distance needs finite samples");
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() || j < y.size()) {
    double t;
    if (j >= y.size() || (i < x.size() && x[i] <= y[j])) {
      t = x[i];
    } else {
      t = y[j];
    }
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double singularity_rate(const EmpiricalCdf& lo, double threshold) {
  if (!(threshold > 0.0)) throw Error(ErrorKind::InvalidArgument, "threshold must be positive");
  return lo(threshold);
}

double singularity_rate(const SimulationConfig& cfg, std::int64_t n, double threshold) {
  return singularity_rate(simulate_extremes(cfg, n).lo, threshold);
}

double default_threshold(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "matrix order must be >= 1");
  return 0.9 / std::sqrt(static_cast<double>(n));
}

double singularity_atom_estimate(const EmpiricalCdf& lo, double threshold) {
  const double full = singularity_rate(lo, threshold);
  const double half = singularity_rate(lo, 0.5 * threshold);
  return std::clamp(2.0 * half - full, 0.0, 1.0);
}

double singularity_atom_estimate(const SimulationConfig& cfg, std::int64_t n, double threshold) {
  return singularity_atom_estimate(simulate_extremes(cfg, n).lo, threshold);
}

std::vector<ConvergenceRow> convergence_table(const SimulationConfig& cfg) {
  cfg.validate();
  if (!std::is_sorted(cfg.n_grid.begin(), cfg.n_grid.end()) ||
      std::adjacent_find(cfg.n_grid.begin(), cfg.n_grid.end()) != cfg.n_grid.end()) {
    throw Error(ErrorKind::InvalidArgument, "n grid must be strictly increasing");
  }
  const SpectrumKind kind = cfg.dist.kind();
  const auto count = static_cast<std::size_t>(cfg.trials);
  std::vector<double> limit_lo(count), limit_hi(count);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t i) {
    const auto e = closedform::limit_extremes(trial_triple(cfg.dist, cfg.seed, i), kind);
    limit_lo[static_cast<std::size_t>(i)] = e.lo();
    limit_hi[static_cast<std::size_t>(i)] = e.hi();
  });
  const EmpiricalCdf limit_lo_cdf(limit_lo);
  const EmpiricalCdf limit_hi_cdf(limit_hi);

  std::vector<ConvergenceRow> rows;
  for (std::int64_t n : cfg.n_grid) {
    const auto trials = simulate_trials(cfg, n);
    std::vector<double> lo_gap(count), hi_gap(count), lo(count), hi(count);
    for (std::size_t i = 0; i < count; ++i) {
      lo[i] = trials[i].lo;
      hi[i] = trials[i].hi;
      lo_gap[i] = std::abs(trials[i].lo - limit_lo[i]);
      hi_gap[i] = std::abs(trials[i].hi - limit_hi[i]);
    }
    rows.push_back({n, EmpiricalCdf(std::move(lo_gap)).median(), EmpiricalCdf(std::move(hi_gap)).median(),
                    ks_distance(EmpiricalCdf(std::move(lo)), limit_lo_cdf),
                    ks_distance(EmpiricalCdf(std::move(hi)), limit_hi_cdf)});
  }
  return rows;
}

}  // namespace tridiag::montecarlo
