#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tridiag/core.hpp"
#include "tridiag/rng.hpp"

namespace tridiag::montecarlo {

// Sorted sample store.  Infinite observations (kappa = +inf) are counted,
// not stored.
class EmpiricalCdf {
 public:
  EmpiricalCdf() = default;
  // Sorts; +inf entries go to the infinite count.  NaN is rejected.
  explicit EmpiricalCdf(std::vector<double> samples);

  const std::vector<double>& sorted_samples() const noexcept { return sorted_; }
  std::int64_t infinite_count() const noexcept { return infinite_; }
  std::int64_t finite_count() const noexcept { return static_cast<std::int64_t>(sorted_.size()); }
  std::int64_t total() const noexcept { return finite_count() + infinite_; }
  double infinite_fraction() const noexcept;

  // #{samples <= t} / total.
  double operator()(double t) const noexcept;
  // #{samples < t} / total.
  double left_limit(double t) const noexcept;
  // Smallest sample s with F(s) >= p (inverse ECDF); +inf when p falls in
  // the infinite mass.
  double quantile(double p) const;
  double median() const { return quantile(0.5); }

  friend bool operator==(const EmpiricalCdf&, const EmpiricalCdf&) = default;

 private:
  std::vector<double> sorted_;
  std::int64_t infinite_ = 0;
};

enum class Backend { ClosedForm, Oracle };

inline constexpr std::int64_t kMaxTrials = 10'000'000;

struct SimulationConfig {
  EntryDistribution dist;
  std::vector<std::int64_t> n_grid;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  Backend backend = Backend::ClosedForm;
  int threads = 1;

  // Throws InvalidArgument for empty or non-positive grids, trial counts
  // outside [1, 1e7], or Oracle runs with n > 512.
  void validate() const;
};

// Runs body(i) for i in [0, count) over `threads` contiguous chunks; the
// first exception thrown by any worker is rethrown in the caller.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body);

// One draw of (X, Y, Z).  Standard normals come from Box-Muller on the
// generator's uniforms, Cauchy from tan(pi (U - 1/2)).
RealizedTriple sample_triple(const EntryDistribution& dist, CounterRng& rng);

// The triple used by trial `trial` of a run seeded with `seed`.
RealizedTriple trial_triple(const EntryDistribution& dist, std::uint64_t seed, std::int64_t trial);

struct ExtremesSample {
  EmpiricalCdf lo;
  EmpiricalCdf hi;
  EmpiricalCdf kappa;
};

// Per-trial extremes at order n (closed form or assembled-matrix oracle).
// Output is independent of cfg.threads.
ExtremesSample simulate_extremes(const SimulationConfig& cfg, std::int64_t n);

// Raw per-trial (lo, hi) pairs in trial order.
struct TrialExtremes {
  double lo;
  double hi;
};
std::vector<TrialExtremes> simulate_trials(const SimulationConfig& cfg, std::int64_t n);

// sup_t |F_emp - F| evaluated on both sides of each order statistic.  The
// infinite mass is excluded: the finite samples are renormalized.
double ks_distance(const EmpiricalCdf& emp, const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov statistic on the finite parts.
double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b);

// Fraction of trials with finite-n lo <= threshold.
double singularity_rate(const SimulationConfig& cfg, std::int64_t n, double threshold);
double singularity_rate(const EmpiricalCdf& lo, double threshold);

// Default threshold schedule c / sqrt(n) with c = 0.9.
double default_threshold(std::int64_t n);

// Estimate of the limiting atom P(lo = 0).  The raw rate at tau counts the
// atom plus the mass of (0, tau], which grows linearly in tau; the
// extrapolation 2 rate(tau/2) - rate(tau) removes the linear part.
double singularity_atom_estimate(const EmpiricalCdf& lo, double threshold);
double singularity_atom_estimate(const SimulationConfig& cfg, std::int64_t n, double threshold);

struct ConvergenceRow {
  std::int64_t n;
  double median_lo_gap;
  double median_hi_gap;
  double ks_lo;  // finite-n lo vs limit lo of the same triples
  double ks_hi;
};

std::vector<ConvergenceRow> convergence_table(const SimulationConfig& cfg);

}  // namespace tridiag::montecarlo
