#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tridiag/analytic.hpp"
#include "tridiag/closedform.hpp"
#include "tridiag/montecarlo.hpp"

using namespace tridiag;
using namespace tridiag::montecarlo;

namespace {

EntryDistribution dist(Law law, Assignment a) { return EntryDistribution::standard(law, a); }

SimulationConfig config(EntryDistribution d, std::vector<std::int64_t> n, std::int64_t trials, std::uint64_t seed,
                        int threads = 1) {
  SimulationConfig c;
  c.dist = d;
  c.n_grid = std::move(n);
  c.trials = trials;
  c.seed = seed;
  c.threads = threads;
  return c;
}

}  // namespace

TEST(EmpiricalCdf, Invariants) {
  const EmpiricalCdf e({3.0, 1.0, std::numeric_limits<double>::infinity(), 2.0, 2.0});
  EXPECT_EQ(e.total(), 5);
  EXPECT_EQ(e.infinite_count(), 1);
  EXPECT_EQ(e.sorted_samples(), (std::vector<double>{1, 2, 2, 3}));
  EXPECT_EQ(e(0.5), 0.0);
  EXPECT_EQ(e(2.0), 0.6);
  EXPECT_EQ(e.left_limit(2.0), 0.2);
  EXPECT_EQ(e(100.0), 0.8);
  EXPECT_EQ(e.infinite_fraction(), 0.2);
  EXPECT_EQ(e.quantile(0.5), 2.0);
  EXPECT_EQ(e.quantile(0.8), 3.0);
  EXPECT_TRUE(std::isinf(e.quantile(0.9)));
  EXPECT_THROW(EmpiricalCdf({std::nan("")}), Error);
}

TEST(SampleTriple, PointMass) {
  const auto d = EntryDistribution::point_mass({2, 2, 2}, Assignment::SymmetricIID);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(trial_triple(d, 5, i), (RealizedTriple{2, 2, 2}));
}

TEST(SampleTriple, SymmetricSetsZToY) {
  for (Law law : {Law::Rademacher, Law::StandardNormal, Law::StandardCauchy}) {
    for (int i = 0; i < 100; ++i) {
      const auto t = trial_triple(dist(law, Assignment::SymmetricIID), 6, i);
      EXPECT_EQ(t.z, t.y);
    }
  }
}

TEST(SampleTriple, RademacherMean) {
  constexpr int kDraws = 100000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const auto t = trial_triple(dist(Law::Rademacher, Assignment::NonsymmetricIID), 7, i);
    ASSERT_TRUE(std::abs(t.x) == 1.0 && std::abs(t.y) == 1.0 && std::abs(t.z) == 1.0);
    sum += t.x;
  }
  EXPECT_LE(std::abs(sum / kDraws), 3 / std::sqrt(double{kDraws}));
}

TEST(SampleTriple, NormalVariance) {
  constexpr int kDraws = 100000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = trial_triple(dist(Law::StandardNormal, Assignment::NonsymmetricIID), 8, i).x;
    s += x;
    s2 += x * x;
  }
  const double mean = s / kDraws;
  EXPECT_NEAR(s2 / kDraws - mean * mean, 1.0, 0.05);
}

TEST(SampleTriple, CauchyQuartiles) {
  std::vector<double> v;
  for (int i = 0; i < 100000; ++i) v.push_back(trial_triple(dist(Law::StandardCauchy, Assignment::NonsymmetricIID), 9, i).z);
  const EmpiricalCdf e(std::move(v));
  EXPECT_NEAR(e.quantile(0.25), -1.0, 0.03);
  EXPECT_NEAR(e.median(), 0.0, 0.02);
  EXPECT_NEAR(e.quantile(0.75), 1.0, 0.03);
}

TEST(SimulationConfig, Validation) {
  auto c = config(dist(Law::StandardNormal, Assignment::SymmetricIID), {10}, 100, 1);
  EXPECT_NO_THROW(c.validate());
  c.trials = 0;
  EXPECT_THROW(c.validate(), Error);
  c.trials = kMaxTrials + 1;
  EXPECT_THROW(c.validate(), Error);
  c.trials = 10;
  c.n_grid = {};
  EXPECT_THROW(c.validate(), Error);
  c.n_grid = {0};
  EXPECT_THROW(c.validate(), Error);
  c.n_grid = {513};
  c.backend = Backend::Oracle;
  EXPECT_THROW(c.validate(), Error);
}

TEST(SimulateExtremes, PointMassIsStep) {
  const auto c = config(EntryDistribution::point_mass({1, 1, 1}, Assignment::SymmetricIID), {3}, 25, 0);
  const auto s = simulate_extremes(c, 3);
  const double lo = std::sqrt(2.0) - 1;
  EXPECT_NEAR(s.lo.sorted_samples().front(), lo, 1e-15);
  EXPECT_EQ(s.lo.sorted_samples().front(), s.lo.sorted_samples().back());
  EXPECT_NEAR(s.hi.median(), std::sqrt(2.0) + 1, 1e-15);
}

TEST(SimulateExtremes, RademacherSymmetricSingular) {
  const auto c = config(dist(Law::Rademacher, Assignment::SymmetricIID), {1001}, 10000, 3, 2);
  const auto s = simulate_extremes(c, 1001);
  EXPECT_GE(s.lo(0.05), 0.99);
  EXPECT_LE(s.hi.sorted_samples().back(), 3.0);
  // Finite-n lo equals the enumerated minimum of |x + 2 cos(pi j / (n+1))|.
  double lo_pos = 1e300;
  for (std::int64_t j = 1; j <= 1001; ++j) lo_pos = std::min(lo_pos, std::abs(1 + 2 * closedform::grid_cosine(j, 1001)));
  for (double v : s.lo.sorted_samples()) EXPECT_EQ(v, lo_pos);
}

TEST(SimulateExtremes, DeterministicAcrossThreads) {
  for (auto d : {dist(Law::StandardNormal, Assignment::NonsymmetricIID), dist(Law::StandardCauchy, Assignment::SymmetricIID)}) {
    const auto one = simulate_extremes(config(d, {50}, 3000, 11, 1), 50);
    const auto four = simulate_extremes(config(d, {50}, 3000, 11, 4), 50);
    EXPECT_TRUE(one.lo == four.lo);
    EXPECT_TRUE(one.hi == four.hi);
    EXPECT_TRUE(one.kappa == four.kappa);
  }
}

TEST(SimulateExtremes, BackendsAgree) {
  for (auto a : {Assignment::SymmetricIID, Assignment::NonsymmetricIID}) {
    for (std::int64_t n : {2, 7, 32}) {
      auto c = config(dist(Law::StandardNormal, a), {n}, 200, 13);
      const auto closed = simulate_trials(c, n);
      c.backend = Backend::Oracle;
      const auto oracle = simulate_trials(c, n);
      for (std::size_t i = 0; i < closed.size(); ++i) {
        const double scale = std::max(1.0, closed[i].hi);
        EXPECT_NEAR(closed[i].lo, oracle[i].lo, 1e-8 * scale);
        EXPECT_NEAR(closed[i].hi, oracle[i].hi, 1e-8 * scale);
      }
    }
  }
}

TEST(SimulateExtremes, GaussianHiMatchesVmax) {
  const auto c = config(dist(Law::StandardNormal, Assignment::SymmetricIID), {2000}, 20000, 15, 4);
  const auto s = simulate_extremes(c, 2000);
  const double ks = ks_distance(s.hi, [](double y) { return analytic::vmax_cdf(analytic::LimitLaw::GaussianSym, y).value; });
  EXPECT_LE(ks, 0.02);
}

TEST(KsDistance, QuantileConstruction) {
  constexpr int kN = 1000;
  std::vector<double> v;
  for (int i = 1; i <= kN; ++i) v.push_back(-std::log(1 - (i - 0.5) / kN));
  const double d = ks_distance(EmpiricalCdf(v), [](double t) { return t <= 0 ? 0.0 : 1 - std::exp(-t); });
  EXPECT_LE(d, 1.0 / (2 * kN) + 1e-12);
}

TEST(KsDistance, NormalSample) {
  std::vector<double> v;
  for (int i = 0; i < 10000; ++i) v.push_back(trial_triple(dist(Law::StandardNormal, Assignment::NonsymmetricIID), 17, i).x);
  EXPECT_LE(ks_distance(EmpiricalCdf(v), analytic::std_normal_cdf), 1.95 / 100.0);
}

TEST(KsDistance, StepMismatch) {
  EXPECT_NEAR(ks_distance(EmpiricalCdf(std::vector<double>(10, 0.0)), analytic::std_normal_cdf), 0.5, 1e-15);
}

TEST(KsDistance, InfiniteMassExcluded) {
  std::vector<double> v{0.5, std::numeric_limits<double>::infinity()};
  EXPECT_NEAR(ks_distance(EmpiricalCdf(v), [](double t) { return t < 0.5 ? 0.0 : 1.0; }), 0.0, 1e-15);
}

TEST(KsDistance, TwoSample) {
  EXPECT_EQ(ks_distance(EmpiricalCdf({1, 2, 3}), EmpiricalCdf({1, 2, 3})), 0.0);
  EXPECT_EQ(ks_distance(EmpiricalCdf({1, 2}), EmpiricalCdf({3, 4})), 1.0);
  EXPECT_NEAR(ks_distance(EmpiricalCdf({1, 2, 3, 4}), EmpiricalCdf({2, 4})), 0.25, 1e-15);
}

TEST(SingularityRate, RademacherNonsymmetric) {
  const auto c = config(dist(Law::Rademacher, Assignment::NonsymmetricIID), {1001}, 10000, 19, 2);
  EXPECT_NEAR(singularity_rate(c, 1001, 0.05), 0.5, 0.02);
  EXPECT_NEAR(simulate_extremes(c, 1001).kappa.infinite_fraction(), 0.5, 0.02);
}

TEST(SingularityRate, PointMassOutside) {
  const auto c = config(EntryDistribution::point_mass({5, 1, 1}, Assignment::SymmetricIID), {40}, 10, 0);
  EXPECT_EQ(singularity_rate(c, 40, 1.0), 0.0);
  EXPECT_THROW(singularity_rate(c, 40, 0.0), Error);
}

TEST(SingularityRate, GaussianNonsymmetricAtom) {
  const auto c = config(dist(Law::StandardNormal, Assignment::NonsymmetricIID), {2001}, 100000, 21, 4);
  const auto lo = simulate_extremes(c, 2001).lo;
  const double tau = default_threshold(2001);
  EXPECT_NEAR(tau, 0.02, 1e-3);
  const double c1 = analytic::singularity_constant(analytic::LimitLaw::GaussianNonsym).value;
  EXPECT_NEAR(singularity_atom_estimate(lo, tau), c1, 0.01);
  // The raw rate also counts P(0 < W <= tau), about 0.012 here.
  EXPECT_GT(singularity_rate(lo, tau), singularity_atom_estimate(lo, tau));
}

TEST(ConvergenceTable, PointMassExactGap) {
  auto c = config(EntryDistribution::point_mass({1, 1, 1}, Assignment::SymmetricIID), {3, 10, 100}, 5, 0);
  for (const auto& row : convergence_table(c)) {
    const double n = static_cast<double>(row.n);
    EXPECT_NEAR(row.median_hi_gap, 2 * (1 - std::cos(std::numbers::pi / (n + 1))), 1e-13);
  }
}

TEST(ConvergenceTable, HiGapShrinksAndLoGapBounded) {
  auto c = config(dist(Law::StandardNormal, Assignment::SymmetricIID), {100, 1000}, 5000, 23, 2);
  const auto rows = convergence_table(c);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LE(rows[1].median_hi_gap, rows[0].median_hi_gap);
  // E(|X| + 2|Y|) = 3 sqrt(2/pi).
  EXPECT_LE(rows[1].median_lo_gap, 10 * 3 * std::sqrt(2 / std::numbers::pi) / 1000);
  EXPECT_LE(rows[1].ks_hi, rows[0].ks_hi + 1e-3);
}

TEST(ConvergenceTable, RejectsUnsortedGrid) {
  auto c = config(dist(Law::StandardNormal, Assignment::SymmetricIID), {100, 10}, 10, 1);
  EXPECT_THROW(convergence_table(c), Error);
}
