#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tridiag/closedform.hpp"
#include "tridiag/montecarlo.hpp"
#include "tridiag/oracle.hpp"

using namespace tridiag;
using namespace tridiag::oracle;

namespace {

RealizedTriple gaussian(std::uint64_t seed, std::int64_t i) {
  return montecarlo::trial_triple(EntryDistribution::standard(Law::StandardNormal, Assignment::NonsymmetricIID),
                                  seed, i);
}

DenseSymmetricMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  DenseSymmetricMatrix m(static_cast<std::int64_t>(rows.size()));
  std::int64_t i = 0;
  for (const auto& r : rows) {
    std::int64_t j = 0;
    for (double v : r) {
      if (j >= i) m.set(i, j, v);
      ++j;
    }
    ++i;
  }
  return m;
}

}  // namespace

TEST(Assemble, Examples) {
  const auto m = assemble({1, 2, 3}, 2);
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m(0, 1), 2.0);
  EXPECT_EQ(m(1, 0), 3.0);
  EXPECT_EQ(m(1, 1), 1.0);
  const auto z = assemble({0, 0, 0}, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(z(i, j), 0.0);
  }
  const auto b = assemble({1, 2, 3}, 5);
  EXPECT_EQ(b(0, 3), 0.0);
  EXPECT_EQ(b(4, 2), 0.0);
}

TEST(GramMatrix, Examples) {
  const auto id = gram_matrix(TridiagonalToeplitzMatrix{3, 1, 0, 0});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(id(i, j), i == j ? 1.0 : 0.0);
  }
  const auto shift = gram_matrix(TridiagonalToeplitzMatrix{2, 0, 1, 0});
  EXPECT_EQ(shift(0, 0), 0.0);
  EXPECT_EQ(shift(0, 1), 0.0);
  EXPECT_EQ(shift(1, 1), 1.0);
  const auto g = gram_matrix(assemble(gaussian(1, 0), 8));
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) EXPECT_EQ(g(i, j), g(j, i));
  }
}

TEST(Jacobi, Examples) {
  EXPECT_EQ(symmetric_eigenvalues_jacobi(from_rows({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}), 1e-15),
            (std::vector<double>{1, 2, 3}));
  const auto two = symmetric_eigenvalues_jacobi(from_rows({{2, 1}, {1, 2}}), 1e-15);
  EXPECT_NEAR(two[0], 1.0, 1e-15);
  EXPECT_NEAR(two[1], 3.0, 1e-15);
}

TEST(Jacobi, RejectsOversizedOrder) {
  EXPECT_THROW(symmetric_eigenvalues_jacobi(DenseSymmetricMatrix(kMaxDenseOrder + 1), 1e-12), Error);
}

TEST(Jacobi, GramMatchesClosedFormAtOrder32) {
  for (int i = 0; i < 20; ++i) {
    const auto t = gaussian(2, i);
    const auto closed = closedform::singular_values_symmetric(t.x, t.y, 32);
    const auto sv = singular_values(RealizedTriple::symmetric(t.x, t.y), 32);
    for (std::size_t k = 0; k < sv.size(); ++k) EXPECT_NEAR(sv[k], closed[k], 1e-8 * closed.back());
  }
}

TEST(Jacobi, SymmetricExampleAtOrder32) {
  const auto closed = closedform::singular_values_symmetric(0.5, -1.3, 32);
  const auto sv = singular_values(RealizedTriple::symmetric(0.5, -1.3), 32);
  for (std::size_t k = 0; k < sv.size(); ++k) EXPECT_NEAR(sv[k], closed[k], 1e-10 * closed.back());
}

TEST(Sturm, ConstantDiagonalsMatchCosines) {
  const double a = 0.7, b = -1.9, tol = 1e-13;
  const int n = 20;
  const auto eig = sturm_tridiagonal_eigenvalues(std::vector<double>(n, a), std::vector<double>(n - 1, b), tol);
  std::vector<double> expected;
  for (int j = 1; j <= n; ++j) expected.push_back(a + 2 * b * std::cos(std::numbers::pi * j / (n + 1)));
  std::sort(expected.begin(), expected.end());
  for (int j = 0; j < n; ++j) EXPECT_NEAR(eig[static_cast<std::size_t>(j)], expected[static_cast<std::size_t>(j)], tol);
}

TEST(Sturm, OrderOne) {
  const std::vector<double> d{4.25};
  EXPECT_EQ(sturm_tridiagonal_eigenvalues(d, {}, 1e-14).size(), 1u);
  EXPECT_NEAR(sturm_tridiagonal_eigenvalues(d, {}, 1e-14)[0], 4.25, 1e-14);
}

TEST(Sturm, RandomTridiagonalMatchesJacobi) {
  const int n = 64;
  const double tol = 1e-12;
  CounterRng rng(99, 0);
  std::vector<double> d(n), e(n - 1);
  for (auto& v : d) v = 4 * rng.uniform_open() - 2;
  for (auto& v : e) v = 4 * rng.uniform_open() - 2;
  DenseSymmetricMatrix m(n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, d[static_cast<std::size_t>(i)]);
    if (i + 1 < n) m.set(i, i + 1, e[static_cast<std::size_t>(i)]);
  }
  const auto s = sturm_tridiagonal_eigenvalues(d, e, tol);
  const auto j = symmetric_eigenvalues_jacobi(m, 1e-15);
  for (int k = 0; k < n; ++k) EXPECT_NEAR(s[static_cast<std::size_t>(k)], j[static_cast<std::size_t>(k)], 2 * tol);
}

TEST(SturmCount, CountsEigenvaluesBelow) {
  const std::vector<double> d{2, 2, 2}, e{1, 1};
  // Eigenvalues 2 - sqrt2, 2, 2 + sqrt2.
  EXPECT_EQ(sturm_count(d, e, 0.0), 0);
  EXPECT_EQ(sturm_count(d, e, 1.0), 1);
  EXPECT_EQ(sturm_count(d, e, 3.0), 2);
  EXPECT_EQ(sturm_count(d, e, 4.0), 3);
}

TEST(CharpolyResidual, Examples) {
  EXPECT_LE(charpoly_residual({1, 1, 1}, 3, 1.0), 1e-15);
  EXPECT_NEAR(charpoly_residual({1, 1, 1}, 3, 0.0), 1.0, 1e-15);
}

TEST(CharpolyResidual, ClosedFormEigenvaluesAreRoots) {
  const RealizedTriple fixed{0.3, -0.7, 1.1};
  for (const auto& l : closedform::eigenvalues_nonsymmetric(fixed, 8)) EXPECT_LE(charpoly_residual(fixed, 8, l), 1e-12);
  for (int i = 0; i < 20; ++i) {
    const auto t = gaussian(3, i);
    for (std::int64_t n : {50, 64}) {
      for (const auto& l : closedform::eigenvalues_nonsymmetric(t, n)) EXPECT_LE(charpoly_residual(t, n, l), 1e-8);
    }
  }
}

TEST(CharpolyResidual, SeparationWitnessAtMidpoints) {
  // |y|, |z| in [1, 2]: entries bounded away from zero so the eigenvalues
  // are separated by at least ~1/n^2 and the midpoints are not roots.
  CounterRng rng(17, 0);
  for (int i = 0; i < 20; ++i) {
    auto magnitude = [&] { return (1 + rng.uniform_open()) * (rng.uniform_open() < 0.5 ? -1 : 1); };
    const RealizedTriple t{4 * rng.uniform_open() - 2, magnitude(), magnitude()};
    for (std::int64_t n : {2, 8, 32, 64}) {
      const auto eig = closedform::eigenvalues_nonsymmetric(t, n);
      for (std::size_t k = 0; k + 1 < eig.size(); ++k) {
        EXPECT_LE(charpoly_residual(t, n, eig[k]), 1e-8);
        EXPECT_GE(charpoly_residual(t, n, 0.5 * (eig[k] + eig[k + 1])), 1e-3) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(NonsymmetricEigenvalues, MatchClosedForm) {
  for (int i = 0; i < 30; ++i) {
    const auto t = gaussian(4, i);
    const std::int64_t n = 3 + i;
    auto closed = closedform::eigenvalues_nonsymmetric(t, n);
    const double scale = std::abs(t.x) + 2 * std::sqrt(std::abs(t.y * t.z)) + 1;
    const auto oracle_eig = nonsymmetric_eigenvalues(t, n, 1e-14 * scale);
    auto by_parts = [](const std::complex<double>& a, const std::complex<double>& b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    };
    std::sort(closed.begin(), closed.end(), by_parts);
    ASSERT_EQ(closed.size(), oracle_eig.size());
    for (std::size_t k = 0; k < closed.size(); ++k) EXPECT_LE(std::abs(closed[k] - oracle_eig[k]), 1e-12 * scale);
  }
}

TEST(Sandwich, EigenvalueModuliInsideSingularValueRange) {
  for (int i = 0; i < 100; ++i) {
    const auto t = gaussian(5, i);
    for (std::int64_t n : {4, 16, 64}) {
      const auto sv = singular_values(t, n);
      for (const auto& l : closedform::eigenvalues_nonsymmetric(t, n)) {
        EXPECT_GE(std::abs(l), sv.front() - 1e-8);
        EXPECT_LE(std::abs(l), sv.back() + 1e-8);
      }
    }
  }
}
