#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tridiag/closedform.hpp"
#include "tridiag/verify.hpp"

using namespace tridiag;
using namespace tridiag::verify;

namespace {

// Symmetric singular values with the cosine index shifted by one.
ClosedFormUnderTest off_by_one() {
  auto cf = ClosedFormUnderTest::reference();
  cf.singular_values = [](double x, double y, std::int64_t n) {
    std::vector<double> s;
    for (std::int64_t j = 1; j <= n; ++j) {
      s.push_back(std::abs(x + 2 * y * std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n + 2))));
    }
    std::sort(s.begin(), s.end());
    return s;
  };
  return cf;
}

}  // namespace

TEST(Mutation, ReferencePassesOracleCheck) {
  const auto r = check_oracle_equivalence();
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Mutation, OffByOneCosineFailsOracleCheck) {
  const auto r = check_oracle_equivalence(off_by_one());
  EXPECT_FALSE(r.passed) << r.detail;
}

TEST(Mutation, ReferencePassesSandwich) {
  const auto r = check_sandwich();
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(FormatLine, Layout) {
  CheckResult r{4, "rademacher", true, "ok", 0.0005, 0.001};
  const auto line = format_line(r);
  EXPECT_TRUE(line.starts_with("PASS [4] rademacher"));
  EXPECT_NE(line.find("ok"), std::string::npos);
  r.passed = false;
  EXPECT_TRUE(format_line(r).starts_with("FAIL [4]"));
}

TEST(QuickChecks, FastCriteriaPass) {
  for (const auto& r : {check_gaussian_sym_constant(), check_cauchy_constant(), check_rademacher_enumeration()}) {
    EXPECT_TRUE(r.passed) << format_line(r);
  }
}
