#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tridiag/core.hpp"

// The acceptance checks, shared by the acceptance test binary and the
// `verify` command.
namespace tridiag::verify {

struct CheckResult {
  int id = 0;           // acceptance criterion number; 0 for extra checks
  std::string name;
  bool passed = false;
  std::string detail;   // measured values against their tolerances
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

// The closed-form spectra under test.  Replaceable so that a mutated
// formula can be shown to fail the oracle comparison.
struct ClosedFormUnderTest {
  std::function<std::vector<double>(double x, double y, std::int64_t n)> singular_values;
  std::function<std::vector<std::complex<double>>(const RealizedTriple& t, std::int64_t n)> eigenvalues;

  static ClosedFormUnderTest reference();
};

CheckResult check_gaussian_sym_constant();                  // 1
CheckResult check_cauchy_constant();                        // 2
CheckResult check_gaussian_nonsym_constant(int threads);    // 3
CheckResult check_rademacher_enumeration();                 // 4
CheckResult check_oracle_equivalence(const ClosedFormUnderTest& cf = ClosedFormUnderTest::reference());  // 5
CheckResult check_sandwich(const ClosedFormUnderTest& cf = ClosedFormUnderTest::reference());           // 6
CheckResult check_limit_convergence(int threads);           // 7
CheckResult check_theorem_marginals(int threads);           // 8
CheckResult check_conditional_laws(int threads);            // 9
CheckResult check_determinism();                            // 10

// Kernel density of Y Z from 10^7 normal pairs against the t^2 form of the
// product-normal integral (the implemented one) and the |t| variant.
CheckResult check_product_density_adjudication(int threads);

// Criteria 1-10 in order.
std::vector<CheckResult> run_acceptance(int threads);
// Quick runs the acceptance criteria; full adds the density adjudication.
std::vector<CheckResult> run(bool full, int threads);

// "PASS [3] name (1.23 s / 30 s): detail"
std::string format_line(const CheckResult& r);

}  // namespace tridiag::verify
