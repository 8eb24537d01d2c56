#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tridiag/closedform.hpp"
#include "tridiag/core.hpp"

// Limiting laws of the extreme spectral moduli for the standard entry laws:
// CDFs of the maximum, the atom at zero of the minimum (the singularity
// constant), the density of the minimum given it is positive, and the CDF of
// the condition number given it is finite.
namespace tridiag::analytic {

enum class LimitLaw { RademacherSym, CauchySym, GaussianSym, RademacherNonsym, GaussianNonsym };

inline constexpr LimitLaw kAllLaws[] = {LimitLaw::RademacherSym, LimitLaw::CauchySym,
                                        LimitLaw::GaussianSym, LimitLaw::RademacherNonsym,
                                        LimitLaw::GaussianNonsym};

std::string to_string(LimitLaw law);
bool is_discrete(LimitLaw law);
EntryDistribution entry_distribution(LimitLaw law);
// The named law matching a distribution, if there is one.
std::optional<LimitLaw> limit_law_for(const EntryDistribution& dist);

struct Estimate {
  double value = 0.0;
  double abs_error = 0.0;
};

double std_normal_cdf(double t);
double std_normal_pdf(double t);

// P(V <= y), V the limiting maximum.
Estimate vmax_cdf(LimitLaw law, double y);

struct ConstantReport {
  LimitLaw law;
  std::string method;  // "closed-form", "quadrature" or "enumeration"
  double value;
  double abs_error;
};

// P(W = 0), W the limiting minimum.  For GaussianSym both the closed form
// (pi + atan(24/7)) / (2 pi) and the quadrature are computed; disagreement
// beyond 1e-8 throws InternalInconsistency.
ConstantReport singularity_constant(LimitLaw law);
double gaussian_sym_constant_closed_form();
Estimate gaussian_sym_constant_quadrature();
Estimate cauchy_sym_constant_quadrature();
// 2 int_0^inf Phi(2 sqrt t) f_YZ(t) dt - 1/2, with f_YZ by quadrature.
Estimate gaussian_nonsym_constant_quadrature();

// Density of W given W > 0.  Zero for w <= 0; Unsupported for the
// Rademacher laws, whose conditional minimum is discrete.
Estimate wmin_conditional_density(LimitLaw law, double w);

struct Atom {
  double value;
  double probability;
};
// Law of W given W > 0 for the Rademacher laws, by sign enumeration.
// Unsupported for RademacherSym (W = 0 almost surely) and continuous laws.
std::vector<Atom> wmin_conditional_atoms(LimitLaw law);

// Density of the product of two independent standard normals,
//   f(t) = (1/pi) int_0^inf (1/s) exp(-(s^2 + t^2/s^2)/2) ds,
// by quadrature.  The integrand is invariant under s -> |t|/s, so the
// integral is twice the one over [sqrt|t|, inf).  DomainError at t = 0,
// where the integral diverges.
double product_normal_density(double t);
// The same density as K0(|t|)/pi.
double product_normal_density_bessel(double t);
// P(0 < YZ <= T) = int_0^T f(t) dt.
Estimate product_normal_half_cdf(double upper);

// P(V/W <= z | W > 0).  Unsupported for RademacherSym.
Estimate kappa_cdf(LimitLaw law, double z);

// Monte Carlo of the limit law's joint CDF P(W <= x, V <= y) for any entry
// distribution, counting the indicator events of the limit-theorem
// right-hand side draw by draw.  Reproducible from (seed, samples).
double theorem_joint_cdf(const EntryDistribution& dist, double x, double y, std::int64_t samples,
                         std::uint64_t seed);
// The indicator for one realization.
bool theorem_indicator(const RealizedTriple& t, bool symmetric, double x, double y);

struct SignPattern {
  RealizedTriple triple;
  double probability;
  closedform::BoundaryPair boundary;
  SpectralExtremes limit;
};
// All 4 (symmetric) or 8 (non-symmetric) sign patterns with equal weight.
std::vector<SignPattern> rademacher_patterns(bool symmetric);

}  // namespace tridiag::analytic
