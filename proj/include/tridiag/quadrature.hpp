#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace tridiag::quadrature {

using Integrand = std::function<double(double)>;

enum class QuadratureStatus {
  Converged,
  DepthExceeded,    // the worst panel sits at the depth cap
  EvaluationLimit,  // evaluation budget spent
  RoundoffLimited,  // remaining error is rounding noise above tol
  NonFinite,        // integrand returned NaN or inf
};

const char* to_string(QuadratureStatus s);

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
  QuadratureStatus status = QuadratureStatus::Converged;
};

inline constexpr int kMaxDepth = 60;
inline constexpr std::int64_t kMaxEvaluations = 2'000'000;

// Adaptive Gauss-Kronrod (7/15) on [a, b].  The panel with the largest error
// estimate is bisected until the summed estimate is <= tol.  Never samples
// the endpoints.
QuadratureResult integrate_finite(const Integrand& f, double a, double b, double tol,
                                  int max_depth = kMaxDepth);

// Upper bound on the integral of |f| over [V, inf), used to pick where the
// mapped interval is truncated.
using TailBound = std::function<double(double)>;

// Integral over [a, inf) through v = a + u / (1 - u), u in [0, 1 - eps].
// Without a tail bound eps = 1e-12; with one, eps is the largest power of two
// (>= 1e-12) whose truncated tail is below tol / 10.
QuadratureResult integrate_semi_infinite(const Integrand& f, double a, double tol,
                                         const TailBound& tail_bound = {});

// Integral over [a, b] of f with an integrable singularity at a or b.
// Panels [s + L/2^(k+1), s + L/2^k] shrink dyadically toward the singular
// point s until a panel contributes less than tol / 10; the geometric tail
// beyond the last panel is extrapolated and counted in the error estimate.
QuadratureResult integrate_with_integrable_singularity(const Integrand& f, double a, double b,
                                                       double singular_point, double tol);

}  // namespace tridiag::quadrature
