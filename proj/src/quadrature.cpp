#include "tridiag/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "tridiag/core.hpp"

namespace tridiag::quadrature {

namespace {

// Kronrod 15-point abscissae; odd indices are the Gauss 7-point nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double roundoff;
  int depth;
  std::int64_t id;
  bool finite;
};

struct WorseFirst {
  bool operator()(const Panel& l, const Panel& r) const {
    if (l.error != r.error) return l.error < r.error;
    return l.id > r.id;
  }
};

Panel gauss_kronrod_15(const Integrand& f, double a, double b, int depth, std::int64_t id) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const double lo = f(center - dx);
    const double hi = f(center + dx);
    f1[static_cast<std::size_t>(j)] = lo;
    f2[static_cast<std::size_t>(j)] = hi;
    resk += kWgk[static_cast<std::size_t>(j)] * (lo + hi);
    resabs += kWgk[static_cast<std::size_t>(j)] * (std::abs(lo) + std::abs(hi));
    if (j % 2 == 1) resg += kWg[static_cast<std::size_t>(j / 2)] * (lo + hi);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double roundoff = 50.0 * kEps * resabs;
  err = std::max(err, roundoff);
  return Panel{a, b, value, err, roundoff, depth, id, std::isfinite(value) && std::isfinite(err)};
}

}  // namespace

const char* to_string(QuadratureStatus s) {
  switch (s) {
    case QuadratureStatus::Converged: return "Converged";
    case QuadratureStatus::DepthExceeded: return "DepthExceeded";
    case QuadratureStatus::EvaluationLimit: return "EvaluationLimit";
    case QuadratureStatus::RoundoffLimited: return "RoundoffLimited";
    case QuadratureStatus::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b, double tol, int max_depth) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must be positive");
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::InvalidArgument, "quadrature needs finite a <= b");
  }
  QuadratureResult result;
  if (a == b) return result;

  std::int64_t next_id = 0;
  std::priority_queue<Panel, std::vector<Panel>, WorseFirst> queue;
  std::vector<Panel> done;  // panels that cannot be refined further
  queue.push(gauss_kronrod_15(f, a, b, 0, next_id++));
  result.evaluations = 15;

  auto total_error = [&] {
    double e = 0.0;
    for (const Panel& p : done) e += p.error;
    // priority_queue has no iteration; copy of the container is cheap enough
    // relative to integrand evaluations.
    auto copy = queue;
    while (!copy.empty()) {
      e += copy.top().error;
      copy.pop();
    }
    return e;
  };

  double err_sum = queue.top().error;
  QuadratureStatus status = QuadratureStatus::Converged;
  while (!queue.empty() && err_sum > tol) {
    Panel worst = queue.top();
    if (!worst.finite) {
      status = QuadratureStatus::NonFinite;
      break;
    }
    if (worst.error <= worst.roundoff) {
      status = QuadratureStatus::RoundoffLimited;
      break;
    }
    if (worst.depth >= max_depth) {
      status = QuadratureStatus::DepthExceeded;
      break;
    }
    if (result.evaluations + 30 > kMaxEvaluations) {
      status = QuadratureStatus::EvaluationLimit;
      break;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel narrower than two ulps.
      queue.pop();
      done.push_back(worst);
      continue;
    }
    queue.pop();
    Panel left = gauss_kronrod_15(f, worst.a, mid, worst.depth + 1, next_id++);
    Panel right = gauss_kronrod_15(f, mid, worst.b, worst.depth + 1, next_id++);
    result.evaluations += 30;
    err_sum += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    // The running sum drifts; recompute when it claims convergence.
    if (err_sum <= tol) err_sum = total_error();
  }

  std::vector<Panel> panels = std::move(done);
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  double value = 0.0;
  double error = 0.0;
  bool finite = true;
  for (const Panel& p : panels) {
    value += p.value;
    error += p.error;
    finite = finite && p.finite;
  }
  result.value = value;
  result.abs_error_estimate = error;
  if (!finite) status = QuadratureStatus::NonFinite;
  result.converged = finite && error <= tol;
  result.status = result.converged ? QuadratureStatus::Converged
                  : status == QuadratureStatus::Converged ? QuadratureStatus::RoundoffLimited
                                                          : status;
  return result;
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a, double tol,
                                         const TailBound& tail_bound) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must be positive");
  if (!std::isfinite(a)) throw Error(ErrorKind::InvalidArgument, "lower limit must be finite");
  constexpr double kMinEps = 1e-12;
  double eps = kMinEps;
  double tail = 0.0;
  if (tail_bound) {
    eps = 0.5;
    auto upper = [&](double e) { return a + (1.0 - e) / e; };
    while (eps > kMinEps && !(tail_bound(upper(eps)) < tol / 10.0)) eps *= 0.5;
    eps = std::max(eps, kMinEps);
    tail = tail_bound(upper(eps));
  }
  auto mapped = [&](double u) {
    const double w = 1.0 - u;
    return f(a + u / w) / (w * w);
  };
  QuadratureResult r = integrate_finite(mapped, 0.0, 1.0 - eps, tol);
  if (tail_bound) {
    r.abs_error_estimate += tail;
    r.converged = r.converged && r.abs_error_estimate <= tol;
  }
  return r;
}

QuadratureResult integrate_with_integrable_singularity(const Integrand& f, double a, double b,
                                                       double singular_point, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must be positive");
  if (!(a <= b)) throw Error(ErrorKind::InvalidArgument, "quadrature needs a <= b");
  if (singular_point != a && singular_point != b) {
    throw Error(ErrorKind::InvalidArgument, "singular point must be an endpoint");
  }
  QuadratureResult total;
  if (a == b) return total;

  constexpr int kMaxPanels = 400;
  constexpr int kMinPanels = 4;
  constexpr int kEmptyPanels = 64;
  const double length = b - a;
  const double direction = singular_point == a ? 1.0 : -1.0;
  const double panel_tol = tol / 100.0;
  double previous = std::numeric_limits<double>::quiet_NaN();
  double previous_ratio = std::numeric_limits<double>::quiet_NaN();
  double ratio_before = std::numeric_limits<double>::quiet_NaN();
  // Panels narrower than this no longer have distinct Kronrod nodes next to s.
  const double resolution = 64.0 * (std::nextafter(std::abs(singular_point), HUGE_VAL) - std::abs(singular_point));
  double width = length;
  bool settled = false;
  QuadratureStatus status = QuadratureStatus::Converged;

  for (int k = 0; k < kMaxPanels; ++k) {
    const double outer = singular_point + direction * width;
    const double inner = singular_point + direction * 0.5 * width;
    const double lo = std::min(inner, outer);
    const double hi = std::max(inner, outer);
    width *= 0.5;
    if (!(hi - lo > resolution)) {
      // Floating point cannot get closer to s.  Extrapolate the remaining
      // tail geometrically; its uncertainty is the disagreement between the
      // last two decay ratios.
      const double ratio = previous_ratio;
      if (ratio > 0.0 && ratio < 1.0 && k >= 2) {
        const double tail = previous * ratio / (1.0 - ratio);
        total.value += tail;
        const bool stable = ratio_before > 0.0 && ratio_before < 1.0;
        total.abs_error_estimate += stable ? std::abs(tail - previous * ratio_before / (1.0 - ratio_before)) +
                                                 std::abs(tail) * 1e-12
                                           : std::abs(tail);
      } else if (previous != 0.0) {
        total.abs_error_estimate += std::abs(previous);
      }
      settled = true;
      break;
    }
    QuadratureResult p = integrate_finite(f, lo, hi, panel_tol);
    total.value += p.value;
    total.abs_error_estimate += p.abs_error_estimate;
    total.evaluations += p.evaluations;
    if (!p.converged && status == QuadratureStatus::Converged) status = p.status;
    // Decay toward s must have set in; a run of empty panels far from s
    // does not count.  The geometric tail between this panel and s is
    // extrapolated and charged in full to the error estimate.
    if (k + 1 >= kMinPanels && previous != 0.0 && std::abs(p.value) <= std::abs(previous)) {
      const double ratio = p.value / previous;
      const bool geometric = ratio > 0.0 && ratio < 1.0;
      const double tail = geometric ? p.value * ratio / (1.0 - ratio) : 0.0;
      const double charge = geometric ? std::abs(tail) : std::abs(p.value);
      if (std::abs(p.value) + charge < tol / 10.0) {
        total.value += tail;
        total.abs_error_estimate += charge;
        settled = true;
        break;
      }
    }
    // Nothing at all within 2^-64 of the full length: numerically zero.
    if (k + 1 >= kEmptyPanels && total.value == 0.0 && total.abs_error_estimate == 0.0) {
      settled = true;
      break;
    }
    ratio_before = previous_ratio;
    previous_ratio = previous != 0.0 ? p.value / previous : std::numeric_limits<double>::quiet_NaN();
    previous = p.value;
  }
  if (!settled && status == QuadratureStatus::Converged) status = QuadratureStatus::DepthExceeded;
  total.converged = settled && status == QuadratureStatus::Converged && total.abs_error_estimate <= tol;
  total.status = total.converged ? QuadratureStatus::Converged
                 : status == QuadratureStatus::Converged ? QuadratureStatus::RoundoffLimited
                                                         : status;
  return total;
}

}  // namespace tridiag::quadrature
